//! Weight gradings of cluster variables and the linear identities they obey.
//!
//! A grading is a tuple of weights, one per flag: `(λ, μ, ν)` on `Conf₃` and
//! `(λ, μ, ν, κ)` on `Conf₄`. Sums against the exchange matrix are taken on
//! the doubled scale so that half-arrows stay integral.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quiver::{build_conf3_quiver, build_conf4_quiver, Seed, VertexId, VertexKind};
use crate::root_system::{CartanData, Weight};
use crate::word::{DoubleWord, ReducedWord};

/// A tuple of weights, one per flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grading(pub Vec<Weight>);

impl Grading {
    pub fn triple(lambda: Weight, mu: Weight, nu: Weight) -> Self {
        Grading(vec![lambda, mu, nu])
    }

    pub fn quad(lambda: Weight, mu: Weight, nu: Weight, kappa: Weight) -> Self {
        Grading(vec![lambda, mu, nu, kappa])
    }

    pub fn zero(arity: usize, rank: usize) -> Self {
        Grading(vec![Weight::zero(rank); arity])
    }

    pub fn lambda(&self) -> &Weight {
        &self.0[0]
    }

    pub fn mu(&self) -> &Weight {
        &self.0[1]
    }

    pub fn nu(&self) -> &Weight {
        &self.0[2]
    }

    pub fn kappa(&self) -> Option<&Weight> {
        self.0.get(3)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Weight::is_zero)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(Weight::is_dominant)
    }

    pub fn scale(&self, c: i64) -> Grading {
        Grading(self.0.iter().map(|w| c * w).collect())
    }

    /// All coefficients in order, for error reports.
    pub fn flatten(&self) -> Vec<i64> {
        self.0.iter().flat_map(|w| w.coeffs().to_vec()).collect()
    }
}

impl Add for &Grading {
    type Output = Grading;
    fn add(self, rhs: &Grading) -> Grading {
        Grading(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Grading {
    type Output = Grading;
    fn sub(self, rhs: &Grading) -> Grading {
        Grading(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Grading {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let names = ["lambda", "mu", "nu", "kappa"];
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (name, w) in names.iter().zip(&self.0) {
            map.serialize_entry(name, w.coeffs())?;
        }
        map.end()
    }
}

/// Gradings keyed by vertex.
pub type Gradings = BTreeMap<VertexId, Grading>;

/// Splits `x = -w₀λ - μ` into dominant `λ` and `μ`.
pub fn split_weight(cartan: &CartanData, x: &Weight) -> (Weight, Weight) {
    let (pos, neg) = x.pos_neg_parts();
    (cartan.dual_weight(&pos), -neg)
}

/// Grading `(λ, μ, ω_i)` of `Δ_{uω_i, ω_i}`.
pub fn minor_grading(cartan: &CartanData, u: &[usize], i: usize) -> Grading {
    let omega = cartan.fundamental_weight(i);
    let x = cartan.apply_word(u, &omega);
    let (lambda, mu) = split_weight(cartan, &x);
    Grading::triple(lambda, mu, omega)
}

/// Grading `(ω_k*, ω_k, 0)` of the edge vertex `k°`.
pub fn circle_grading(cartan: &CartanData, k: usize) -> Grading {
    let omega = cartan.fundamental_weight(k);
    Grading::triple(cartan.dual_weight(&omega), omega, Weight::zero(cartan.rank()))
}

/// Gradings of every vertex of the `Conf₃` seed of `word`.
pub fn assign_conf3_gradings(word: &ReducedWord) -> Result<(Seed, Gradings)> {
    let seed = build_conf3_quiver(word)?;
    let gradings = gradings_for_reduced_seed(&seed, word)?;
    Ok((seed, gradings))
}

/// Gradings for a `B⁻` or `Conf₃` seed built from `word`.
pub fn gradings_for_reduced_seed(seed: &Seed, word: &ReducedWord) -> Result<Gradings> {
    let cartan = word.cartan();
    seed.vertices()
        .iter()
        .map(|v| {
            let g = match v.id {
                VertexId::Row { row, .. } => minor_grading(cartan, word.prefix(v.position)?, row),
                VertexId::Circle(k) => circle_grading(cartan, k),
                other => return Err(Error::UnknownVertex(other.to_string())),
            };
            Ok((v.id, g))
        })
        .collect()
}

/// One failing instance of an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Word position or vertex id.
    pub at: String,
    pub expected: Grading,
    pub actual: Grading,
}

/// Outcome of checking an identity at many places.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, at: String, expected: Grading, actual: Grading) {
        self.checked += 1;
        if expected != actual {
            self.violations.push(Violation { at, expected, actual });
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

/// Checks, at every word position `l` with letter `j`,
/// `Σ_{i≠j} c_{ij} g_i + g_{j₋} + g_{j₊} - [l = t_k] g_{k°} = (0, 0, α_j)`.
pub fn check_recursive_identity(word: &ReducedWord) -> Report {
    let cartan = word.cartan();
    let rank = cartan.rank();
    let t = word.crossing_indices();
    let mut report = Report::default();
    for l in 1..=word.len() {
        let j = word.letter(l);
        let before = &word.letters()[..l - 1];
        let after = &word.letters()[..l];
        let mut sum = &minor_grading(cartan, before, j) + &minor_grading(cartan, after, j);
        for i in cartan.nodes().filter(|&i| i != j) {
            let c = cartan.c(i, j);
            if c != 0 {
                sum = &sum + &minor_grading(cartan, before, i).scale(c);
            }
        }
        if let Some(k) = t.iter().position(|&tk| tk == l) {
            sum = &sum - &circle_grading(cartan, k + 1);
        }
        let expected = Grading::triple(Weight::zero(rank), Weight::zero(rank), cartan.alpha_as_weight(j));
        report.record(format!("l={l}"), expected, sum);
    }
    report
}

/// `Σ_j b2_{ij} g_j`, twice the face sum at vertex `i`.
pub fn doubled_face_sum(seed: &Seed, gradings: &Gradings, i: usize) -> Result<Grading> {
    let arity = gradings.values().next().map_or(3, Grading::arity);
    let rank = seed.cartan().map_or(0, |c| c.rank());
    let mut sum = Grading::zero(arity, rank);
    for (j, v) in seed.vertices().iter().enumerate() {
        let b = seed.b2_entry(i, j);
        if b != 0 {
            let g = gradings
                .get(&v.id)
                .ok_or_else(|| Error::UnknownVertex(v.id.to_string()))?;
            sum = &sum + &g.scale(b);
        }
    }
    Ok(sum)
}

/// Doubled face sum expected at a frozen vertex of a `Conf₃` seed:
/// `(α_k*, -α_k, 0)` at `k°`, `(-α_k*, 0, α_k)` at the left end of row `k`
/// and `(0, α_k*, -α_k)` at the right end.
pub fn expected_frozen_sum(cartan: &CartanData, id: &VertexId, kind: VertexKind) -> Option<Grading> {
    let zero = Weight::zero(cartan.rank());
    let alpha = |k: usize| cartan.alpha_as_weight(k);
    let alpha_star = |k: usize| cartan.alpha_as_weight(cartan.star(k));
    match (id, kind) {
        (VertexId::Circle(k), _) => Some(Grading::triple(alpha_star(*k), -alpha(*k), zero)),
        (VertexId::Row { row, .. }, VertexKind::Edge13) => {
            Some(Grading::triple(-alpha_star(*row), zero, alpha(*row)))
        }
        (VertexId::Row { row, .. }, VertexKind::Edge23) => {
            Some(Grading::triple(zero, alpha_star(*row), -alpha(*row)))
        }
        _ => None,
    }
}

/// Face identity report, split by vertex class.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FaceReport {
    /// Zero-sum at unfrozen vertices.
    pub unfrozen: Report,
    /// Doubled sums at frozen vertices against their expected values.
    pub frozen: Report,
}

impl FaceReport {
    pub fn passed(&self) -> bool {
        self.unfrozen.passed() && self.frozen.passed()
    }
}

/// Checks `Σ_j b_{ij} g_j = 0` at every unfrozen vertex and, for `Conf₃`
/// seeds, the doubled frozen values of [`expected_frozen_sum`].
pub fn check_face_identity(seed: &Seed, gradings: &Gradings) -> Result<FaceReport> {
    let mut report = FaceReport::default();
    let arity = gradings.values().next().map_or(3, Grading::arity);
    let rank = seed.cartan().map_or(0, |c| c.rank());
    let check_frozen = seed.space() == crate::quiver::Space::Conf3;
    for (i, v) in seed.vertices().iter().enumerate() {
        let sum = doubled_face_sum(seed, gradings, i)?;
        if !v.frozen {
            report
                .unfrozen
                .record(v.id.to_string(), Grading::zero(arity, rank), sum);
        } else if check_frozen {
            if let Some(expected) = seed
                .cartan()
                .and_then(|c| expected_frozen_sum(c, &v.id, v.kind))
            {
                report.frozen.record(v.id.to_string(), expected, sum);
            }
        }
    }
    Ok(report)
}

/// Quad gradings of every vertex of the `Conf₄` seed of `dword`.
///
/// A row vertex created at position `l` in row `i` gets `λ, μ` from
/// `u_l ω_i = -w₀λ - μ` and `ν, κ` from `(v_l ω_i)* = w₀ν + κ`; `k°` gets
/// `(ω_k*, ω_k, 0, 0)` and `k•` gets `(0, 0, ω_k*, ω_k)`.
pub fn conf4_gradings(dword: &DoubleWord) -> Result<(Seed, Gradings)> {
    let seed = build_conf4_quiver(dword)?;
    let cartan = dword.cartan();
    let zero = Weight::zero(cartan.rank());
    let mut out = Gradings::new();
    for v in seed.vertices() {
        let g = match v.id {
            VertexId::Row { row, .. } => {
                let (u, w) = dword.prefix_parts(v.position)?;
                let omega = cartan.fundamental_weight(row);
                let (lambda, mu) = split_weight(cartan, &cartan.apply_word(&u, &omega));
                let x = cartan.dual_weight(&cartan.apply_word(&w, &omega));
                let (kappa, neg) = x.pos_neg_parts();
                let nu = cartan.apply_w0(&neg);
                Grading::quad(lambda, mu, nu, kappa)
            }
            VertexId::Circle(k) => {
                let omega = cartan.fundamental_weight(k);
                Grading::quad(cartan.dual_weight(&omega), omega, zero.clone(), zero.clone())
            }
            VertexId::Bullet(k) => {
                let omega = cartan.fundamental_weight(k);
                Grading::quad(zero.clone(), zero.clone(), cartan.dual_weight(&omega), omega)
            }
            VertexId::Index(_) => return Err(Error::UnknownVertex(v.id.to_string())),
        };
        out.insert(v.id, g);
    }
    Ok((seed, out))
}

/// New grading at unfrozen `k` after mutation: the weight of either exchange
/// monomial minus the old grading. Errors when the two monomials disagree.
pub fn mutate_grading(seed: &Seed, gradings: &Gradings, k: &VertexId) -> Result<Gradings> {
    let idx = seed.index_of(k)?;
    if seed.vertices()[idx].frozen {
        return Err(Error::FrozenMutation(k.to_string()));
    }
    let old = gradings.get(k).ok_or_else(|| Error::UnknownVertex(k.to_string()))?;
    let rank = old.0.first().map_or(0, Weight::len);
    let mut plus = Grading::zero(old.arity(), rank);
    let mut minus = plus.clone();
    for (j, v) in seed.vertices().iter().enumerate() {
        let b2 = seed.b2_entry(idx, j);
        if b2 == 0 {
            continue;
        }
        let g = gradings
            .get(&v.id)
            .ok_or_else(|| Error::UnknownVertex(v.id.to_string()))?;
        // b_kj is integral because k is unfrozen
        let b = b2 / 2;
        if b > 0 {
            plus = &plus + &g.scale(b);
        } else {
            minus = &minus + &g.scale(-b);
        }
    }
    if plus != minus {
        return Err(Error::MonomialWeightMismatch {
            vertex: k.to_string(),
            plus: plus.flatten(),
            minus: minus.flatten(),
        });
    }
    let mut out = gradings.clone();
    out.insert(*k, &plus - old);
    Ok(out)
}

/// Mutates seed and gradings together.
pub fn mutate_graded(seed: &Seed, gradings: &Gradings, k: &VertexId) -> Result<(Seed, Gradings)> {
    let g = mutate_grading(seed, gradings, k)?;
    Ok((seed.mutate(k)?, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::DynkinType;
    use crate::word::enumerate_reduced_words;
    use std::sync::Arc;

    fn arc(label: &str) -> Arc<CartanData> {
        Arc::new(CartanData::from_label(label).unwrap())
    }

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn minor_grading_examples() {
        let a2 = arc("A2");
        assert_eq!(minor_grading(&a2, &[], 1), Grading::triple(w(&[0, 1]), w(&[0, 0]), w(&[1, 0])));
        assert_eq!(minor_grading(&a2, &[1, 2], 1), Grading::triple(w(&[1, 0]), w(&[1, 0]), w(&[1, 0])));
        let w0 = a2.canonical_w0_word().to_vec();
        assert_eq!(minor_grading(&a2, &w0, 1), Grading::triple(w(&[0, 0]), w(&[0, 1]), w(&[1, 0])));
    }

    #[test]
    fn minor_grading_ends_all_types() {
        for label in ["A1", "A4", "B3", "C3", "D4", "D5", "E6", "F4", "G2"] {
            let c = arc(label);
            let w0 = c.canonical_w0_word().to_vec();
            for i in c.nodes() {
                let om = c.fundamental_weight(i);
                let star = c.dual_weight(&om);
                let zero = Weight::zero(c.rank());
                assert_eq!(minor_grading(&c, &[], i), Grading::triple(star.clone(), zero.clone(), om.clone()));
                assert_eq!(minor_grading(&c, &w0, i), Grading::triple(zero, star, om));
            }
        }
    }

    #[test]
    fn a1_recursive_identity() {
        let a1 = arc("A1");
        let word = ReducedWord::new(a1, vec![1]).unwrap();
        let r = check_recursive_identity(&word);
        assert_eq!(r.checked, 1);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn recursive_and_face_identities_small_types() {
        for label in ["A1", "A2", "A3", "B2", "B3", "C3", "G2"] {
            let c = arc(label);
            for word in enumerate_reduced_words(&c).unwrap() {
                let r = check_recursive_identity(&word);
                assert!(r.passed(), "{label} {word}: {:?}", r.violations);
                let (seed, g) = assign_conf3_gradings(&word).unwrap();
                let f = check_face_identity(&seed, &g).unwrap();
                assert!(f.passed(), "{label} {word}: {f:?}");
                assert_eq!(f.frozen.checked, 3 * c.rank());
                assert!(g.values().all(Grading::is_dominant));
            }
        }
    }

    #[test]
    fn circle_sum_a1() {
        let a1 = arc("A1");
        let word = ReducedWord::new(a1.clone(), vec![1]).unwrap();
        let (seed, g) = assign_conf3_gradings(&word).unwrap();
        let i = seed.index_of(&VertexId::Circle(1)).unwrap();
        assert_eq!(doubled_face_sum(&seed, &g, i).unwrap(), Grading::triple(w(&[2]), w(&[-2]), w(&[0])));
    }

    #[test]
    fn a2_mutation_of_gradings() {
        let word = ReducedWord::new(arc("A2"), vec![1, 2, 1]).unwrap();
        let (seed, g) = assign_conf3_gradings(&word).unwrap();
        let k = seed.unfrozen_ids()[0];
        let (s1, g1) = mutate_graded(&seed, &g, &k).unwrap();
        assert!(g1[&k].is_dominant());
        assert_ne!(g1[&k], g[&k]);
        let f = check_face_identity(&s1, &g1).unwrap();
        assert!(f.unfrozen.passed());
        let (s2, g2) = mutate_graded(&s1, &g1, &k).unwrap();
        assert_eq!(s2, seed);
        assert_eq!(g2, g);
    }

    #[test]
    fn mutate_grading_detects_mismatch() {
        let word = ReducedWord::new(arc("A2"), vec![1, 2, 1]).unwrap();
        let (seed, mut g) = assign_conf3_gradings(&word).unwrap();
        let k = seed.unfrozen_ids()[0];
        let some_neighbor = seed
            .vertices()
            .iter()
            .find(|v| seed.b2_entry(seed.index_of(&k).unwrap(), seed.index_of(&v.id).unwrap()) != 0)
            .unwrap()
            .id;
        g.insert(some_neighbor, Grading::triple(w(&[5, 5]), w(&[0, 0]), w(&[0, 0])));
        assert!(matches!(
            mutate_grading(&seed, &g, &k),
            Err(Error::MonomialWeightMismatch { .. })
        ));
        assert!(matches!(
            mutate_grading(&seed, &g, &VertexId::Circle(1)),
            Err(Error::FrozenMutation(_))
        ));
    }

    #[test]
    fn conf4_grading_ends() {
        let a3 = arc("A3");
        let dw = DoubleWord::new(a3.clone(), vec![-1, -2, -3, -1, -2, -1, 3, 2, 1, 3, 2, 3]).unwrap();
        let (seed, g) = conf4_gradings(&dw).unwrap();
        assert_eq!(seed.len(), 21);
        for v in seed.vertices() {
            let q = &g[&v.id];
            assert!(q.is_dominant(), "{} {q}", v.id);
            let om = a3.fundamental_weight(v.row);
            let star = a3.dual_weight(&om);
            let zero = Weight::zero(3);
            match (v.id, v.kind) {
                (VertexId::Row { .. }, VertexKind::Edge14) => {
                    assert_eq!(q, &Grading::quad(star.clone(), zero.clone(), zero, star))
                }
                (VertexId::Row { .. }, VertexKind::Edge23) => {
                    assert_eq!(q, &Grading::quad(zero, star.clone(), star, Weight::zero(3)))
                }
                (VertexId::Bullet(_), _) => assert_eq!(q, &Grading::quad(zero.clone(), zero, star, om)),
                _ => {}
            }
        }
        assert!(a3.kind() == DynkinType::A);
    }

    #[test]
    fn conf4_shared_vertices_well_defined() {
        // a row vertex keeps its grading while other rows' letters pass by
        let a3 = arc("A3");
        let dw = DoubleWord::new(a3.clone(), vec![-1, 3, -2, 2, -3, 1, -1, 3, -2, 2, -1, 3]).unwrap();
        for l in 1..=dw.len() {
            let (u0, v0) = dw.prefix_parts(l - 1).unwrap();
            let (u1, v1) = dw.prefix_parts(l).unwrap();
            let j = dw.letters()[l - 1].unsigned_abs() as usize;
            for i in a3.nodes().filter(|&i| i != j) {
                let om = a3.fundamental_weight(i);
                assert_eq!(a3.apply_word(&u0, &om), a3.apply_word(&u1, &om));
                assert_eq!(a3.apply_word(&v0, &om), a3.apply_word(&v1, &om));
            }
        }
    }
}
