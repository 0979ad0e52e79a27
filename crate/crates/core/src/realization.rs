//! The `SL_n` realization of the seeds: random points of double Bruhat
//! cells, cluster values as generalized minors, the twist factorization and
//! exchange relations checked in exact arithmetic.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{
    chevalley, generalized_minor, lift_w0, MinorPlan, lu_decompose, rat, sl_size, ul_decompose, Generator,
    Rational, RationalMatrix,
};
use crate::quiver::{build_conf3_quiver, build_conf4_quiver, Seed, VertexId};
use crate::root_system::CartanData;
use crate::word::{DoubleWord, ReducedWord};

/// Maximum resampling attempts before giving up.
pub const MAX_ATTEMPTS: usize = 1000;

/// Range of the random integer entries.
pub const ENTRY_BOUND: i64 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Cell {
    /// `G^{w₀,e}`, containing the image of `B⁻`.
    W0E,
    /// `G^{w₀,w₀}`.
    W0W0,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruhatPoint {
    pub matrix: RationalMatrix,
    pub cell: Cell,
}

/// Cluster values keyed by vertex.
pub type ClusterValues = BTreeMap<VertexId, Rational>;

fn nonzero_entry<R: Rng>(rng: &mut R) -> i64 {
    loop {
        let x = rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND);
        if x != 0 {
            return x;
        }
    }
}

/// Diagonal matrix of determinant 1 with small nonzero integer entries except
/// the last, which is fixed by the determinant.
fn random_torus<R: Rng>(n: usize, rng: &mut R) -> RationalMatrix {
    let mut diag: Vec<Rational> = (0..n - 1).map(|_| rat(nonzero_entry(rng))).collect();
    let prod = diag.iter().fold(Rational::one(), |acc, d| acc * d);
    diag.push(prod.recip());
    RationalMatrix::diagonal(diag)
}

fn random_unitriangular<R: Rng>(n: usize, lower: bool, rng: &mut R) -> RationalMatrix {
    let mut m = RationalMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            let x = rat(rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND));
            if lower {
                m[(i, j)] = x;
            } else {
                m[(j, i)] = x;
            }
        }
    }
    m
}

/// Draws one candidate point of the cell without genericity checks.
pub fn raw_point<R: Rng>(cell: Cell, n: usize, rng: &mut R) -> RationalMatrix {
    match cell {
        Cell::W0E => &random_unitriangular(n, true, rng) * &random_torus(n, rng),
        Cell::W0W0 => {
            let l = random_unitriangular(n, true, rng);
            let d = random_torus(n, rng);
            let u = random_unitriangular(n, false, rng);
            &(&l * &d) * &u
        }
    }
}

/// A seeded random point of `cell` at which `accept` holds, retrying up to
/// [`MAX_ATTEMPTS`] times.
pub fn sample_point_with<F>(cell: Cell, n: usize, rng: &mut ChaCha8Rng, accept: F) -> Result<BruhatPoint>
where
    F: Fn(&RationalMatrix) -> bool,
{
    for _ in 0..MAX_ATTEMPTS {
        let m = raw_point(cell, n, rng);
        if accept(&m) {
            return Ok(BruhatPoint { matrix: m, cell });
        }
    }
    Err(Error::SamplingFailed(MAX_ATTEMPTS))
}

/// A point of `G^{w₀,e}` at which every cluster variable of `word` is
/// nonzero. Deterministic in `rng_seed`.
pub fn sample_bruhat(word: &ReducedWord, rng_seed: u64) -> Result<BruhatPoint> {
    let n = sl_size(word.cartan())?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    sample_generic(word, n, &mut rng)
}

/// Like [`sample_bruhat`], drawing from an existing generator.
pub fn sample_generic(word: &ReducedWord, n: usize, rng: &mut ChaCha8Rng) -> Result<BruhatPoint> {
    let plans = ClusterPlan::new(word)?;
    sample_point_with(Cell::W0E, n, rng, |m| plans.evaluate(m).is_ok())
}

/// A point of `G^{w₀,w₀}` at which every row minor of `dword` is nonzero.
pub fn sample_double_bruhat(dword: &DoubleWord, rng_seed: u64) -> Result<BruhatPoint> {
    let cartan = dword.cartan();
    let n = sl_size(cartan)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let seed = build_conf4_quiver(dword)?;
    sample_point_with(Cell::W0W0, n, &mut rng, |m| {
        conf4_values_at(&seed, dword, m).is_ok_and(|vals| vals.values().all(|x| !x.is_zero()))
    })
}

// (vertex, u-prefix, row) for every row vertex of the word's quiver.
fn row_minors(word: &ReducedWord) -> Vec<(VertexId, Vec<usize>, usize)> {
    let mut occ = vec![0usize; word.cartan().rank()];
    let mut out: Vec<_> = word
        .cartan()
        .nodes()
        .map(|i| (VertexId::Row { row: i, occurrence: 0 }, Vec::new(), i))
        .collect();
    for l in 1..=word.len() {
        let j = word.letter(l);
        occ[j - 1] += 1;
        out.push((
            VertexId::Row {
                row: j,
                occurrence: occ[j - 1],
            },
            word.letters()[..l].to_vec(),
            j,
        ));
    }
    out
}

/// The `(u, i)` label of every row vertex: the vertex holds `Δ_{uω_i, ω_i}`.
pub fn minor_labels(word: &ReducedWord) -> BTreeMap<VertexId, (Vec<usize>, usize)> {
    row_minors(word).into_iter().map(|(id, u, i)| (id, (u, i))).collect()
}

/// Minor plans for every row vertex of a word's quiver.
#[derive(Debug, Clone)]
pub struct ClusterPlan {
    rows: Vec<(VertexId, MinorPlan)>,
    circles: Vec<VertexId>,
}

impl ClusterPlan {
    pub fn new(word: &ReducedWord) -> Result<Self> {
        let n = sl_size(word.cartan())?;
        let rows = row_minors(word)
            .into_iter()
            .map(|(id, u, i)| Ok((id, MinorPlan::new(&u, &[], i, n)?)))
            .collect::<Result<_>>()?;
        let circles = word.cartan().nodes().map(VertexId::Circle).collect();
        Ok(ClusterPlan { rows, circles })
    }

    /// Cluster values at a point of `B⁻`; errors if any vanishes.
    pub fn evaluate(&self, point: &RationalMatrix) -> Result<ClusterValues> {
        let mut out = ClusterValues::new();
        for (id, plan) in &self.rows {
            let x = plan.eval(point);
            if x.is_zero() {
                return Err(Error::Pole(format!("cluster variable {id} vanishes")));
            }
            out.insert(*id, x);
        }
        for id in &self.circles {
            out.insert(*id, Rational::one());
        }
        Ok(out)
    }
}

/// Cluster values of the `Conf₃` seed on the image of a point of `B⁻`:
/// row vertices hold their minors and every `k°` holds 1.
pub fn evaluate_cluster(word: &ReducedWord, point: &RationalMatrix) -> Result<ClusterValues> {
    ClusterPlan::new(word)?.evaluate(point)
}

fn conf4_values_at(seed: &Seed, dword: &DoubleWord, m: &RationalMatrix) -> Result<ClusterValues> {
    let mut out = ClusterValues::new();
    for v in seed.vertices() {
        if let VertexId::Row { row, .. } = v.id {
            let (u, w) = dword.prefix_parts(v.position)?;
            out.insert(v.id, generalized_minor(&u, &w, row, m)?);
        }
    }
    Ok(out)
}

/// Row minors `Δ_{u_lω_i, v_lω_i}` of the `Conf₄` seed at a point.
pub fn evaluate_conf4_cluster(dword: &DoubleWord, point: &RationalMatrix) -> Result<ClusterValues> {
    let seed = build_conf4_quiver(dword)?;
    conf4_values_at(&seed, dword, point)
}

fn value(values: &ClusterValues, id: VertexId) -> Result<&Rational> {
    values.get(&id).ok_or_else(|| Error::UnknownVertex(id.to_string()))
}

/// `b_l = a_{k°}^{[l = t_k]} ∏_{i≠j} a_i^{-c_{ij}} / (a_{j₋} a_{j₊})` for every
/// word position `l` with letter `j`.
pub fn twist_coefficients(word: &ReducedWord, values: &ClusterValues) -> Result<Vec<Rational>> {
    let cartan = word.cartan();
    let t = word.crossing_indices();
    let mut occ = vec![0usize; cartan.rank()];
    let mut out = Vec::with_capacity(word.len());
    for l in 1..=word.len() {
        let j = word.letter(l);
        let row = |i: usize, o: usize| VertexId::Row { row: i, occurrence: o };
        let denom = value(values, row(j, occ[j - 1]))? * value(values, row(j, occ[j - 1] + 1))?;
        if denom.is_zero() {
            return Err(Error::Pole(format!("twist coefficient b_{l}")));
        }
        let mut num = Rational::one();
        for i in cartan.nodes().filter(|&i| i != j) {
            let e = -cartan.c(i, j);
            if e > 0 {
                let a = value(values, row(i, occ[i - 1]))?;
                for _ in 0..e {
                    num *= a;
                }
            }
        }
        if let Some(k) = t.iter().position(|&tk| tk == l) {
            num *= value(values, VertexId::Circle(k + 1))?;
        }
        out.push(num / denom);
        occ[j - 1] += 1;
    }
    Ok(out)
}

fn check_length(word: &ReducedWord, b: &[Rational]) -> Result<()> {
    if b.len() != word.len() {
        return Err(Error::WrongLength {
            got: b.len(),
            expected: word.len(),
        });
    }
    Ok(())
}

/// `γ = F_{i_1*}(b_1) ⋯ F_{i_K*}(b_K)`.
pub fn twist_gamma(word: &ReducedWord, b: &[Rational]) -> Result<RationalMatrix> {
    check_length(word, b)?;
    let cartan = word.cartan();
    let n = sl_size(cartan)?;
    word.letters().iter().zip(b).try_fold(RationalMatrix::identity(n), |acc, (&i, bl)| {
        Ok(&acc * &chevalley(Generator::F, cartan.star(i), bl, n)?)
    })
}

/// `γ' = E_{i_K}(b_K) ⋯ E_{i_1}(b_1)`, checked against `w̄₀ γ⁻¹ w̄₀⁻¹`.
pub fn gamma_prime(word: &ReducedWord, b: &[Rational]) -> Result<RationalMatrix> {
    check_length(word, b)?;
    let cartan = word.cartan();
    let n = sl_size(cartan)?;
    let gp = word
        .letters()
        .iter()
        .zip(b)
        .rev()
        .try_fold(RationalMatrix::identity(n), |acc, (&i, bl)| {
            Ok::<_, Error>(&acc * &chevalley(Generator::E, i, bl, n)?)
        })?;
    let w0 = lift_w0(cartan)?;
    let conj = &(&w0 * &twist_gamma(word, b)?.inverse()?) * &w0.inverse()?;
    if gp != conj {
        return Err(Error::Internal(format!("gamma' = {gp} but w0 gamma^-1 w0^-1 = {conj}")));
    }
    Ok(gp)
}

/// The unipotent `γ ∈ U⁻` carrying the configuration of a point `b ∈ B⁻`
/// back to the standard frame.
///
/// With `x = b w̄₀`, write `x = p n` (`p` upper triangular, `n` lower
/// unitriangular) and set `g = p⁻¹`. The normalized flag is that of
/// `N = g w̄₀⁻¹`; factoring `N = L R` with `L` lower unitriangular gives
/// `γ = L⁻¹`.
pub fn twist_gamma_direct(cartan: &CartanData, point: &RationalMatrix) -> Result<RationalMatrix> {
    let w0 = lift_w0(cartan)?;
    let x = point * &w0;
    let (p, _) = ul_decompose(&x)?;
    let g = p.inverse()?;
    let normalized = &g * &w0.inverse()?;
    let (l, _) = lu_decompose(&normalized)?;
    let gamma = l.inverse()?;
    if !gamma.is_lower_unitriangular() || !(&gamma * &normalized).is_upper_triangular() {
        return Err(Error::Internal("transporter is not unipotent".into()));
    }
    Ok(gamma)
}

/// Outcome of one twist comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistCheck {
    pub b: Vec<String>,
    pub formula: RationalMatrix,
    pub direct: RationalMatrix,
    pub gamma_prime_ok: bool,
}

impl TwistCheck {
    pub fn passed(&self) -> bool {
        self.formula == self.direct && self.gamma_prime_ok
    }
}

/// Runs the full pipeline at one point: cluster values, coefficients `b_l`,
/// the product formula, the direct transporter and the `γ'` relation.
pub fn check_twist(word: &ReducedWord, point: &RationalMatrix) -> Result<TwistCheck> {
    let values = evaluate_cluster(word, point)?;
    let b = twist_coefficients(word, &values)?;
    let formula = twist_gamma(word, &b)?;
    let direct = twist_gamma_direct(word.cartan(), point)?;
    let gamma_prime_ok = gamma_prime(word, &b).is_ok();
    Ok(TwistCheck {
        b: b.iter().map(ToString::to_string).collect(),
        formula,
        direct,
        gamma_prime_ok,
    })
}

/// How the mutated variable was identified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExchangeMethod {
    /// The vertex sits inside a braid pattern `j i j`; the new variable is
    /// the minor of the braid-moved word.
    Braid,
    /// `(M⁺ + M⁻) / A_k` is checked to be polynomial along every
    /// coordinate line through the point.
    Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeCheck {
    pub vertex: String,
    pub method: ExchangeMethod,
    pub a_k: String,
    pub a_k_new: String,
    pub plus: String,
    pub minus: String,
    pub passed: bool,
}

// M⁺ and M⁻ at vertex idx.
fn monomials(seed: &Seed, values: &ClusterValues, idx: usize) -> Result<(Rational, Rational)> {
    let mut plus = Rational::one();
    let mut minus = Rational::one();
    for (j, v) in seed.vertices().iter().enumerate() {
        let b2 = seed.b2_entry(idx, j);
        if b2 == 0 {
            continue;
        }
        let a = value(values, v.id)?;
        let target = if b2 > 0 { &mut plus } else { &mut minus };
        for _ in 0..(b2.abs() / 2) {
            *target *= a;
        }
    }
    Ok((plus, minus))
}

// Total exponent of each exchange monomial at idx.
fn monomial_degrees(seed: &Seed, idx: usize) -> (usize, usize) {
    let mut p = 0;
    let mut m = 0;
    for j in 0..seed.len() {
        let b = seed.b2_entry(idx, j) / 2;
        if b > 0 {
            p += b as usize;
        } else {
            m += (-b) as usize;
        }
    }
    (p, m)
}

/// For an unfrozen row vertex between positions `p` and `p + 2` of a braid
/// pattern `j i j`, the `(u, i)` label of the variable replacing it.
fn braid_partner(word: &ReducedWord, id: &VertexId) -> Option<(Vec<usize>, usize)> {
    let VertexId::Row { row, occurrence } = *id else {
        return None;
    };
    let positions: Vec<usize> = (1..=word.len()).filter(|&l| word.letter(l) == row).collect();
    let p = *positions.get(occurrence - 1)?;
    let q = *positions.get(occurrence)?;
    if q != p + 2 {
        return None;
    }
    let i = word.letter(p + 1);
    if word.cartan().braid_order(row, i) != 3 {
        return None;
    }
    let mut u = word.letters()[..p - 1].to_vec();
    u.push(i);
    Some((u, i))
}

fn lagrange_eval(xs: &[Rational], ys: &[Rational], at: &Rational) -> Rational {
    let mut total = Rational::zero();
    for (k, (xk, yk)) in xs.iter().zip(ys).enumerate() {
        let mut term = yk.clone();
        for (m, xm) in xs.iter().enumerate() {
            if m != k {
                term *= (at - xm) / (xk - xm);
            }
        }
        total += term;
    }
    total
}

/// Number of extra interpolation nodes in the polynomiality test.
pub const EXTRA_NODES: usize = 20;

// Checks that s ↦ (M⁺ + M⁻)/A_k along x + s e_{ab} is a polynomial of degree
// at most `degree`; every minor is affine in a single matrix entry.
fn polynomial_along_line(
    plan: &ClusterPlan,
    seed: &Seed,
    idx: usize,
    point: &RationalMatrix,
    (a, b): (usize, usize),
    degree: usize,
) -> Result<bool> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let needed = degree + 1 + EXTRA_NODES;
    let mut s = 0i64;
    while xs.len() < needed {
        let mut m = point.clone();
        m[(a, b)] += rat(s);
        s += 1;
        let values = match plan.evaluate(&m) {
            Ok(v) => v,
            Err(Error::Pole(_)) => continue,
            Err(e) => return Err(e),
        };
        let (plus, minus) = monomials(seed, &values, idx)?;
        let ak = value(&values, seed.vertices()[idx].id)?;
        xs.push(rat(s - 1));
        ys.push((plus + minus) / ak);
        if s > 10 * needed as i64 {
            return Err(Error::SamplingFailed(needed));
        }
    }
    Ok(fits_polynomial(&xs, &ys, degree))
}

// Interpolates the first `degree + 1` samples and checks the rest.
fn fits_polynomial(xs: &[Rational], ys: &[Rational], degree: usize) -> bool {
    let (fit_x, check_x) = xs.split_at(degree + 1);
    let (fit_y, check_y) = ys.split_at(degree + 1);
    check_x
        .iter()
        .zip(check_y)
        .all(|(x, y)| &lagrange_eval(fit_x, fit_y, x) == y)
}

/// Checks the exchange relation `A_k A'_k = M⁺ + M⁻` at an unfrozen vertex of
/// the `Conf₃` seed, on a point of `B⁻` where every `k°` equals 1.
pub fn verify_exchange(word: &ReducedWord, point: &RationalMatrix, k: &VertexId) -> Result<ExchangeCheck> {
    let seed = build_conf3_quiver(word)?;
    let idx = seed.index_of(k)?;
    if seed.vertices()[idx].frozen {
        return Err(Error::FrozenMutation(k.to_string()));
    }
    let values = evaluate_cluster(word, point)?;
    let ak = value(&values, *k)?.clone();
    let (plus, minus) = monomials(&seed, &values, idx)?;
    let sum = &plus + &minus;
    let (method, a_new, passed) = match braid_partner(word, k) {
        Some((u, i)) => {
            let a_new = generalized_minor(&u, &[], i, point)?;
            let ok = &ak * &a_new == sum;
            (ExchangeMethod::Braid, a_new, ok)
        }
        None => {
            let (dp, dm) = monomial_degrees(&seed, idx);
            let degree = dp.max(dm);
            let n = point.size();
            let plan = ClusterPlan::new(word)?;
            let mut ok = true;
            for a in 0..n {
                for b in 0..a {
                    ok &= polynomial_along_line(&plan, &seed, idx, point, (a, b), degree)?;
                }
            }
            (ExchangeMethod::Polynomial, &sum / &ak, ok)
        }
    };
    Ok(ExchangeCheck {
        vertex: k.to_string(),
        method,
        a_k: ak.to_string(),
        a_k_new: a_new.to_string(),
        plus: plus.to_string(),
        minus: minus.to_string(),
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ratio;
    use std::sync::Arc;

    fn canonical(label: &str) -> ReducedWord {
        ReducedWord::canonical(Arc::new(CartanData::from_label(label).unwrap()))
    }

    #[test]
    fn sampling_is_deterministic_and_lower_triangular() {
        let w = canonical("A3");
        let a = sample_bruhat(&w, 11).unwrap();
        let b = sample_bruhat(&w, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.matrix.is_lower_triangular());
        assert_eq!(a.matrix.determinant(), rat(1));
        let vals = evaluate_cluster(&w, &a.matrix).unwrap();
        assert_eq!(vals.len(), 12);
        assert!(vals.values().all(|x| !x.is_zero()));
    }

    #[test]
    fn sl2_point_shape() {
        let w = canonical("A1");
        let p = sample_bruhat(&w, 3).unwrap().matrix;
        assert!(p[(0, 1)].is_zero() && !p[(1, 0)].is_zero());
        assert_eq!(&p[(0, 0)] * &p[(1, 1)], rat(1));
    }

    #[test]
    fn twist_coefficient_examples() {
        let w = canonical("A1");
        let mut vals = ClusterValues::new();
        vals.insert(VertexId::Row { row: 1, occurrence: 0 }, rat(3));
        vals.insert(VertexId::Row { row: 1, occurrence: 1 }, rat(7));
        vals.insert(VertexId::Circle(1), rat(1));
        assert_eq!(twist_coefficients(&w, &vals).unwrap(), vec![ratio(1, 21)]);

        let w = canonical("A3");
        let ones: ClusterValues = row_minors(&w)
            .into_iter()
            .map(|(id, _, _)| (id, rat(1)))
            .chain((1..=3).map(|k| (VertexId::Circle(k), rat(1))))
            .collect();
        assert!(twist_coefficients(&w, &ones).unwrap().iter().all(|b| b == &rat(1)));
    }

    #[test]
    fn twist_gamma_examples() {
        let w = canonical("A3");
        let zeros = vec![rat(0); 6];
        assert!(twist_gamma(&w, &zeros).unwrap().is_identity());
        assert!(gamma_prime(&w, &zeros).unwrap().is_identity());
        let w1 = canonical("A1");
        assert_eq!(
            twist_gamma(&w1, &[rat(4)]).unwrap(),
            chevalley(Generator::F, 1, &rat(4), 2).unwrap()
        );
        let b: Vec<Rational> = (1..=6).map(|i| ratio(i, 7 - i)).collect();
        assert!(twist_gamma(&w, &b).unwrap().is_lower_unitriangular());
        assert!(gamma_prime(&w, &b).is_ok());
        assert!(twist_gamma(&w, &b[..3]).is_err());
    }

    #[test]
    fn sl2_twist_by_hand() {
        // b = [[a, 0], [c, 1/a]]: a_{1₋} = a, a_{1₊} = c, so b₁ = 1/(ac)
        let a = rat(2);
        let c = rat(-3);
        let point = RationalMatrix::from_rows(vec![vec![a.clone(), rat(0)], vec![c.clone(), a.recip()]]).unwrap();
        let w = canonical("A1");
        let direct = twist_gamma_direct(w.cartan(), &point).unwrap();
        assert_eq!(direct, chevalley(Generator::F, 1, &(a * c).recip(), 2).unwrap());
        assert!(check_twist(&w, &point).unwrap().passed());
    }

    #[test]
    fn twist_pipeline_small() {
        for label in ["A1", "A2", "A3"] {
            let w = canonical(label);
            for s in 0..5 {
                let p = sample_bruhat(&w, s).unwrap();
                let r = check_twist(&w, &p.matrix).unwrap();
                assert!(r.passed(), "{label} seed {s}: {r:?}");
            }
        }
    }

    #[test]
    fn exchange_a2_and_a3() {
        for label in ["A2", "A3"] {
            let w = canonical(label);
            let seed = build_conf3_quiver(&w).unwrap();
            let p = sample_bruhat(&w, 5).unwrap();
            for k in seed.unfrozen_ids() {
                let r = verify_exchange(&w, &p.matrix, &k).unwrap();
                assert!(r.passed, "{label} {k}: {r:?}");
            }
        }
    }

    #[test]
    fn interpolation_detects_non_polynomials() {
        let xs: Vec<Rational> = (0..25).map(rat).collect();
        let square: Vec<Rational> = xs.iter().map(|x| x * x).collect();
        assert!(fits_polynomial(&xs, &square, 2));
        assert!(!fits_polynomial(&xs, &square, 1));
        let recip: Vec<Rational> = xs.iter().map(|x| (x + rat(1)).recip()).collect();
        assert!(!fits_polynomial(&xs, &recip, 4));
    }

    #[test]
    fn braid_partner_detection() {
        let w = canonical("A3");
        assert_eq!(
            braid_partner(&w, &VertexId::Row { row: 1, occurrence: 1 }),
            Some((vec![2], 2))
        );
        assert_eq!(braid_partner(&w, &VertexId::Row { row: 2, occurrence: 1 }), None);
    }

    #[test]
    fn conf4_minors_nonzero() {
        let a3 = Arc::new(CartanData::from_label("A3").unwrap());
        let dw = DoubleWord::new(a3, vec![-1, -2, -3, -1, -2, -1, 3, 2, 1, 3, 2, 3]).unwrap();
        let p = sample_double_bruhat(&dw, 1).unwrap();
        let vals = evaluate_conf4_cluster(&dw, &p.matrix).unwrap();
        assert_eq!(vals.len(), 15);
        assert!(vals.values().all(|x| !x.is_zero()));
    }

    #[test]
    fn unsupported_types() {
        let w = canonical("B2");
        assert!(matches!(sample_bruhat(&w, 0), Err(Error::UnsupportedType(_))));
    }
}
