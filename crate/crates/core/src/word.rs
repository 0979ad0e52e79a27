//! Reduced words for `w₀`, double words for `(w₀, w₀)`, root sequences and
//! crossing indices.
//!
//! Positions in a word are 1-based throughout, matching the indexing of
//! quiver pieces. A word `s_{i_1} ⋯ s_{i_K}` acts right to left.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::root_system::{CartanData, RootVector, WeylVector};

/// Default rank limit for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_RANK: usize = 3;

/// Parses a comma-separated list of signed integers such as `1,2,1` or `-1,2`.
pub fn parse_letters(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| tok.trim().parse::<i64>().map_err(|_| Error::Parse(s.to_string())))
        .collect()
}

/// Checks that every `β_l = u_{l-1} α_{i_l}` is positive, returning the
/// root sequence. Reports the first failing step.
pub fn check_root_sequence(cartan: &CartanData, letters: &[usize]) -> Result<Vec<RootVector>> {
    let mut roots = Vec::with_capacity(letters.len());
    let mut seen = BTreeSet::new();
    for (l, &j) in letters.iter().enumerate() {
        cartan.check_node(j as i64)?;
        let beta = cartan.apply_word(&letters[..l], &cartan.simple_root(j));
        if !beta.is_positive() || !seen.insert(beta.clone()) {
            return Err(Error::NotReduced {
                word: letters.iter().map(|&x| x as i64).collect(),
                step: l + 1,
                root: beta.0,
            });
        }
        roots.push(beta);
    }
    Ok(roots)
}

/// True iff the word is reduced (any length, not only for `w₀`).
pub fn is_reduced(cartan: &CartanData, letters: &[usize]) -> bool {
    check_root_sequence(cartan, letters).is_ok()
}

/// Sign pattern of `u_l⁻¹ α` for `l = 0..=len`; `true` means positive.
pub fn sign_sequence(cartan: &CartanData, letters: &[usize], alpha: &RootVector) -> Vec<bool> {
    let mut current = alpha.clone();
    let mut signs = vec![current.is_positive()];
    for &j in letters {
        current = cartan.reflect_root(&current, j).unwrap_or_else(|_| {
            panic!("reflection of a root left the root system at node {j}")
        });
        signs.push(current.is_positive());
    }
    signs
}

/// A reduced word for the longest element.
#[derive(Clone, PartialEq, Eq)]
pub struct ReducedWord {
    cartan: Arc<CartanData>,
    letters: Vec<usize>,
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ReducedWord({}, {:?})", self.cartan, self.letters)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl ReducedWord {
    pub fn new(cartan: Arc<CartanData>, letters: Vec<usize>) -> Result<Self> {
        let expected = cartan.num_positive_roots();
        if letters.len() != expected {
            return Err(Error::WrongLength {
                got: letters.len(),
                expected,
            });
        }
        check_root_sequence(&cartan, &letters)?;
        Ok(ReducedWord { cartan, letters })
    }

    pub fn from_signed(cartan: Arc<CartanData>, letters: &[i64]) -> Result<Self> {
        let letters = letters
            .iter()
            .map(|&x| cartan.check_node(x))
            .collect::<Result<Vec<_>>>()?;
        ReducedWord::new(cartan, letters)
    }

    pub fn canonical(cartan: Arc<CartanData>) -> Self {
        let letters = cartan.canonical_w0_word().to_vec();
        ReducedWord { cartan, letters }
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn cartan_arc(&self) -> &Arc<CartanData> {
        &self.cartan
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at a 1-based position.
    pub fn letter(&self, position: usize) -> usize {
        self.letters[position - 1]
    }

    /// The first `l` letters, i.e. a word for `u_l`.
    pub fn prefix(&self, l: usize) -> Result<&[usize]> {
        if l > self.letters.len() {
            return Err(Error::PrefixOutOfRange {
                len: l,
                max: self.letters.len(),
            });
        }
        Ok(&self.letters[..l])
    }

    /// `(β_1, …, β_K)`, a permutation of the positive roots.
    pub fn root_sequence(&self) -> Vec<RootVector> {
        check_root_sequence(&self.cartan, &self.letters).expect("validated at construction")
    }

    /// `t_k` for every node: the first position where `u_l⁻¹ α_k` is negative.
    pub fn crossing_indices(&self) -> Vec<usize> {
        crossing_scan(&self.cartan, self.letters.iter().map(|&j| (j, true)))
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|&j| j as i64).collect()
    }
}

// Scans (letter, counts) pairs, where only counted letters act. Returns the
// global 1-based position at which each simple root first turns negative.
fn crossing_scan(cartan: &CartanData, letters: impl Iterator<Item = (usize, bool)>) -> Vec<usize> {
    let mut current: Vec<RootVector> = cartan.nodes().map(|k| cartan.simple_root(k)).collect();
    let mut t = vec![0usize; cartan.rank()];
    for (pos, (j, counts)) in letters.enumerate() {
        if !counts {
            continue;
        }
        for (k, root) in current.iter_mut().enumerate() {
            *root = root.reflect(cartan, j);
            if t[k] == 0 && root.is_negative() {
                t[k] = pos + 1;
            }
        }
    }
    t
}

/// Which copy of the Weyl group a double-word letter belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    /// Negative letters: the first copy (`u`).
    U,
    /// Positive letters: the second copy (`v`).
    V,
}

/// A shuffle of a reduced word for `w₀` in negative letters and one in
/// positive letters.
#[derive(Clone, PartialEq, Eq)]
pub struct DoubleWord {
    cartan: Arc<CartanData>,
    letters: Vec<i64>,
}

impl fmt::Debug for DoubleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleWord({}, {:?})", self.cartan, self.letters)
    }
}

impl DoubleWord {
    pub fn new(cartan: Arc<CartanData>, letters: Vec<i64>) -> Result<Self> {
        let n = cartan.rank() as i64;
        if let Some(&bad) = letters.iter().find(|&&x| x == 0 || x.abs() > n) {
            return Err(Error::InvalidNode {
                node: bad,
                rank: cartan.rank(),
            });
        }
        let dw = DoubleWord { cartan, letters };
        for (part, name) in [(Part::U, "negative"), (Part::V, "positive")] {
            ReducedWord::new(dw.cartan.clone(), dw.part_letters(part)).map_err(|e| {
                Error::InvalidDoubleWord(format!("{name} letters do not form a reduced word for w0: {e}"))
            })?;
        }
        Ok(dw)
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn cartan_arc(&self) -> &Arc<CartanData> {
        &self.cartan
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Part and node of the letter at a 1-based position.
    pub fn letter(&self, position: usize) -> (Part, usize) {
        split_letter(self.letters[position - 1])
    }

    /// Sign-stripped letters of one part, in order.
    pub fn part_letters(&self, part: Part) -> Vec<usize> {
        self.letters
            .iter()
            .map(|&x| split_letter(x))
            .filter(|&(p, _)| p == part)
            .map(|(_, j)| j)
            .collect()
    }

    /// Words for `(u_l, v_l)`: the two parts of the first `l` letters.
    pub fn prefix_parts(&self, l: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        if l > self.letters.len() {
            return Err(Error::PrefixOutOfRange {
                len: l,
                max: self.letters.len(),
            });
        }
        let mut u = Vec::new();
        let mut v = Vec::new();
        for &x in &self.letters[..l] {
            match split_letter(x) {
                (Part::U, j) => u.push(j),
                (Part::V, j) => v.push(j),
            }
        }
        Ok((u, v))
    }

    /// `(t, r)`: crossing positions of the `u`-part and of the `v`-part, as
    /// global positions in the double word.
    pub fn double_crossing_indices(&self) -> (Vec<usize>, Vec<usize>) {
        let scan = |part: Part| {
            crossing_scan(
                &self.cartan,
                self.letters.iter().map(move |&x| {
                    let (p, j) = split_letter(x);
                    (j, p == part)
                }),
            )
        };
        (scan(Part::U), scan(Part::V))
    }
}

fn split_letter(x: i64) -> (Part, usize) {
    if x < 0 {
        (Part::U, (-x) as usize)
    } else {
        (Part::V, x as usize)
    }
}

/// All words obtained from `letters` by a single braid move.
pub fn braid_neighbors(cartan: &CartanData, letters: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for p in 0..letters.len() {
        let i = letters[p];
        for j in cartan.nodes().filter(|&j| j != i) {
            let m = cartan.braid_order(i, j);
            if p + m > letters.len() {
                continue;
            }
            let window = &letters[p..p + m];
            let alternates = window
                .iter()
                .enumerate()
                .all(|(k, &x)| x == if k % 2 == 0 { i } else { j });
            if alternates {
                let mut next = letters.to_vec();
                for (k, slot) in next[p..p + m].iter_mut().enumerate() {
                    *slot = if k % 2 == 0 { j } else { i };
                }
                out.push(next);
            }
        }
    }
    out
}

/// Every reduced word for `w₀`, found by closing the canonical word under
/// braid moves. Refuses ranks above [`DEFAULT_ENUMERATION_RANK`].
pub fn enumerate_reduced_words(cartan: &Arc<CartanData>) -> Result<Vec<ReducedWord>> {
    enumerate_reduced_words_with_limit(cartan, DEFAULT_ENUMERATION_RANK)
}

pub fn enumerate_reduced_words_with_limit(
    cartan: &Arc<CartanData>,
    max_rank: usize,
) -> Result<Vec<ReducedWord>> {
    if cartan.rank() > max_rank {
        return Err(Error::EnumerationTooLarge {
            rank: cartan.rank(),
            limit: max_rank,
        });
    }
    let start = cartan.canonical_w0_word().to_vec();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        if !seen.insert(w.clone()) {
            continue;
        }
        for next in braid_neighbors(cartan, &w) {
            if !seen.contains(&next) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen
        .into_iter()
        .map(|letters| ReducedWord {
            cartan: cartan.clone(),
            letters,
        })
        .collect())
}

/// A reduced word reached from the canonical one by `steps` random braid moves.
pub fn random_reduced_word<R: Rng>(cartan: &Arc<CartanData>, steps: usize, rng: &mut R) -> ReducedWord {
    let mut letters = cartan.canonical_w0_word().to_vec();
    for _ in 0..steps {
        let options = braid_neighbors(cartan, &letters);
        if options.is_empty() {
            break;
        }
        letters = options[rng.gen_range(0..options.len())].clone();
    }
    ReducedWord {
        cartan: cartan.clone(),
        letters,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::DynkinType;

    fn arc(kind: DynkinType, rank: usize) -> Arc<CartanData> {
        Arc::new(CartanData::new(kind, rank).unwrap())
    }

    /// Root sequence by brute force: compose reflections one at a time on α_{i_l}.
    fn root_sequence_oracle(cartan: &CartanData, letters: &[usize]) -> Vec<RootVector> {
        (0..letters.len())
            .map(|l| {
                let mut beta = cartan.simple_root(letters[l]);
                for &j in letters[..l].iter().rev() {
                    beta = cartan.reflect_root(&beta, j).unwrap();
                }
                beta
            })
            .collect()
    }

    /// All words of length K over the nodes that are reduced, by exhaustive search.
    fn reduced_words_oracle(cartan: &CartanData) -> BTreeSet<Vec<usize>> {
        let k = cartan.num_positive_roots();
        let mut found = BTreeSet::new();
        let mut stack: Vec<Vec<usize>> = vec![vec![]];
        while let Some(w) = stack.pop() {
            if w.len() == k {
                found.insert(w);
                continue;
            }
            for j in cartan.nodes() {
                let mut next = w.clone();
                next.push(j);
                if is_reduced(cartan, &next) {
                    stack.push(next);
                }
            }
        }
        found
    }

    #[test]
    fn reducedness() {
        let a2 = arc(DynkinType::A, 2);
        assert!(!is_reduced(&a2, &[1, 1]));
        assert!(!is_reduced(&a2, &[1, 1, 2]));
        assert!(is_reduced(&a2, &[1, 2, 1]));
        let a3 = arc(DynkinType::A, 3);
        assert!(is_reduced(&a3, &[1, 2, 1, 3, 2, 1]));
        assert!(matches!(
            ReducedWord::new(a2.clone(), vec![1, 2]),
            Err(Error::WrongLength { .. })
        ));
        match ReducedWord::new(a2, vec![1, 1, 2]) {
            Err(Error::NotReduced { step, root, .. }) => {
                assert_eq!(step, 2);
                assert_eq!(root, vec![-1, 0]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn root_sequences() {
        let a2 = arc(DynkinType::A, 2);
        let w = ReducedWord::new(a2.clone(), vec![1, 2, 1]).unwrap();
        let expected = root_sequence_oracle(&a2, &[1, 2, 1]);
        assert_eq!(
            expected,
            vec![RootVector(vec![1, 0]), RootVector(vec![1, 1]), RootVector(vec![0, 1])]
        );
        assert_eq!(w.root_sequence(), expected);

        let a1 = arc(DynkinType::A, 1);
        let w = ReducedWord::new(a1, vec![1]).unwrap();
        assert_eq!(w.root_sequence(), vec![RootVector(vec![1])]);

        let b2 = arc(DynkinType::B, 2);
        let w = ReducedWord::new(b2.clone(), vec![1, 2, 1, 2]).unwrap();
        let mut got = w.root_sequence();
        got.sort();
        let mut phi: Vec<RootVector> = [[1, 0], [0, 1], [1, 1], [1, 2]]
            .iter()
            .map(|r| RootVector(r.to_vec()))
            .collect();
        phi.sort();
        assert_eq!(got, phi);
        assert_eq!(w.root_sequence(), root_sequence_oracle(&b2, w.letters()));
    }

    #[test]
    fn crossing_indices_examples() {
        let a2 = arc(DynkinType::A, 2);
        assert_eq!(
            ReducedWord::new(a2, vec![1, 2, 1]).unwrap().crossing_indices(),
            vec![1, 3]
        );
        let a3 = arc(DynkinType::A, 3);
        assert_eq!(
            ReducedWord::new(a3, vec![1, 2, 1, 3, 2, 1]).unwrap().crossing_indices(),
            vec![1, 3, 6]
        );
        let a1 = arc(DynkinType::A, 1);
        assert_eq!(ReducedWord::new(a1, vec![1]).unwrap().crossing_indices(), vec![1]);
    }

    #[test]
    fn crossing_indices_are_simple_root_positions() {
        for cartan in [arc(DynkinType::A, 3), arc(DynkinType::B, 3), arc(DynkinType::G, 2)] {
            for w in enumerate_reduced_words(&cartan).unwrap() {
                let betas = w.root_sequence();
                let t = w.crossing_indices();
                for (k, &tk) in t.iter().enumerate() {
                    assert_eq!(betas[tk - 1], cartan.simple_root(k + 1));
                    // the flipping root at t_k is the simple root of the letter there
                    let before = cartan.apply_inverse_word(&w.letters()[..tk - 1], &cartan.simple_root(k + 1));
                    assert_eq!(before, cartan.simple_root(w.letter(tk)));
                }
                let distinct: BTreeSet<usize> = t.iter().copied().collect();
                assert_eq!(distinct.len(), t.len());
                let simple_positions: BTreeSet<usize> = betas
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| b.simple_index().is_some())
                    .map(|(l, _)| l + 1)
                    .collect();
                assert_eq!(simple_positions, distinct);
            }
        }
    }

    #[test]
    fn prefixes() {
        let a2 = arc(DynkinType::A, 2);
        let w = ReducedWord::new(a2, vec![1, 2, 1]).unwrap();
        assert_eq!(w.prefix(0).unwrap(), &[] as &[usize]);
        assert_eq!(w.prefix(2).unwrap(), &[1, 2]);
        assert!(w.prefix(4).is_err());
        let a3 = arc(DynkinType::A, 3);
        let w = ReducedWord::new(a3, vec![1, 2, 1, 3, 2, 1]).unwrap();
        assert_eq!(w.prefix(4).unwrap(), &[1, 2, 1, 3]);
    }

    #[test]
    fn enumeration_matches_exhaustive_search() {
        let expected_counts = [
            (DynkinType::A, 1, 1),
            (DynkinType::A, 2, 2),
            (DynkinType::A, 3, 16),
            (DynkinType::B, 2, 2),
            (DynkinType::G, 2, 2),
            (DynkinType::B, 3, 42),
            (DynkinType::C, 3, 42),
        ];
        for (kind, rank, count) in expected_counts {
            let cartan = arc(kind, rank);
            let words: BTreeSet<Vec<usize>> = enumerate_reduced_words(&cartan)
                .unwrap()
                .into_iter()
                .map(|w| w.letters().to_vec())
                .collect();
            assert_eq!(words, reduced_words_oracle(&cartan), "{kind}{rank}");
            assert_eq!(words.len(), count, "{kind}{rank}");
        }
        let a2 = arc(DynkinType::A, 2);
        let words: Vec<Vec<usize>> = enumerate_reduced_words(&a2)
            .unwrap()
            .into_iter()
            .map(|w| w.letters().to_vec())
            .collect();
        assert_eq!(words, vec![vec![1, 2, 1], vec![2, 1, 2]]);
    }

    #[test]
    fn enumeration_guard() {
        let a4 = arc(DynkinType::A, 4);
        assert!(matches!(
            enumerate_reduced_words(&a4),
            Err(Error::EnumerationTooLarge { rank: 4, limit: 3 })
        ));
        assert_eq!(enumerate_reduced_words_with_limit(&a4, 4).unwrap().len(), 768);
    }

    #[test]
    fn enumeration_is_closed_under_braid_moves() {
        let b3 = arc(DynkinType::B, 3);
        let words: BTreeSet<Vec<usize>> = enumerate_reduced_words(&b3)
            .unwrap()
            .into_iter()
            .map(|w| w.letters().to_vec())
            .collect();
        for w in &words {
            assert!(is_reduced(&b3, w));
            for n in braid_neighbors(&b3, w) {
                assert!(words.contains(&n));
            }
        }
    }

    #[test]
    fn double_words() {
        let a1 = arc(DynkinType::A, 1);
        let dw = DoubleWord::new(a1.clone(), vec![-1, 1]).unwrap();
        assert_eq!(dw.double_crossing_indices(), (vec![1], vec![2]));
        assert!(DoubleWord::new(a1.clone(), vec![-1]).is_err());
        assert!(DoubleWord::new(a1, vec![-1, 2]).is_err());

        let a3 = arc(DynkinType::A, 3);
        let letters = vec![-1, -2, -3, -1, -2, -1, 3, 2, 1, 3, 2, 3];
        let dw = DoubleWord::new(a3.clone(), letters.clone()).unwrap();
        let u = dw.part_letters(Part::U);
        let v = dw.part_letters(Part::V);
        let tu = ReducedWord::new(a3.clone(), u).unwrap().crossing_indices();
        let tv = ReducedWord::new(a3.clone(), v).unwrap().crossing_indices();
        let (t, r) = dw.double_crossing_indices();
        // u-part occupies positions 1..6, v-part 7..12
        assert_eq!(t, tu);
        assert_eq!(r, tv.iter().map(|x| x + 6).collect::<Vec<_>>());
        // hand scan: α₁ flips at the first letter, α₂ at the fourth, α₃ at the sixth;
        // in the v-part α₃ flips immediately, α₂ at local 4, α₁ at local 6
        assert_eq!(t, vec![1, 4, 6]);
        assert_eq!(r, vec![12, 10, 7]);

        // interleave the parts: positions shift but part-internal order is kept
        let shuffled = vec![-1, 3, -2, 2, -3, 1, -1, 3, -2, 2, -1, 3];
        let sw = DoubleWord::new(a3, shuffled.clone()).unwrap();
        let (t2, r2) = sw.double_crossing_indices();
        let u_pos: Vec<usize> = (1..=12).filter(|&p| shuffled[p - 1] < 0).collect();
        let v_pos: Vec<usize> = (1..=12).filter(|&p| shuffled[p - 1] > 0).collect();
        assert_eq!(t2, tu.iter().map(|&x| u_pos[x - 1]).collect::<Vec<_>>());
        assert_eq!(r2, tv.iter().map(|&x| v_pos[x - 1]).collect::<Vec<_>>());
    }

    #[test]
    fn parse() {
        assert_eq!(parse_letters("1,2,1").unwrap(), vec![1, 2, 1]);
        assert_eq!(parse_letters(" -1, 2 ").unwrap(), vec![-1, 2]);
        assert!(parse_letters("1,x").is_err());
    }

    #[test]
    fn the_fact_on_small_types() {
        for cartan in [arc(DynkinType::A, 3), arc(DynkinType::G, 2)] {
            for w in enumerate_reduced_words(&cartan).unwrap() {
                for alpha in cartan.positive_roots() {
                    let s = sign_sequence(&cartan, w.letters(), alpha);
                    let flips = s.windows(2).filter(|p| p[0] != p[1]).count();
                    assert_eq!(flips, 1);
                    assert!(s[0] && !s[s.len() - 1]);
                }
            }
        }
    }
}
