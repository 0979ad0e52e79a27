//! Cartan data, weights, roots and the Weyl group action for finite
//! semisimple types.
//!
//! Nodes are numbered from 1 in Bourbaki order. The Cartan matrix is
//! `c[i][j] = 2 (α_i, α_j) / (α_i, α_i)` and fundamental weights are dual to
//! simple coroots, so the simple root `α_j` has weight coordinates
//! `α_j = Σ_i c[i][j] ω_i` (column `j` of the Cartan matrix). Everything is
//! integer arithmetic.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cartan–Killing family of a simple Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DynkinType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl DynkinType {
    pub fn letter(self) -> char {
        match self {
            DynkinType::A => 'A',
            DynkinType::B => 'B',
            DynkinType::C => 'C',
            DynkinType::D => 'D',
            DynkinType::E => 'E',
            DynkinType::F => 'F',
            DynkinType::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => DynkinType::A,
            'B' => DynkinType::B,
            'C' => DynkinType::C,
            'D' => DynkinType::D,
            'E' => DynkinType::E,
            'F' => DynkinType::F,
            'G' => DynkinType::G,
            _ => return None,
        })
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

macro_rules! int_vector {
    ($name:ident) => {
        impl $name {
            pub fn zero(rank: usize) -> Self {
                $name(vec![0; rank])
            }

            pub fn coeffs(&self) -> &[i64] {
                &self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&c| c == 0)
            }

            /// Coefficient at a 1-based node.
            pub fn get(&self, node: usize) -> i64 {
                self.0[node - 1]
            }
        }

        impl From<Vec<i64>> for $name {
            fn from(v: Vec<i64>) -> Self {
                $name(v)
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                debug_assert_eq!(self.0.len(), rhs.0.len());
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                &self + &rhs
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                debug_assert_eq!(self.0.len(), rhs.0.len());
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                &self - &rhs
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|a| -a).collect())
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                -&self
            }
        }

        impl Mul<&$name> for i64 {
            type Output = $name;
            fn mul(self, rhs: &$name) -> $name {
                $name(rhs.0.iter().map(|a| self * a).collect())
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    };
}

/// A weight `Σ r_i ω_i` in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

/// An element `Σ m_i α_i` of the root lattice in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

int_vector!(Weight);
int_vector!(RootVector);

impl Weight {
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Splits `λ = λ⁺ + λ⁻` coordinatewise, `λ⁺` dominant and `λ⁻` antidominant.
    pub fn pos_neg_parts(&self) -> (Weight, Weight) {
        let pos = self.0.iter().map(|&c| c.max(0)).collect();
        let neg = self.0.iter().map(|&c| c.min(0)).collect();
        (Weight(pos), Weight(neg))
    }

    pub fn positive_part(&self) -> Weight {
        self.pos_neg_parts().0
    }

    pub fn negative_part(&self) -> Weight {
        self.pos_neg_parts().1
    }
}

impl RootVector {
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c <= 0)
    }

    /// True when the vector is `±α_j` for some node.
    pub fn simple_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, &c) in self.0.iter().enumerate() {
            match c {
                0 => {}
                1 | -1 if found.is_none() => found = Some(i + 1),
                _ => return None,
            }
        }
        found
    }
}

/// Something the Weyl group acts on through simple reflections.
pub trait WeylVector: Clone {
    fn reflect(&self, cartan: &CartanData, node: usize) -> Self;
}

impl WeylVector for Weight {
    fn reflect(&self, cartan: &CartanData, node: usize) -> Self {
        let r = self.get(node);
        if r == 0 {
            return self.clone();
        }
        self - &(r * &cartan.alpha_as_weight(node))
    }
}

impl WeylVector for RootVector {
    fn reflect(&self, cartan: &CartanData, node: usize) -> Self {
        // <β, α_j^∨> = Σ_i m_i c[j][i]
        let pairing: i64 = self
            .0
            .iter()
            .enumerate()
            .map(|(i, m)| m * cartan.c(node, i + 1))
            .sum();
        let mut out = self.clone();
        out.0[node - 1] -= pairing;
        out
    }
}

/// Ambient constants for one finite type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    kind: DynkinType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    multipliers: Vec<i64>,
    positive_roots: Vec<RootVector>,
    w0_word: Vec<usize>,
    star: Vec<usize>,
}

impl CartanData {
    /// Standard Cartan matrix and multipliers for `(kind, rank)`.
    pub fn new(kind: DynkinType, rank: usize) -> Result<Self> {
        let invalid = || Error::InvalidType {
            label: kind.letter(),
            rank,
        };
        let valid = match kind {
            DynkinType::A => rank >= 1,
            DynkinType::B | DynkinType::C => rank >= 2,
            DynkinType::D => rank >= 4,
            DynkinType::E => (6..=8).contains(&rank),
            DynkinType::F => rank == 4,
            DynkinType::G => rank == 2,
        };
        if !valid {
            return Err(invalid());
        }

        let n = rank;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut d = vec![1i64; n];
        match kind {
            DynkinType::A => edges.extend((1..n).map(|i| (i, i + 1))),
            DynkinType::B => {
                edges.extend((1..n).map(|i| (i, i + 1)));
                d.iter_mut().take(n - 1).for_each(|x| *x = 2);
            }
            DynkinType::C => {
                edges.extend((1..n).map(|i| (i, i + 1)));
                d[n - 1] = 2;
            }
            DynkinType::D => {
                edges.extend((1..n - 1).map(|i| (i, i + 1)));
                edges.push((n - 2, n));
            }
            DynkinType::E => {
                edges.extend([(1, 3), (3, 4), (2, 4)]);
                edges.extend((4..n).map(|i| (i, i + 1)));
            }
            DynkinType::F => {
                edges.extend([(1, 2), (2, 3), (3, 4)]);
                d = vec![2, 2, 1, 1];
            }
            DynkinType::G => {
                edges.push((1, 2));
                d = vec![1, 3];
            }
        }

        let mut cartan = vec![vec![0i64; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(a, b) in &edges {
            let (i, j) = (a - 1, b - 1);
            // 2(α_i, α_j)/(α_i, α_i) with (α_i, α_j) = -max(d_i, d_j)/2
            let m = d[i].max(d[j]);
            cartan[i][j] = -m / d[i];
            cartan[j][i] = -m / d[j];
        }

        let mut data = CartanData {
            kind,
            rank,
            cartan,
            multipliers: d,
            positive_roots: Vec::new(),
            w0_word: Vec::new(),
            star: Vec::new(),
        };
        data.positive_roots = data.compute_positive_roots();
        data.w0_word = data.compute_w0_word();
        data.star = data.compute_star()?;
        Ok(data)
    }

    /// Parses labels such as `A3`, `g2`.
    pub fn from_label(label: &str) -> Result<Self> {
        let mut chars = label.trim().chars();
        let bad = || Error::Parse(label.to_string());
        let kind = chars.next().and_then(DynkinType::from_letter).ok_or_else(bad)?;
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanData::new(kind, rank)
    }

    pub fn kind(&self) -> DynkinType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    /// Cartan entry `c_{ij}` at 1-based nodes.
    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn multipliers(&self) -> &[i64] {
        &self.multipliers
    }

    /// Squared root length of node `i`, short roots normalized to 1.
    pub fn multiplier(&self, i: usize) -> i64 {
        self.multipliers[i - 1]
    }

    pub fn check_node(&self, node: i64) -> Result<usize> {
        if node >= 1 && node as usize <= self.rank {
            Ok(node as usize)
        } else {
            Err(Error::InvalidNode {
                node,
                rank: self.rank,
            })
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> {
        1..=self.rank
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.c(i, j) != 0
    }

    /// Order `m_{ij}` of `s_i s_j`.
    pub fn braid_order(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        match self.c(i, j) * self.c(j, i) {
            0 => 2,
            1 => 3,
            2 => 4,
            _ => 6,
        }
    }

    pub fn neighbors(&self, j: usize) -> Vec<usize> {
        self.nodes().filter(|&i| self.adjacent(i, j)).collect()
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut w = Weight::zero(self.rank);
        w.0[i - 1] = 1;
        w
    }

    pub fn simple_root(&self, j: usize) -> RootVector {
        let mut r = RootVector::zero(self.rank);
        r.0[j - 1] = 1;
        r
    }

    /// Weight coordinates of `α_j`: the coefficient of `ω_i` is `c_{ij}`.
    pub fn alpha_as_weight(&self, j: usize) -> Weight {
        Weight(self.nodes().map(|i| self.c(i, j)).collect())
    }

    /// Converts a root-lattice vector into weight coordinates.
    pub fn root_to_weight(&self, beta: &RootVector) -> Weight {
        let mut w = Weight::zero(self.rank);
        for (j, &m) in beta.0.iter().enumerate() {
            if m != 0 {
                w = &w + &(m * &self.alpha_as_weight(j + 1));
            }
        }
        w
    }

    pub fn reflect_weight(&self, lambda: &Weight, j: usize) -> Weight {
        lambda.reflect(self, j)
    }

    /// `s_j β`; errors if the image has mixed signs and so is not a root.
    pub fn reflect_root(&self, beta: &RootVector, j: usize) -> Result<RootVector> {
        let out = beta.reflect(self, j);
        if out.is_positive() || out.is_negative() {
            Ok(out)
        } else {
            Err(Error::MixedSignRoot(out.0))
        }
    }

    /// Applies `s_{i_1} ⋯ s_{i_l}` to `x`. The rightmost letter acts first.
    pub fn apply_word<T: WeylVector>(&self, word: &[usize], x: &T) -> T {
        word.iter().rev().fold(x.clone(), |acc, &j| acc.reflect(self, j))
    }

    /// Applies the inverse `s_{i_l} ⋯ s_{i_1}`: the leftmost letter acts first.
    pub fn apply_inverse_word<T: WeylVector>(&self, word: &[usize], x: &T) -> T {
        word.iter().fold(x.clone(), |acc, &j| acc.reflect(self, j))
    }

    pub fn positive_roots(&self) -> &[RootVector] {
        &self.positive_roots
    }

    /// `K = |Φ⁺|`, the length of the longest element.
    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn canonical_w0_word(&self) -> &[usize] {
        &self.w0_word
    }

    pub fn apply_w0<T: WeylVector>(&self, x: &T) -> T {
        self.apply_word(&self.w0_word, x)
    }

    /// `λ* = -w₀ λ`.
    pub fn dual_weight(&self, lambda: &Weight) -> Weight {
        -self.apply_w0(lambda)
    }

    /// The node `i*` with `-w₀ ω_i = ω_{i*}`.
    pub fn star(&self, i: usize) -> usize {
        self.star[i - 1]
    }

    fn compute_positive_roots(&self) -> Vec<RootVector> {
        let mut seen: BTreeSet<RootVector> = BTreeSet::new();
        let mut queue: VecDeque<RootVector> = self.nodes().map(|j| self.simple_root(j)).collect();
        while let Some(r) = queue.pop_front() {
            if !r.is_positive() || !seen.insert(r.clone()) {
                continue;
            }
            for j in self.nodes() {
                queue.push_back(r.reflect(self, j));
            }
        }
        let mut roots: Vec<RootVector> = seen.into_iter().collect();
        roots.sort_by_key(|r| (r.0.iter().sum::<i64>(), std::cmp::Reverse(r.0.clone())));
        roots
    }

    // Longest elements of the parabolic chain {1}, {1,2}, ..., extended
    // greedily by the smallest admissible letter. Gives the staircase in type A.
    fn compute_w0_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        for k in self.nodes() {
            while let Some(i) =
                (1..=k).find(|&i| self.apply_word(&word, &self.simple_root(i)).is_positive())
            {
                word.push(i);
            }
        }
        debug_assert_eq!(word.len(), self.positive_roots.len());
        word
    }

    fn compute_star(&self) -> Result<Vec<usize>> {
        self.nodes()
            .map(|i| {
                let image = -self.apply_w0(&self.fundamental_weight(i));
                image
                    .simple_index()
                    .filter(|&j| image.get(j) == 1)
                    .ok_or_else(|| {
                        Error::Internal(format!("-w0 ω_{i} = {image} is not fundamental"))
                    })
            })
            .collect()
    }
}

impl Weight {
    fn simple_index(&self) -> Option<usize> {
        RootVector(self.0.clone()).simple_index()
    }
}

impl fmt::Display for CartanData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}
