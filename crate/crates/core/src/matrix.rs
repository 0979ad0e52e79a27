//! Exact rational matrices and the `SL_n` data attached to type `A_{n-1}`:
//! Chevalley generators, lifts of Weyl group elements, Gaussian
//! decomposition and generalized minors.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::root_system::{CartanData, DynkinType};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Square matrix with exact rational entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        let n = self.n;
        let mut out = RationalMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Mul for RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: RationalMatrix) -> RationalMatrix {
        &self * &rhs
    }
}

impl RationalMatrix {
    pub fn zero(n: usize) -> Self {
        RationalMatrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Incompatible("matrix rows must form a square".into()));
        }
        Ok(RationalMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn diagonal(entries: Vec<Rational>) -> Self {
        let mut m = Self::zero(entries.len());
        for (i, d) in entries.into_iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Entries as `p/q` strings (integers print without a denominator).
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.data
            .chunks(self.n)
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Rational {
        let k = rows.len();
        assert_eq!(k, cols.len(), "minor needs as many rows as columns");
        let mut a: Vec<Vec<Rational>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self[(i, j)].clone()).collect())
            .collect();
        let mut det = Rational::one();
        for c in 0..k {
            let Some(p) = (c..k).find(|&r| !a[r][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let pivot = a[c][c].clone();
            det *= &pivot;
            for r in c + 1..k {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] / &pivot;
                for cc in c..k {
                    let delta = &f * &a[c][cc];
                    a[r][cc] -= delta;
                }
            }
        }
        det
    }

    /// Leading principal `k × k` minor.
    pub fn leading_minor(&self, k: usize) -> Rational {
        let idx: Vec<usize> = (0..k).collect();
        self.minor(&idx, &idx)
    }

    pub fn determinant(&self) -> Rational {
        self.leading_minor(self.n)
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[(r, c)].is_zero())
                .ok_or_else(|| Error::Pole("singular matrix".into()))?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let pivot = a[(c, c)].clone();
            for j in 0..n {
                a[(c, j)] /= &pivot;
                inv[(c, j)] /= &pivot;
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for j in 0..n {
                    let da = &f * &a[(c, j)];
                    a[(r, j)] -= da;
                    let di = &f * &inv[(c, j)];
                    inv[(r, j)] -= di;
                }
            }
        }
        Ok(inv)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        (0..self.n).all(|i| {
            self[(i, i)].is_one() && (i + 1..self.n).all(|j| self[(i, j)].is_zero())
        })
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.transpose().is_lower_unitriangular()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)].is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.transpose().is_upper_triangular()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.n), |acc, _| &acc * self)
    }

    /// Smallest `k ≤ max` with `self^k = 1`.
    pub fn order(&self, max: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=max {
            if acc.is_identity() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    pub fn has_small_entries(&self, bound: i64) -> bool {
        let b = rat(bound);
        self.data.iter().all(|x| x.abs() <= b)
    }
}

/// `n` for `SL_n` when the root system has type `A_{n-1}`.
pub fn sl_size(cartan: &CartanData) -> Result<usize> {
    if cartan.kind() == DynkinType::A {
        Ok(cartan.rank() + 1)
    } else {
        Err(Error::UnsupportedType(cartan.label()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    E,
    F,
}

/// `E_i(t) = 1 + t e_{i,i+1}` or `F_i(t) = 1 + t e_{i+1,i}` in `SL_n`.
pub fn chevalley(kind: Generator, i: usize, t: &Rational, n: usize) -> Result<RationalMatrix> {
    if i == 0 || i >= n {
        return Err(Error::InvalidNode {
            node: i as i64,
            rank: n.saturating_sub(1),
        });
    }
    let mut m = RationalMatrix::identity(n);
    match kind {
        Generator::E => m[(i - 1, i)] = t.clone(),
        Generator::F => m[(i, i - 1)] = t.clone(),
    }
    Ok(m)
}

/// Lift of `s_i`: identity with the block `[[0, -1], [1, 0]]` on `i, i+1`.
pub fn lift_simple(i: usize, n: usize) -> Result<RationalMatrix> {
    if i == 0 || i >= n {
        return Err(Error::InvalidNode {
            node: i as i64,
            rank: n.saturating_sub(1),
        });
    }
    let mut m = RationalMatrix::identity(n);
    m[(i - 1, i - 1)] = Rational::zero();
    m[(i, i)] = Rational::zero();
    m[(i - 1, i)] = rat(-1);
    m[(i, i - 1)] = rat(1);
    Ok(m)
}

/// Product of simple lifts, left to right.
pub fn lift_word(word: &[usize], n: usize) -> Result<RationalMatrix> {
    word.iter()
        .try_fold(RationalMatrix::identity(n), |acc, &i| Ok(&acc * &lift_simple(i, n)?))
}

pub fn lift_w0(cartan: &CartanData) -> Result<RationalMatrix> {
    lift_word(cartan.canonical_w0_word(), sl_size(cartan)?)
}

/// `s_G = w̄₀²`, checked to commute with every `E_i(1)` and `F_i(1)`.
pub fn central_element(cartan: &CartanData) -> Result<RationalMatrix> {
    let n = sl_size(cartan)?;
    let w0 = lift_w0(cartan)?;
    let s = &w0 * &w0;
    for i in 1..n {
        for kind in [Generator::E, Generator::F] {
            let g = chevalley(kind, i, &rat(1), n)?;
            if &s * &g != &g * &s {
                return Err(Error::Internal(format!("w0 lift squared is not central at node {i}")));
            }
        }
    }
    Ok(s)
}

/// `x = x₋ x₀ x₊` with `x₋` lower unitriangular, `x₀` diagonal and `x₊`
/// upper unitriangular.
pub fn gauss_decompose(x: &RationalMatrix) -> Result<(RationalMatrix, RationalMatrix, RationalMatrix)> {
    let n = x.size();
    let mut lower = RationalMatrix::identity(n);
    let mut upper = x.clone();
    for c in 0..n {
        let pivot = upper[(c, c)].clone();
        if pivot.is_zero() {
            return Err(Error::OutsideBigCell(c + 1));
        }
        for r in c + 1..n {
            if upper[(r, c)].is_zero() {
                continue;
            }
            let f = &upper[(r, c)] / &pivot;
            for j in c..n {
                let d = &f * &upper[(c, j)];
                upper[(r, j)] -= d;
            }
            lower[(r, c)] = f;
        }
    }
    let diag = RationalMatrix::diagonal((0..n).map(|i| upper[(i, i)].clone()).collect());
    for i in 0..n {
        let d = diag[(i, i)].clone();
        for j in i..n {
            upper[(i, j)] /= &d;
        }
    }
    Ok((lower, diag, upper))
}

/// `x = L R` with `L` lower unitriangular and `R` upper triangular.
pub fn lu_decompose(x: &RationalMatrix) -> Result<(RationalMatrix, RationalMatrix)> {
    let (l, d, u) = gauss_decompose(x)?;
    Ok((l, &d * &u))
}

/// `x = P N` with `P` upper triangular and `N` lower unitriangular.
pub fn ul_decompose(x: &RationalMatrix) -> Result<(RationalMatrix, RationalMatrix)> {
    let inv = x.inverse()?;
    let (l, d, u) = gauss_decompose(&inv)?;
    Ok(((&d * &u).inverse()?, l.inverse()?))
}

/// `Δ_{uω_i, vω_i}(x)`: the leading `i × i` minor of `ū⁻¹ x v̄`.
pub fn generalized_minor(u: &[usize], v: &[usize], i: usize, x: &RationalMatrix) -> Result<Rational> {
    let n = x.size();
    if i == 0 || i >= n {
        return Err(Error::InvalidNode {
            node: i as i64,
            rank: n - 1,
        });
    }
    let ubar = lift_word(u, n)?;
    let vbar = lift_word(v, n)?;
    let y = &(&ubar.inverse()? * x) * &vbar;
    Ok(y.leading_minor(i))
}

/// Precomputed evaluation of `Δ_{uω_i, vω_i}`. The lifts are signed
/// permutation matrices, so by Cauchy–Binet the minor is a fixed sign times
/// one submatrix determinant of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorPlan {
    rows: Vec<usize>,
    cols: Vec<usize>,
    sign: Rational,
}

impl MinorPlan {
    pub fn new(u: &[usize], v: &[usize], i: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::InvalidNode {
                node: i as i64,
                rank: n - 1,
            });
        }
        let uinv = lift_word(u, n)?.inverse()?;
        let vbar = lift_word(v, n)?;
        let lead: Vec<usize> = (0..i).collect();
        let support = |m: &RationalMatrix, transpose: bool| -> Vec<usize> {
            let mut out: Vec<usize> = lead
                .iter()
                .map(|&r| {
                    (0..n)
                        .find(|&c| {
                            let x = if transpose { &m[(c, r)] } else { &m[(r, c)] };
                            !x.is_zero()
                        })
                        .expect("lift is a signed permutation")
                })
                .collect();
            out.sort_unstable();
            out
        };
        let rows = support(&uinv, false);
        let cols = support(&vbar, true);
        let sign = uinv.minor(&lead, &rows) * vbar.minor(&cols, &lead);
        Ok(MinorPlan { rows, cols, sign })
    }

    pub fn eval(&self, x: &RationalMatrix) -> Rational {
        &self.sign * x.minor(&self.rows, &self.cols)
    }
}

/// The same minor read off the rows `ū ⋅ {1..i}` and columns `v̄ ⋅ {1..i}`
/// of `x`, up to the sign of the lifts. Used as an independent check.
pub fn permuted_rows(word: &[usize], i: usize, n: usize) -> Vec<usize> {
    // the permutation s_{i_1} ⋯ s_{i_l} applied to {0..i}
    let mut perm: Vec<usize> = (0..n).collect();
    for &s in word.iter().rev() {
        for p in perm.iter_mut() {
            if *p == s - 1 {
                *p = s;
            } else if *p == s {
                *p = s - 1;
            }
        }
    }
    let mut rows: Vec<usize> = perm[..i].to_vec();
    rows.sort_unstable();
    rows
}
