//! Seeds, quiver pieces and their amalgamation.
//!
//! Exchange matrices are stored doubled (`b2 = 2B`) so that half-arrows
//! between frozen vertices stay integral. An arrow from `a` to `b` means
//! `b_{ba} > 0` and `b_{ab} < 0`; its magnitude follows the multiplier
//! colouring: `|b_{ij}| = d_i / d_j` when `d_i > d_j`, and 1 otherwise.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_system::CartanData;
use crate::word::{DoubleWord, Part, ReducedWord};

/// Stable vertex identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexId {
    /// `occurrence`-th vertex of a row, counted from the left starting at 0.
    Row { row: usize, occurrence: usize },
    /// Edge vertex `k°` (flags 1 and 2).
    Circle(usize),
    /// Edge vertex `k•` (flags 3 and 4).
    Bullet(usize),
    /// Vertex of a seed given directly by its exchange matrix.
    Index(usize),
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Row { row, occurrence } => write!(f, "{row}.{occurrence}"),
            VertexId::Circle(k) => write!(f, "{k}°"),
            VertexId::Bullet(k) => write!(f, "{k}•"),
            VertexId::Index(i) => write!(f, "#{i}"),
        }
    }
}

impl FromStr for VertexId {
    type Err = Error;

    /// Accepts `2.1`, `3°` / `3o`, `3•` / `3b` and `#4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnknownVertex(s.to_string());
        if let Some(rest) = s.strip_prefix('#') {
            return rest.parse().map(VertexId::Index).map_err(|_| bad());
        }
        if let Some((row, occ)) = s.split_once('.') {
            return Ok(VertexId::Row {
                row: row.parse().map_err(|_| bad())?,
                occurrence: occ.parse().map_err(|_| bad())?,
            });
        }
        for (suffix, circle) in [("°", true), ("o", true), ("•", false), ("b", false)] {
            if let Some(k) = s.strip_suffix(suffix) {
                let k = k.parse().map_err(|_| bad())?;
                return Ok(if circle {
                    VertexId::Circle(k)
                } else {
                    VertexId::Bullet(k)
                });
            }
        }
        Err(bad())
    }
}

impl Serialize for VertexId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Role of a vertex in the configuration of flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Face,
    Edge12,
    Edge13,
    Edge14,
    Edge23,
    Edge34,
}

impl VertexKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexKind::Face => "face",
            VertexKind::Edge12 => "edge12",
            VertexKind::Edge13 => "edge13",
            VertexKind::Edge14 => "edge14",
            VertexKind::Edge23 => "edge23",
            VertexKind::Edge34 => "edge34",
        }
    }
}

/// Which moduli space a seed belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Borel,
    Conf3,
    Conf4,
    /// A seed given directly by an exchange matrix.
    Abstract,
}

impl Space {
    pub fn as_str(self) -> &'static str {
        match self {
            Space::Borel => "borel",
            Space::Conf3 => "conf3",
            Space::Conf4 => "conf4",
            Space::Abstract => "abstract",
        }
    }
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "borel" => Ok(Space::Borel),
            "conf3" => Ok(Space::Conf3),
            "conf4" => Ok(Space::Conf4),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    /// Dynkin node of the row; for `k°`/`k•` the node `k`.
    pub row: usize,
    pub kind: VertexKind,
    pub frozen: bool,
    pub multiplier: i64,
    /// Word position that created the vertex: 0 for the leftmost vertex of a
    /// row, `l` for the `j₊` vertex of the `l`-th piece, `t_k` / `r_k` for
    /// edge vertices.
    pub position: usize,
}

/// Exchange-matrix magnitude `|b_{ij}|` of a full arrow between rows with
/// multipliers `d_i` and `d_j`.
pub fn arrow_magnitude(d_i: i64, d_j: i64) -> i64 {
    if d_i > d_j {
        d_i / d_j
    } else {
        1
    }
}

// Adds an arrow from `from` to `to` on the doubled scale.
fn add_arrow(b2: &mut [Vec<i64>], d: &[i64], from: usize, to: usize, half: bool) {
    let scale = if half { 1 } else { 2 };
    b2[to][from] += scale * arrow_magnitude(d[to], d[from]);
    b2[from][to] -= scale * arrow_magnitude(d[from], d[to]);
}

/// Vertex of a piece before amalgamation assigns final identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PieceRole {
    Row,
    Circle(usize),
    Bullet(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceVertex {
    pub row: usize,
    pub role: PieceRole,
    pub position: usize,
}

/// Direction convention of a letter's piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `j₊ → j₋`, half-arrows `j₋ → i → j₊`; optional `k°`.
    Standard,
    /// All arrows reversed; optional `k•`.
    Reversed,
}

/// A quiver fragment with one left and one right boundary vertex per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverPiece {
    cartan: Arc<CartanData>,
    vertices: Vec<PieceVertex>,
    b2: Vec<Vec<i64>>,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl QuiverPiece {
    /// The piece for letter `s_j` at word position `position`, modified with
    /// an extra edge vertex for node `k` when `modified` is set.
    pub fn new(
        cartan: Arc<CartanData>,
        j: usize,
        orientation: Orientation,
        modified: Option<usize>,
        position: usize,
    ) -> Result<Self> {
        cartan.check_node(j as i64)?;
        if let Some(k) = modified {
            cartan.check_node(k as i64)?;
        }
        let n = cartan.rank();
        let mut vertices: Vec<PieceVertex> = cartan
            .nodes()
            .map(|row| PieceVertex {
                row,
                role: PieceRole::Row,
                position: 0,
            })
            .collect();
        let mut left: Vec<usize> = (0..n).collect();
        let mut right = left.clone();
        let j_minus = j - 1;
        let j_plus = vertices.len();
        vertices.push(PieceVertex {
            row: j,
            role: PieceRole::Row,
            position,
        });
        right[j - 1] = j_plus;
        left[j - 1] = j_minus;

        let extra = modified.map(|k| {
            vertices.push(PieceVertex {
                row: k,
                role: match orientation {
                    Orientation::Standard => PieceRole::Circle(k),
                    Orientation::Reversed => PieceRole::Bullet(k),
                },
                position,
            });
            vertices.len() - 1
        });

        let d: Vec<i64> = vertices.iter().map(|v| cartan.multiplier(v.row)).collect();
        let mut b2 = vec![vec![0i64; vertices.len()]; vertices.len()];
        let neighbors = cartan.neighbors(j);
        match orientation {
            Orientation::Standard => {
                add_arrow(&mut b2, &d, j_plus, j_minus, false);
                for &i in &neighbors {
                    add_arrow(&mut b2, &d, j_minus, i - 1, true);
                    add_arrow(&mut b2, &d, i - 1, j_plus, true);
                }
                if let Some(e) = extra {
                    add_arrow(&mut b2, &d, j_minus, e, false);
                    add_arrow(&mut b2, &d, e, j_plus, false);
                }
            }
            Orientation::Reversed => {
                add_arrow(&mut b2, &d, j_minus, j_plus, false);
                for &i in &neighbors {
                    add_arrow(&mut b2, &d, j_plus, i - 1, true);
                    add_arrow(&mut b2, &d, i - 1, j_minus, true);
                }
                if let Some(e) = extra {
                    add_arrow(&mut b2, &d, j_plus, e, false);
                    add_arrow(&mut b2, &d, e, j_minus, false);
                }
            }
        }
        Ok(QuiverPiece {
            cartan,
            vertices,
            b2,
            left,
            right,
        })
    }

    /// Piece for a signed double-word letter: negative letters use the
    /// standard orientation, positive letters the reversed one.
    pub fn for_signed_letter(
        cartan: Arc<CartanData>,
        letter: i64,
        modified: Option<usize>,
        position: usize,
    ) -> Result<Self> {
        let orientation = if letter < 0 {
            Orientation::Standard
        } else {
            Orientation::Reversed
        };
        QuiverPiece::new(cartan, letter.unsigned_abs() as usize, orientation, modified, position)
    }

    pub fn vertices(&self) -> &[PieceVertex] {
        &self.vertices
    }

    pub fn b2(&self) -> &[Vec<i64>] {
        &self.b2
    }

    pub fn left_boundary(&self) -> &[usize] {
        &self.left
    }

    pub fn right_boundary(&self) -> &[usize] {
        &self.right
    }

    /// Glues `right` to the right of `self`: the right boundary of `self` is
    /// identified row by row with the left boundary of `right`, and exchange
    /// entries of identified vertices are added.
    pub fn amalgamate(&self, right: &QuiverPiece) -> Result<QuiverPiece> {
        if self.cartan != right.cartan {
            return Err(Error::Incompatible(format!(
                "pieces for {} and {}",
                self.cartan, right.cartan
            )));
        }
        let mut vertices = self.vertices.clone();
        let mut map = vec![usize::MAX; right.vertices.len()];
        for (row, &idx) in right.left.iter().enumerate() {
            map[idx] = self.right[row];
        }
        for (idx, v) in right.vertices.iter().enumerate() {
            if map[idx] == usize::MAX {
                map[idx] = vertices.len();
                vertices.push(v.clone());
            }
        }
        let size = vertices.len();
        let mut b2 = vec![vec![0i64; size]; size];
        for (i, row) in self.b2.iter().enumerate() {
            b2[i][..row.len()].copy_from_slice(row);
        }
        for (i, row) in right.b2.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                b2[map[i]][map[j]] += x;
            }
        }
        Ok(QuiverPiece {
            cartan: self.cartan.clone(),
            vertices,
            b2,
            left: self.left.clone(),
            right: right.right.iter().map(|&i| map[i]).collect(),
        })
    }

    // Adds a half-arrow between two edge vertices of the same family.
    fn add_edge_half_arrow(&mut self, from: PieceRole, to: PieceRole) {
        let find = |role| self.vertices.iter().position(|v| v.role == role);
        let (Some(a), Some(b)) = (find(from), find(to)) else {
            return;
        };
        let d: Vec<i64> = self.vertices.iter().map(|v| self.cartan.multiplier(v.row)).collect();
        add_arrow(&mut self.b2, &d, a, b, true);
    }

    /// Finalizes into a seed with canonical vertex order and identifiers.
    fn into_seed(self, space: Space, word: Vec<i64>) -> Seed {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        let sort_key = |i: &usize| {
            let v = &self.vertices[*i];
            match v.role {
                PieceRole::Row => (0, v.position, v.row),
                PieceRole::Circle(k) => (1, k, 0),
                PieceRole::Bullet(k) => (2, k, 0),
            }
        };
        order.sort_by_key(sort_key);

        let mut occurrence = vec![0usize; self.cartan.rank()];
        let mut vertices = Vec::with_capacity(order.len());
        for &i in &order {
            let v = &self.vertices[i];
            let (id, kind, frozen) = match v.role {
                PieceRole::Row => {
                    let occ = occurrence[v.row - 1];
                    occurrence[v.row - 1] += 1;
                    let is_left = self.left[v.row - 1] == i;
                    let is_right = self.right[v.row - 1] == i;
                    let kind = match (is_left, is_right, space) {
                        (true, _, Space::Conf4) => VertexKind::Edge14,
                        (true, _, _) => VertexKind::Edge13,
                        (_, true, _) => VertexKind::Edge23,
                        _ => VertexKind::Face,
                    };
                    (
                        VertexId::Row {
                            row: v.row,
                            occurrence: occ,
                        },
                        kind,
                        is_left || is_right,
                    )
                }
                PieceRole::Circle(k) => (VertexId::Circle(k), VertexKind::Edge12, true),
                PieceRole::Bullet(k) => (VertexId::Bullet(k), VertexKind::Edge34, true),
            };
            vertices.push(Vertex {
                id,
                row: v.row,
                kind,
                frozen,
                multiplier: self.cartan.multiplier(v.row),
                position: v.position,
            });
        }
        let b2 = order
            .iter()
            .map(|&i| order.iter().map(|&j| self.b2[i][j]).collect())
            .collect();
        Seed::assemble(Some(self.cartan), space, word, vertices, b2)
    }
}

fn fold_pieces(pieces: Vec<QuiverPiece>) -> Result<QuiverPiece> {
    let mut iter = pieces.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::Internal("no pieces to amalgamate".into()))?;
    iter.try_fold(first, |acc, p| acc.amalgamate(&p))
}

/// A seed `(I, I₀, B, d)` with `B` stored doubled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    cartan: Option<Arc<CartanData>>,
    space: Space,
    word: Vec<i64>,
    vertices: Vec<Vertex>,
    b2: Vec<Vec<i64>>,
    index: HashMap<VertexId, usize>,
}

impl Seed {
    fn assemble(
        cartan: Option<Arc<CartanData>>,
        space: Space,
        word: Vec<i64>,
        vertices: Vec<Vertex>,
        b2: Vec<Vec<i64>>,
    ) -> Seed {
        let index = vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
        Seed {
            cartan,
            space,
            word,
            vertices,
            b2,
            index,
        }
    }

    /// A seed given by an (undoubled) integer exchange matrix.
    pub fn from_exchange_matrix(b: Vec<Vec<i64>>, multipliers: Vec<i64>, frozen: Vec<bool>) -> Result<Seed> {
        let n = b.len();
        if b.iter().any(|r| r.len() != n) || multipliers.len() != n || frozen.len() != n {
            return Err(Error::Incompatible("exchange matrix shape".into()));
        }
        let vertices = (0..n)
            .map(|i| Vertex {
                id: VertexId::Index(i),
                row: 0,
                kind: if frozen[i] { VertexKind::Edge13 } else { VertexKind::Face },
                frozen: frozen[i],
                multiplier: multipliers[i],
                position: 0,
            })
            .collect();
        let b2 = b.iter().map(|r| r.iter().map(|x| 2 * x).collect()).collect();
        let seed = Seed::assemble(None, Space::Abstract, Vec::new(), vertices, b2);
        if !seed.is_skew_symmetrizable() {
            return Err(Error::Incompatible("matrix is not skew-symmetrizable by d".into()));
        }
        Ok(seed)
    }

    pub fn cartan(&self) -> Option<&Arc<CartanData>> {
        self.cartan.as_ref()
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn word(&self) -> &[i64] {
        &self.word
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn b2(&self) -> &[Vec<i64>] {
        &self.b2
    }

    pub fn b2_entry(&self, i: usize, j: usize) -> i64 {
        self.b2[i][j]
    }

    /// `b_{ij}` when it is an integer.
    pub fn exchange_entry(&self, i: usize, j: usize) -> Option<i64> {
        let x = self.b2[i][j];
        (x % 2 == 0).then_some(x / 2)
    }

    pub fn index_of(&self, id: &VertexId) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn vertex(&self, id: &VertexId) -> Result<&Vertex> {
        Ok(&self.vertices[self.index_of(id)?])
    }

    pub fn frozen_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.frozen).count()
    }

    pub fn unfrozen_ids(&self) -> Vec<VertexId> {
        self.vertices.iter().filter(|v| !v.frozen).map(|v| v.id).collect()
    }

    /// `b_{ij} d_j = -b_{ji} d_i` for all pairs.
    pub fn is_skew_symmetrizable(&self) -> bool {
        let d: Vec<i64> = self.vertices.iter().map(|v| v.multiplier).collect();
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.b2[i][j] * d[j] == -self.b2[j][i] * d[i]))
    }

    /// `b_{ij} ∈ ℤ` unless both vertices are frozen.
    pub fn is_integral_outside_frozen(&self) -> bool {
        (0..self.len()).all(|i| {
            (0..self.len()).all(|j| {
                (self.vertices[i].frozen && self.vertices[j].frozen) || self.b2[i][j] % 2 == 0
            })
        })
    }

    /// Seed mutation at an unfrozen vertex.
    pub fn mutate(&self, k: &VertexId) -> Result<Seed> {
        let k = self.index_of(k)?;
        if self.vertices[k].frozen {
            return Err(Error::FrozenMutation(self.vertices[k].id.to_string()));
        }
        let n = self.len();
        let mut b2 = self.b2.clone();
        for i in 0..n {
            for j in 0..n {
                if i == k || j == k {
                    b2[i][j] = -self.b2[i][j];
                } else {
                    let (bik, bkj) = (self.b2[i][k], self.b2[k][j]);
                    if bik.signum() * bkj.signum() > 0 {
                        // b_ij + |b_ik| b_kj, with b_ik and b_kj integral since k is unfrozen
                        b2[i][j] = bik
                            .abs()
                            .checked_mul(bkj)
                            .and_then(|x| self.b2[i][j].checked_add(x / 2))
                            .ok_or(Error::Overflow)?;
                    }
                }
            }
        }
        let mut out = self.clone();
        out.b2 = b2;
        Ok(out)
    }

    /// Deletes the vertices matching `drop`, keeping the induced submatrix.
    pub fn without(&self, drop: impl Fn(&Vertex) -> bool) -> Seed {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| !drop(&self.vertices[i])).collect();
        let vertices = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let b2 = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.b2[i][j]).collect())
            .collect();
        Seed::assemble(self.cartan.clone(), self.space, self.word.clone(), vertices, b2)
    }

    /// Signed arrow list `(from, to, b2_{to,from})` over pairs with a
    /// positive entry, in vertex order.
    pub fn arrows(&self) -> Vec<(VertexId, VertexId, i64)> {
        let mut out = Vec::new();
        for from in 0..self.len() {
            for to in 0..self.len() {
                if self.b2[to][from] > 0 {
                    out.push((self.vertices[from].id, self.vertices[to].id, self.b2[to][from]));
                }
            }
        }
        out
    }
}

/// Quiver of `B⁻` for a reduced word: `n + K` vertices, `2n` frozen.
pub fn build_borel_quiver(word: &ReducedWord) -> Result<Seed> {
    let cartan = word.cartan_arc().clone();
    let pieces = word
        .letters()
        .iter()
        .enumerate()
        .map(|(l, &j)| QuiverPiece::new(cartan.clone(), j, Orientation::Standard, None, l + 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(fold_pieces(pieces)?.into_seed(Space::Borel, word.to_signed()))
}

/// Quiver of `Conf₃𝒜_G`: modified pieces at the crossing positions `t_k`,
/// plus half-arrows `k° → k'°` for adjacent nodes with `t_{k'} < t_k`.
pub fn build_conf3_quiver(word: &ReducedWord) -> Result<Seed> {
    let cartan = word.cartan_arc().clone();
    let t = word.crossing_indices();
    let modified_at: HashMap<usize, usize> = t.iter().enumerate().map(|(k, &tk)| (tk, k + 1)).collect();
    let pieces = word
        .letters()
        .iter()
        .enumerate()
        .map(|(l, &j)| {
            QuiverPiece::new(
                cartan.clone(),
                j,
                Orientation::Standard,
                modified_at.get(&(l + 1)).copied(),
                l + 1,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut glued = fold_pieces(pieces)?;
    for k in cartan.nodes() {
        for k2 in cartan.neighbors(k) {
            if t[k2 - 1] < t[k - 1] {
                glued.add_edge_half_arrow(PieceRole::Circle(k), PieceRole::Circle(k2));
            }
        }
    }
    Ok(glued.into_seed(Space::Conf3, word.to_signed()))
}

/// Quiver of `Conf₄𝒜_G` for a double word: `n + 2K` row vertices plus `n`
/// vertices `k°` and `n` vertices `k•`. No arrows join the two families.
pub fn build_conf4_quiver(dword: &DoubleWord) -> Result<Seed> {
    let cartan = dword.cartan_arc().clone();
    let (t, r) = dword.double_crossing_indices();
    let circle_at: HashMap<usize, usize> = t.iter().enumerate().map(|(k, &p)| (p, k + 1)).collect();
    let bullet_at: HashMap<usize, usize> = r.iter().enumerate().map(|(k, &p)| (p, k + 1)).collect();
    let pieces = dword
        .letters()
        .iter()
        .enumerate()
        .map(|(l, &x)| {
            let pos = l + 1;
            let modified = match dword.letter(pos).0 {
                Part::U => circle_at.get(&pos).copied(),
                Part::V => bullet_at.get(&pos).copied(),
            };
            QuiverPiece::for_signed_letter(cartan.clone(), x, modified, pos)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut glued = fold_pieces(pieces)?;
    for k in cartan.nodes() {
        for k2 in cartan.neighbors(k) {
            if t[k2 - 1] < t[k - 1] {
                glued.add_edge_half_arrow(PieceRole::Circle(k), PieceRole::Circle(k2));
            }
            if r[k - 1] < r[k2 - 1] {
                glued.add_edge_half_arrow(PieceRole::Bullet(k), PieceRole::Bullet(k2));
            }
        }
    }
    Ok(glued.into_seed(Space::Conf4, dword.letters().to_vec()))
}
