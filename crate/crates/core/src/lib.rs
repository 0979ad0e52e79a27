//! Cluster seeds attached to reduced words for the longest Weyl element.
//!
//! The crate builds the quivers of the Borel subgroup `B⁻`, of `Conf₃𝒜_G`
//! and of `Conf₄𝒜_G`, attaches weight gradings to every cluster variable,
//! checks the recursive and face weight identities exactly, and realizes the
//! type-A case with exact rational matrices (generalized minors, exchange
//! relations and the twist factorization).

pub mod error;
pub mod export;
pub mod grading;
pub mod matrix;
pub mod quiver;
pub mod realization;
pub mod root_system;
pub mod word;

pub use error::{Error, Result};
pub use root_system::{CartanData, DynkinType, RootVector, Weight, WeylVector};
pub use word::{DoubleWord, Part, ReducedWord};
pub use quiver::{QuiverPiece, Seed, Space, Vertex, VertexId, VertexKind};
pub use grading::{Grading, Gradings, Report};
pub use matrix::{Rational, RationalMatrix};
