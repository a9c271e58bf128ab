//! Characteristic polynomials of F_q-representable matroids and Tait
//! colorings of cubic planar graphs, computed as sums of quadratic-character
//! values over everywhere-nonzero weight vectors, together with the
//! brute-force oracles they are checked against.

pub mod alphasum;
pub mod error;
pub mod fqlin;
pub mod gf;
pub mod instances;
pub mod io;
pub mod matroid;
pub mod selftest;
pub mod shard;
pub mod tait;

pub use error::{Error, Result};
pub use fqlin::{FqMatrix, RankSign};
pub use gf::{CyclotomicInt, FieldCtx, FqElem};
pub use matroid::{AlphaVector, RepresentedMatroid};
pub use alphasum::{AlphaSum, AlphaTerm, EnumOptions, TermTally};
pub use tait::{CubicPlanarGraph, TaitSum};
