//! Decomposition of binary linear codes into 2-sums and 3-sums, and the
//! algorithms that run on top of it: maximum-likelihood decoding along a
//! decomposition tree, minimum distance, excluded-minor classification and
//! exact LP decoding over the fundamental polytope.
//!
//! Library coordinates are 0-based. Every text format, JSON report and
//! error message uses 1-based coordinates.

pub mod classify;
pub mod connectivity;
pub mod dectree;
pub mod gf2core;
pub mod graphic;
pub mod limits;
pub mod lpgeom;
pub mod mldecode;
pub mod sums;

pub use gf2core::{BitMatrix, BitVec, CodeError, LinearCode};
pub use limits::Limits;
