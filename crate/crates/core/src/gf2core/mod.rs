//! Bit-packed GF(2) linear algebra and binary linear codes.

mod bits;
mod code;
mod io;

pub use bits::{rank_u64, BitMatrix, BitVec};
pub use code::{complement, LinearCode};
pub(crate) use code::{check_permutation, checked_set};
pub use io::{format_code, parse_code, parse_word_list};

/// Errors raised by code construction, I/O and the minor operations.
///
/// Coordinates in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("coordinate {coord} out of range for length {n}")]
    CoordinateOutOfRange { coord: usize, n: usize },
    #[error("coordinate {0} listed twice")]
    DuplicateCoordinate(usize),
    #[error("coordinate {0} is both punctured and shortened")]
    OverlappingSets(usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("enumerating 2^{dimension} codewords exceeds the bound of {bound} words")]
    EnumerationBound { dimension: usize, bound: u64 },
    #[error("the zero code has no nonzero codeword")]
    ZeroCode,
}
