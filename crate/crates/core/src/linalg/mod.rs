//! Exact integer and rational linear algebra.

mod matrix;
pub mod rational;
mod smith;
mod solve;

pub use matrix::IntMatrix;
pub(crate) use matrix::to_i64;
pub use smith::{hermite_rows, integer_solve, kernel_lattice, rank, smith_normal_form, spans_full_lattice, Smith};
pub(crate) use solve::dot;
pub use solve::{minimal_nonneg_solutions, nonneg_integer_solve, positive_functional, NonnegSolve, DEFAULT_SOLVE_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch { expected: (usize, usize), found: (usize, usize) },
    #[error("ragged rows")]
    Ragged,
    #[error("matrix is not square")]
    NotSquare,
    #[error("entry does not fit in 64 bits")]
    Overflow,
}
