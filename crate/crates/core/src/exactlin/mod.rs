//! Exact rational linear algebra, rational univariate polynomials and the
//! floating-point root finder that backs them.

pub mod complex;
pub mod matrix;
pub mod rat;
pub mod roots;
pub mod upoly;

pub use matrix::{RatMatrix, Rref};
pub use rat::{format_rat, int, parse_rat, rat, Rat};
pub use roots::{poly_roots, CxApprox, RootPolicy};
pub use upoly::UPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("linear system has no solution")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
    #[error("polynomial is numerically zero")]
    ZeroPolynomial,
    #[error("eigensolver did not converge")]
    NoConvergence,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Free-function forms of the matrix operations.
pub fn rref(a: &RatMatrix) -> Rref {
    a.rref()
}

pub fn kernel_basis(a: &RatMatrix) -> Vec<Vec<Rat>> {
    a.kernel_basis()
}

pub fn solve_exact(a: &RatMatrix, b: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
    a.solve_exact(b)
}
