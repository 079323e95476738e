//! Dense complex linear algebra.
//!
//! Everything here works on small dense matrices (tens of rows at most) and
//! doubles as the classical oracle for the quantum-inspired solvers built on
//! top. Two pairings coexist and are kept strictly apart:
//!
//! * the Hermitian inner product `⟨u, v⟩ = Σ conj(uᵢ) vᵢ`, and
//! * the bilinear c-product `(u | v) = Σ uᵢ vᵢ` (no conjugation), which is the
//!   natural pairing for complex-symmetric operators.

mod eigen;
mod lu;
mod matrix;
mod products;

pub use eigen::{dense_eigen, generalized_eigen, hermitian_eigen, schur, EigenDecomposition, HermitianEigen, Schur};
pub use lu::{inverse, linear_solve, linear_solve_with, LuFactors};
pub use matrix::{ComplexMatrix, ComplexVector, MatrixRecord};
pub use products::{
    c_normalize, c_product, c_rayleigh_quotient, gram_schmidt, gram_schmidt_with, hermitian_inner, hermitian_norm,
    hermitian_normalize, GramSchmidt, InnerProduct,
};

pub(crate) use eigen::spectral_order;
pub(crate) use matrix::{ONE, ZERO};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("empty input")]
    Empty,
    #[error("matrix is singular (zero pivot at column {column})")]
    Singular { column: usize },
    #[error("matrix is ill-conditioned (condition estimate {condition:.3e})")]
    IllConditioned { condition: f64 },
    #[error("eigenvalue iteration failed to converge after {iterations} sweeps")]
    NoConvergence { iterations: usize },
    #[error("quasi-null vector: |c-norm²| = {c_norm_sq:.3e} (exceptional point?)")]
    QuasiNull { c_norm_sq: f64 },
    #[error("redundant basis: overlap matrix is singular")]
    RedundantBasis,
    #[error("non-finite value produced")]
    NonFinite,
}

/// Numerical thresholds used across the module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative residual norm below which a Gram-Schmidt candidate counts as
    /// linearly dependent and is dropped.
    pub dependence: f64,
    /// `|(v|v)|` below this (for unit-Hermitian-norm `v`) is a quasi-null vector.
    pub quasi_null: f64,
    /// Largest accepted 1-norm condition estimate in `linear_solve`.
    pub max_condition: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { dependence: 1e-10, quasi_null: 1e-10, max_condition: 1e12 }
    }
}

pub(crate) fn require_square(m: &ComplexMatrix) -> Result<usize, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if m.rows() == 0 {
        return Err(LinalgError::Empty);
    }
    Ok(m.rows())
}
