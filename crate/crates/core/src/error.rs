//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid label: digit {digit} at party {party} out of range for dimension {dim}")]
    InvalidLabel {
        party: usize,
        digit: usize,
        dim: usize,
    },

    #[error("invalid party subset: {0}")]
    InvalidSubset(String),

    #[error("invalid arity: {0}")]
    InvalidArity(String),

    #[error("dimension mismatch: {0}")]
    DimsMismatch(String),

    #[error("state is not normalized: |norm^2 - 1| = {0:.3e}")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian: max |A - A^dag| = {0:.3e}")]
    NotHermitian(f64),

    #[error("matrix trace differs from 1: |tr - 1| = {0:.3e}")]
    BadTrace(f64),

    #[error("matrix is not positive semidefinite: min eigenvalue = {0:.3e}")]
    NotPositive(f64),

    #[error("matrix factor is not unitary: max |U^dag U - I| = {0:.3e}")]
    NotUnitary(f64),

    #[error("unsupported witness: labels agree on party {0}")]
    UnsupportedWitness(usize),

    #[error("wrong parameter count: expected {expected}, got {got}")]
    ParamCount { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("state file error: {0}")]
    StateFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
