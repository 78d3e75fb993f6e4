//! Exact scalars and dense linear algebra over ℚ and 𝔽ₚ.

mod matrix;
mod scalar;
mod subspace;
pub mod vector;

pub use matrix::Matrix;
pub use scalar::{Field, Modulus, Scalar};
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not an odd prime below 2^31 (characteristic 2 is not supported)")]
    InvalidField(u32),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("cannot parse scalar literal {0:?}")]
    ParseLiteral(String),
    #[error("division by zero")]
    DivisionByZero,
}
