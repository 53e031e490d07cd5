//! Dense multivector kernel for R(4,1): basis conventions, products,
//! involutions, grade selection and the buffer pool.

pub mod blade;
mod multivector;
mod pool;
mod workspace;

use thiserror::Error;

pub use multivector::{gp_dense_into, gp_into, reverse_sign, Coeffs, Multivector};
pub use pool::{MultivectorPool, PoolBuffer, PoolError, DEFAULT_CAPACITY, DEFAULT_GROW_INCREMENT};
pub use workspace::{HeapWorkspace, StackBuf, StackWorkspace, Support, Workspace};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("grade {0} is outside 0..=5")]
    GradeOutOfRange(usize),
    #[error("expected 32 coefficients, got {0}")]
    CoefficientCount(usize),
}
