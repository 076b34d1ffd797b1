//! Exact analysis of finite-dimensional Lie algebras given by structure constants.

pub mod algebra;
pub mod arith;
pub mod error;
pub mod families;
pub mod oracle;
pub mod quat;
pub mod search;
pub mod spectral;

pub use algebra::{LieAlgebra, Subspace};
pub use arith::{FieldSpec, Mat, Scalar, TriState, UPoly};
pub use error::{LieError, Result};
pub use search::SearchBudget;
