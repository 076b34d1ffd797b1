//! Exact scalars, matrices and polynomials over `Q` and `F_p`.

pub mod charpoly;
pub mod factor;
pub mod field;
pub mod mat;
pub mod mpoly;
pub mod numtheory;
pub mod tristate;
pub mod upoly;

pub use charpoly::{berkowitz, charpoly, charpoly_generic, minpoly, CommRing, MinPoly};
pub use factor::{
    factor_fp, factorization, irreducibility, irreducibility_with, CertifiedFactor,
    IrreducibilityConfig, IrreducibilityStatus, IrreducibleCertificate,
};
pub use field::{q, qf, FieldSpec, Scalar};
pub use mat::{dot, qvec, unit_vec, vec_add, vec_is_zero, vec_scale, vec_sub, zero_vec, Mat, RowReduction, Vector};
pub use mpoly::MPoly;
pub use tristate::{Inconclusive, Never, TriState};
pub use upoly::UPoly;
