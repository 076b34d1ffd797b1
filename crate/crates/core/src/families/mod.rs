//! Named algebras, the depth-two families and the classification-based deciders.

mod chain;
mod depth2;
mod instance;
mod mna;
mod probe;
mod prototypes;

pub use chain::{invariant_chain_bound, ChainBound};
pub use depth2::{depth2_status, is_deep_subalgebra, Depth2Certificate, Depth2Status, Depth2Witness};
pub use instance::{
    case_i_ii, case_iii, case_iv, case_v, prototype_instance, FamilyInstance, FamilyParams, FamilyTag, Validation,
    ValidationCertificate, ValidationWitness, DEFAULT_SAMPLES,
};
pub use mna::{mna_status, solvable_mna_status, MnaCertificate, MnaStatus, MnaWitness};
pub use prototypes::{aff1, heisenberg, prototypes, sl2, Prototypes};
