//! Element-wise spectral data, rank, and the anisotropy and regularity deciders.

mod deciders;
mod element;
mod rank;

pub use deciders::{
    anisotropy_status, find_in, quaternion_form, regularity_status, vector_height, AnisotropyCertificate,
    AnisotropyStatus, AnisotropyWitness, QuaternionForm, RegularityCertificate, RegularityStatus,
    RegularityWitness,
};
pub use element::{cartan_from_regular, element_report, fitting, fitting0_dim, ElementReport};
pub use rank::{generic_charpoly, rank, rank_with_bound, RankCertificate, DEFAULT_RANK_DIM_BOUND};
