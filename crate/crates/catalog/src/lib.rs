//! Label algebra of the N=2 minimal models M(u, v) and their coset ingredients.
//!
//! Coset labels C^{[i]}_{p} carry the ghost sector `i` (mod 4), the Heisenberg
//! momentum `p` and the sl2 data `(r, s)`. Everything here is exact label
//! arithmetic; no characters are computed.

mod dictionary;
mod groth;
mod label;
mod model;
mod report;
mod unitary;

pub use dictionary::{
    dictionary_nonunitary, dictionary_unitary, hw_data, weights, HighestWeightData, Sector,
};
pub use groth::{
    e_class, groth_decompose, is_highest_weight, iso_rep, GrothVector,
};
pub use label::{Algebra, Family, ModuleLabel, Parity};
pub use model::MinimalModel;
pub use report::Report;
pub use unitary::{
    canonical_label, coset_of_sl2, kac_table, orbits, twist_label, unitary_labels, KacCell, KacTable,
    Orbit,
};

/// Failures of label validation and label arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("label out of range: {0}")]
    LabelOutOfRange(String),
    #[error("momentum lattice mismatch: {0}")]
    ParityMismatch(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
