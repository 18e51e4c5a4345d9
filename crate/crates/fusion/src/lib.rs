//! Fusion and Grothendieck fusion rings of the N=2 minimal models.
//!
//! Every rule is additive in (i, p): a product of labels at (i, p) and
//! (i′, p′) only produces labels at (i + i′ + 2a, p + p′ + at) for a ∈ {−1, 0, 1}.

mod coeff;
mod exact;
mod groth;
mod ring;
mod unitary;

use catalog::{CatalogError, GrothVector};

pub use coeff::{fusion_coeff, FusionCoeffQuery};
pub use exact::{fuse_exact, staggered_rep};
pub use groth::{groth_fuse_n2, groth_fuse_sl2, push_sl2};
pub use ring::{ring_check, ring_check_windowed, sample_labels};
pub use unitary::fuse_unitary;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FusionError {
    #[error("label out of range: {0}")]
    LabelOutOfRange(String),
    #[error("no known exact fusion rule: {0}")]
    NoKnownExactRule(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// A fusion product. When `exact` is present its composition factors sum to
/// `grothendieck`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionResult {
    pub exact: Option<GrothVector>,
    pub grothendieck: GrothVector,
    pub conjectural: bool,
}

impl FusionResult {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "exact": self.exact.as_ref().map(|g| g.to_json_value()),
            "grothendieck": self.grothendieck.to_json_value(),
            "conjectural": self.conjectural,
        })
    }
}
