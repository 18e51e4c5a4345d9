//! Characters of the sl2, ghost, Heisenberg and N=2 modules of the coset
//! construction, computed along several independent routes, together with the
//! verifiers that compare those routes.
//!
//! All series are exact truncations: every coefficient with q-exponent at or
//! below the requested order is final.

mod magic;
mod n2;
mod sl2;
mod util;
mod verify;

pub use magic::{magic_check, MagicIdentity, MagicSample};
pub use n2::{
    char_fock, char_ghost, char_n2, l_char_primed, sflow_transform, supercharacter,
    transport_source_order, Method,
};
pub use sl2::{char_sl2, char_sl2_window, kernel_inverse_check, Sl2Engine};
pub use verify::{branch_verify, series_report, ses_char_check};

use catalog::CatalogError;
use series_core::{DeltaChar, Series2, SeriesError};
use special_functions::SpecialError;

/// Failures of character computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharError {
    #[error("resolution character diverges: {0}")]
    DivergentResolution(String),
    #[error("regime or method not valid here: {0}")]
    RegimeMismatch(String),
    #[error("sample outside the identity's region: {0}")]
    RegimeViolation(String),
    #[error("label out of range: {0}")]
    LabelOutOfRange(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Expansion region for 1/ϑ₁(w²).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnnulusRegime {
    /// |q| < |w|² < 1.
    InnerAnnulus,
    /// 1 < |w|² < |q|⁻¹.
    OuterAnnulus,
}

/// An sl2 character: an ordinary series, or a delta comb for relaxed modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharKind {
    OrdinarySeries(Series2),
    DeltaDistribution(DeltaChar),
}
