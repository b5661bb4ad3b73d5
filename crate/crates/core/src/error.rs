use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A ring window whose cell count is not a multiple of the spatial
    /// period of every field layer cannot carry the walk exactly.
    #[error("ring of {cells} cells is incompatible with field period {period}")]
    IncompatibleRing { cells: usize, period: u64 },

    /// Momentum-space constructions require a translation-invariant walk.
    #[error("walk is not translation invariant: {0}")]
    NotTranslationInvariant(String),

    /// The coin cannot be written as sigma_1 * Theta(alpha, rho) with
    /// (alpha, rho) on the complex 3-sphere.
    #[error("no Verblunsky pair represents this operator (defect {defect:.3e})")]
    NotRepresentable { defect: f64 },

    /// Construction input violates a normalization invariant.
    #[error("not normalized: {0}")]
    NotNormalized(String),

    /// A 2x2 matrix fails the unitarity tolerance.
    #[error("matrix is not unitary (defect {defect:.3e})")]
    NotUnitary { defect: f64 },

    /// Malformed field fraction (m = 0, overflow, ...).
    #[error("invalid field: {0}")]
    InvalidField(String),
}

pub type Result<T> = std::result::Result<T, Error>;
