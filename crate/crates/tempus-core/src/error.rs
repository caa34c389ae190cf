//! Error type shared by every module in the crate.
//!
//! Each variant captures enough context to make the failure actionable
//! without holding references into caller data, so errors can cross thread
//! and process boundaries freely.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building operators, running
/// evolutions, or evaluating clock bounds.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matrix handed in as Hermitian failed the symmetry check.
    #[error(
        "matrix is not Hermitian: max |H[i,j] - conj(H[j,i])| = {max_asymmetry:.3e} \
         exceeds {tolerance:.1e} relative to the largest entry"
    )]
    NonHermitianInput {
        /// Largest observed deviation from Hermitian symmetry.
        max_asymmetry: f64,
        /// Absolute tolerance the deviation was compared against.
        tolerance: f64,
    },

    /// Two objects that must share a dimension do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A requested dense matrix would exceed the configured memory cap.
    #[error("dimension {dim} exceeds the dense-storage cap of {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    /// A builder needs a minimum dimension to produce anything meaningful.
    #[error("dimension {dim} is below the minimum of {min}")]
    DimensionTooSmall { dim: usize, min: usize },

    /// A matrix fails one of the density-matrix axioms.
    #[error("not a density matrix: {reason}")]
    NotADensityMatrix { reason: String },

    /// A vector fails to be a probability distribution.
    #[error("not a probability vector: {reason}")]
    NotAProbabilityVector { reason: String },

    /// A time argument that must be strictly positive was not.
    #[error("time must be strictly positive, got {value}")]
    NonPositiveTime { value: f64 },

    /// A generic scalar input that must be strictly positive was not.
    #[error("{name} must be strictly positive, got {value}")]
    NonPositiveInput { name: &'static str, value: f64 },

    /// A mass must be strictly positive (gravitational formulas diverge
    /// or lose meaning otherwise).
    #[error("mass must be strictly positive, got {value} kg")]
    NonPositiveMass { value: f64 },

    /// A fit or statistic was requested over too few samples.
    #[error("{found} samples inside the window, need at least {required}")]
    InsufficientSamples { found: usize, required: usize },

    /// An index addressed past the end of a finite basis.
    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    /// A scalar argument fell outside its documented interval.
    #[error("{name} = {value} lies outside ({lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// A curve never crosses the level needed for interpolation on both
    /// sides of its peak.
    #[error("curve does not bracket the half level on both sides of the peak")]
    NotBracketed,

    /// The energy distribution has zero width, so every width-derived
    /// quantity (curvature, characteristic decay time) is degenerate.
    #[error("energy distribution has zero width")]
    ZeroWidth,

    /// A time grid violated its ordering or positivity contract.
    #[error("invalid time grid: {reason}")]
    InvalidTimeGrid { reason: String },

    /// A field required by the requested bound is absent from the budget.
    #[error("budget is missing the `{field}` field required by this bound")]
    MissingField { field: &'static str },

    /// A value that must be a finite float was NaN or infinite.
    #[error("{name} contains a non-finite value")]
    NonFinite { name: &'static str },

    /// A runtime self-check failed.  This indicates a numerical breakdown
    /// (or a bug), never a caller mistake.
    #[error("internal invariant violated: {what}")]
    InvariantViolation { what: String },
}
