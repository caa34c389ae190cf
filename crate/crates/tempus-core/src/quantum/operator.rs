//! Hermitian operators with validated symmetry.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance for the Hermiticity check: the largest entry-wise
/// asymmetry `|H[i,j] - conj(H[j,i])|` may not exceed this fraction of the
/// largest entry magnitude.
pub const HERMITICITY_TOLERANCE: f64 = 1e-12;

/// A square complex matrix verified to be Hermitian at construction.
///
/// Holding the check in the constructor means every downstream consumer
/// (spectral decompositions in particular) can rely on real eigenvalues and
/// a unitary eigenbasis without re-validating.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    entries: DMatrix<Complex64>,
}

impl HermitianOperator {
    /// Validates squareness and Hermitian symmetry, then wraps the matrix.
    ///
    /// The asymmetry tolerance scales with the largest entry so that the
    /// check is invariant under `H -> c H`.
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                left: entries.nrows(),
                right: entries.ncols(),
            });
        }
        if entries.nrows() == 0 {
            return Err(Error::DimensionTooSmall { dim: 0, min: 1 });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                name: "operator entries",
            });
        }
        let scale = entries
            .iter()
            .map(|z| z.norm())
            .fold(0.0_f64, f64::max)
            .max(1e-300);
        let mut max_asymmetry = 0.0_f64;
        for i in 0..entries.nrows() {
            for j in i..entries.ncols() {
                let asym = (entries[(i, j)] - entries[(j, i)].conj()).norm();
                max_asymmetry = max_asymmetry.max(asym);
            }
        }
        let tolerance = HERMITICITY_TOLERANCE * scale;
        if !max_asymmetry.is_finite() || max_asymmetry > tolerance {
            return Err(Error::NonHermitianInput {
                max_asymmetry,
                tolerance,
            });
        }
        Ok(Self { entries })
    }

    /// A diagonal operator with the given real spectrum.
    pub fn from_real_diagonal(diagonal: &[f64]) -> Result<Self> {
        if diagonal.is_empty() {
            return Err(Error::DimensionTooSmall { dim: 0, min: 1 });
        }
        let dim = diagonal.len();
        let mut entries = DMatrix::zeros(dim, dim);
        for (i, &d) in diagonal.iter().enumerate() {
            entries[(i, i)] = Complex64::new(d, 0.0);
        }
        Ok(Self { entries })
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Raw entries.
    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// The operator scaled by a real factor (still Hermitian by construction).
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            entries: &self.entries * Complex64::new(factor, 0.0),
        }
    }

    /// Largest entry magnitude; the natural scale for residual tolerances.
    pub fn max_entry(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}
