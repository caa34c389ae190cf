//! Pure states of a finite-dimensional Hilbert space.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// How far from 1 the norm of an accepted state vector may stray.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// A normalized vector in `C^d`.
///
/// Construction enforces `d >= 1` and unit norm (within [`NORM_TOLERANCE`]),
/// so downstream code can treat normalization as given.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: DVector<Complex64>,
}

impl QuantumState {
    /// Wraps an already-normalized amplitude vector.
    ///
    /// Fails with [`Error::DimensionTooSmall`] on an empty vector and
    /// [`Error::NotAProbabilityVector`] when the squared amplitudes do not
    /// sum to 1 within [`NORM_TOLERANCE`].
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionTooSmall { dim: 0, min: 1 });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotAProbabilityVector {
                reason: format!("squared amplitudes sum to {norm_sq}, expected 1"),
            });
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes an arbitrary nonzero vector and wraps it.
    pub fn normalized(amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionTooSmall { dim: 0, min: 1 });
        }
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotAProbabilityVector {
                reason: format!("vector norm is {norm}, cannot normalize"),
            });
        }
        Ok(Self {
            amplitudes: amplitudes / Complex64::new(norm, 0.0),
        })
    }

    /// The computational basis vector `|index>` in dimension `dim`.
    pub fn basis_vector(dim: usize, index: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionTooSmall { dim: 0, min: 1 });
        }
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, len: dim });
        }
        let mut amplitudes = DVector::zeros(dim);
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    /// The uniform superposition `(1/sqrt(d)) sum_i |i>`.
    pub fn uniform(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionTooSmall { dim: 0, min: 1 });
        }
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self {
            amplitudes: DVector::from_element(dim, amp),
        })
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Raw amplitudes.
    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Inner product `<self|other>` (conjugate-linear in `self`).
    pub fn overlap(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Overlap probability `|<self|other>|^2`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        Ok(self.overlap(other)?.norm_sqr())
    }
}
