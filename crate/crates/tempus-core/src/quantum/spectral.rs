//! Spectral decomposition of Hermitian operators and exact time evolution.
//!
//! Diagonalizing once and evolving in the eigenbasis turns `exp(-iHt)` into
//! a phase rotation, so states can be propagated to arbitrary times at
//! `O(d^2)` cost with no step-size error.  All routines here are strictly
//! deterministic: the same operator always yields bitwise-identical
//! eigendata, independent of thread count.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::operator::HermitianOperator;
use crate::quantum::state::QuantumState;

/// Eigenvalues and eigenvectors of a Hermitian operator.
///
/// Invariants established at construction:
/// * eigenvalues are sorted ascending,
/// * eigenvector column `n` corresponds to eigenvalue `n`,
/// * the eigenvector matrix is unitary to working precision.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<Complex64>,
}

/// Mean, width, and characteristic decay time of an energy distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyStatistics {
    /// First moment of the energy distribution.
    pub mean: f64,
    /// Standard deviation of the energy distribution.
    pub width: f64,
    /// `1 / width`: the time scale on which superposed energy eigenstates
    /// dephase.  `+inf` when the width vanishes.
    pub boltzmann_time: f64,
}

impl EnergyStatistics {
    /// True when the state occupies a single energy (no dephasing ever).
    pub fn has_zero_width(&self) -> bool {
        self.width == 0.0
    }
}

/// Full eigendecomposition of `h`, eigenvalues sorted ascending.
///
/// The input is symmetrized as `(H + H^dagger) / 2` before the solve; the
/// constructor of [`HermitianOperator`] guarantees this perturbs entries by
/// at most the Hermiticity tolerance, and it hands the backend an exactly
/// Hermitian matrix.
pub fn diagonalize(h: &HermitianOperator) -> SpectralDecomposition {
    let dim = h.dim();
    let mut sym = h.entries().clone();
    for i in 0..dim {
        sym[(i, i)] = Complex64::new(sym[(i, i)].re, 0.0);
        for j in (i + 1)..dim {
            let avg = (sym[(i, j)] + sym[(j, i)].conj()) * 0.5;
            sym[(i, j)] = avg;
            sym[(j, i)] = avg.conj();
        }
    }
    let eig = nalgebra::SymmetricEigen::new(sym);

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let eigenvalues = DVector::from_iterator(dim, order.iter().map(|&i| eig.eigenvalues[i]));
    let eigenvectors = eig.eigenvectors.select_columns(order.iter());

    SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    }
}

impl SpectralDecomposition {
    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Sorted eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        self.eigenvalues.as_slice()
    }

    /// Unitary whose column `n` is the eigenvector for eigenvalue `n`.
    pub fn eigenvectors(&self) -> &DMatrix<Complex64> {
        &self.eigenvectors
    }

    /// Coefficients of `psi` in the eigenbasis: `c = U^dagger psi`.
    pub fn to_eigenbasis(&self, psi: &QuantumState) -> Result<DVector<Complex64>> {
        self.check_dim(psi.dim())?;
        Ok(self.eigenvectors.ad_mul(psi.amplitudes()))
    }

    /// Propagates `psi` by `exp(-iHt)` (with `hbar = 1`).
    ///
    /// Negative `t` runs the evolution backwards; `t = 0` is the identity up
    /// to round-off.
    pub fn evolve(&self, psi: &QuantumState, t: f64) -> Result<QuantumState> {
        let mut c = self.to_eigenbasis(psi)?;
        for (n, amp) in c.iter_mut().enumerate() {
            *amp *= Complex64::cis(-self.eigenvalues[n] * t);
        }
        // U is unitary to ~1e-15, so the norm survives within the state
        // type's tolerance and re-wrapping re-checks it for free.
        QuantumState::new(&self.eigenvectors * c)
    }

    /// Occupation probabilities `p_n = |<n|psi>|^2` of the eigenlevels.
    ///
    /// By unitarity these sum to 1 to working precision; they are returned
    /// as computed, without renormalization.
    pub fn occupations(&self, psi: &QuantumState) -> Result<Vec<f64>> {
        let c = self.to_eigenbasis(psi)?;
        Ok(c.iter().map(|a| a.norm_sqr()).collect())
    }

    /// Mean energy, energy width, and dephasing time of `psi`.
    ///
    /// The variance is accumulated around the mean (two-pass form) to avoid
    /// the cancellation that the raw moment difference suffers when the
    /// spectrum sits far from zero.
    pub fn energy_statistics(&self, psi: &QuantumState) -> Result<EnergyStatistics> {
        let p = self.occupations(psi)?;
        self.statistics_from_occupations(&p)
    }

    /// Same statistics computed from already-known occupations.
    pub fn statistics_from_occupations(&self, p: &[f64]) -> Result<EnergyStatistics> {
        if p.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: p.len(),
                right: self.dim(),
            });
        }
        let mean: f64 = p
            .iter()
            .zip(self.eigenvalues.iter())
            .map(|(&p, &e)| p * e)
            .sum();
        let variance: f64 = p
            .iter()
            .zip(self.eigenvalues.iter())
            .map(|(&p, &e)| p * (e - mean) * (e - mean))
            .sum::<f64>()
            .max(0.0);
        let width = variance.sqrt();
        Ok(EnergyStatistics {
            mean,
            width,
            boltzmann_time: 1.0 / width,
        })
    }

    /// Rebuilds `U diag(e) U^dagger`; used to bound the decomposition error.
    pub fn reconstruction(&self) -> DMatrix<Complex64> {
        let mut scaled = self.eigenvectors.clone();
        for n in 0..self.dim() {
            let e = Complex64::new(self.eigenvalues[n], 0.0);
            scaled.column_mut(n).iter_mut().for_each(|z| *z *= e);
        }
        &scaled * self.eigenvectors.adjoint()
    }

    /// Largest entry of `U^dagger U - I`: how far the eigenbasis is from
    /// exactly unitary.
    pub fn unitarity_defect(&self) -> f64 {
        let gram = self.eigenvectors.ad_mul(&self.eigenvectors);
        let dim = self.dim();
        let mut defect = 0.0_f64;
        for i in 0..dim {
            for j in 0..dim {
                let expected = if i == j {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                defect = defect.max((gram[(i, j)] - expected).norm());
            }
        }
        defect
    }

    /// Conjugates an eigenbasis matrix back to the original basis:
    /// `U M U^dagger`.
    pub(crate) fn conjugate_to_original_basis(
        &self,
        m: &DMatrix<Complex64>,
    ) -> DMatrix<Complex64> {
        &(&self.eigenvectors * m) * self.eigenvectors.adjoint()
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if self.dim() != other {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other,
            });
        }
        Ok(())
    }
}
