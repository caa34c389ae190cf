//! Density matrices and the von Neumann entropy.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::state::QuantumState;

/// Absolute tolerance on Hermitian symmetry of a density matrix.  Entries
/// of a unit-trace positive matrix are bounded by 1, so an absolute
/// threshold is the right scale here.
pub const HERMITICITY_TOLERANCE: f64 = 1e-10;

/// Absolute tolerance on `|tr(rho) - 1|`.
pub const TRACE_TOLERANCE: f64 = 1e-10;

/// Eigenvalues in `[-EIGENVALUE_CLAMP, 0)` are treated as round-off noise
/// on a semi-definite spectrum and clamped to zero; anything more negative
/// is a genuine positivity failure.
pub const EIGENVALUE_CLAMP: f64 = 1e-10;

/// A unit-trace Hermitian matrix.
///
/// Hermiticity and trace are validated eagerly at construction; positive
/// semi-definiteness is validated wherever eigenvalues are actually
/// computed (notably in [`von_neumann_entropy`]), since checking it costs
/// a full spectral decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates squareness, Hermiticity, and unit trace, then wraps.
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
                name: "density matrix entries",
            });
        }
        let mut max_asymmetry = 0.0_f64;
        for i in 0..entries.nrows() {
            for j in i..entries.ncols() {
                let asym = (entries[(i, j)] - entries[(j, i)].conj()).norm();
                max_asymmetry = max_asymmetry.max(asym);
            }
        }
        if !max_asymmetry.is_finite() || max_asymmetry > HERMITICITY_TOLERANCE {
            return Err(Error::NotADensityMatrix {
                reason: format!("Hermiticity violated by {max_asymmetry:.3e}"),
            });
        }
        let trace: Complex64 = entries.diagonal().iter().sum();
        if (trace.re - 1.0).abs() > TRACE_TOLERANCE || trace.im.abs() > TRACE_TOLERANCE {
            return Err(Error::NotADensityMatrix {
                reason: format!("trace is {} + {}i, expected 1", trace.re, trace.im),
            });
        }
        Ok(Self { entries })
    }

    /// The projector `|psi><psi|` onto a pure state.
    pub fn pure(psi: &QuantumState) -> Self {
        let amps = psi.amplitudes();
        let dim = psi.dim();
        let mut entries = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            // The diagonal is written as a pure real |a_i|^2 so that no
            // spurious imaginary dust survives the outer product.
            entries[(i, i)] = Complex64::new(amps[i].norm_sqr(), 0.0);
            for j in (i + 1)..dim {
                let v = amps[i] * amps[j].conj();
                entries[(i, j)] = v;
                entries[(j, i)] = v.conj();
            }
        }
        Self { entries }
    }

    /// The diagonal (classical) density matrix of a probability vector.
    pub fn from_probabilities(p: &[f64]) -> Result<Self> {
        validate_probabilities(p)?;
        let dim = p.len();
        let mut entries = DMatrix::zeros(dim, dim);
        for (i, &pi) in p.iter().enumerate() {
            entries[(i, i)] = Complex64::new(pi, 0.0);
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

    /// The diagonal as real probabilities (imaginary parts are zero by the
    /// Hermiticity check up to tolerance).
    pub fn diagonal_probabilities(&self) -> Vec<f64> {
        self.entries.diagonal().iter().map(|z| z.re).collect()
    }

    /// Eigenvalues sorted ascending (values-only solve, no eigenvectors).
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut vals: Vec<f64> = self
            .entries
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        vals.sort_by(f64::total_cmp);
        vals
    }

    /// Wraps a matrix that is Hermitian and unit-trace **by construction**
    /// (e.g. assembled from an outer product with an explicitly real
    /// diagonal).  Debug builds re-validate.
    pub(crate) fn from_trusted(entries: DMatrix<Complex64>) -> Self {
        debug_assert!(Self::new(entries.clone()).is_ok());
        Self { entries }
    }
}

/// Checks that `p` is a probability vector: entries in `[-1e-12, 1]` with
/// negatives being round-off noise, summing to 1 within `1e-10`.
pub fn validate_probabilities(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::NotAProbabilityVector {
            reason: "empty vector".into(),
        });
    }
    for (i, &pi) in p.iter().enumerate() {
        if !pi.is_finite() || pi < -1e-12 || pi > 1.0 + 1e-12 {
            return Err(Error::NotAProbabilityVector {
                reason: format!("entry {i} is {pi}"),
            });
        }
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > TRACE_TOLERANCE {
        return Err(Error::NotAProbabilityVector {
            reason: format!("entries sum to {sum}, expected 1"),
        });
    }
    Ok(())
}

/// Shannon entropy `-sum_i p_i ln p_i` of a probability vector, with the
/// convention `0 ln 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    validate_probabilities(p)?;
    let s: f64 = p
        .iter()
        .map(|&pi| if pi > 0.0 { -pi * pi.ln() } else { 0.0 })
        .sum();
    // A spectrum of exact zeros and ones can land a hair below zero through
    // round-off; anything further negative cannot happen for a valid p.
    Ok(s.max(0.0))
}

/// Von Neumann entropy `-tr(rho ln rho)` in nats.
///
/// Eigenvalues in `[-EIGENVALUE_CLAMP, 0)` are clamped to zero; an
/// eigenvalue below `-EIGENVALUE_CLAMP` fails positivity and is reported as
/// [`Error::NotADensityMatrix`].  The result is clamped into `[0, ln d]`
/// against round-off at the boundary cases (pure and maximally mixed).
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let eigenvalues = rho.eigenvalues();
    entropy_of_spectrum(&eigenvalues, rho.dim())
}

/// Entropy of an eigenvalue list that should be a probability spectrum.
pub(crate) fn entropy_of_spectrum(eigenvalues: &[f64], dim: usize) -> Result<f64> {
    let mut s = 0.0_f64;
    for &lambda in eigenvalues {
        if lambda < -EIGENVALUE_CLAMP {
            return Err(Error::NotADensityMatrix {
                reason: format!("negative eigenvalue {lambda:.3e} beyond round-off"),
            });
        }
        if lambda > 0.0 {
            s -= lambda * lambda.ln();
        }
    }
    Ok(s.clamp(0.0, (dim as f64).ln().max(0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

    const LN_2: f64 = std::f64::consts::LN_2;

    #[test]
    fn pure_state_has_zero_entropy() {
        let psi = QuantumState::normalized(DVector::from_vec(vec![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
        ]))
        .unwrap();
        let rho = DensityMatrix::pure(&psi);
        let s = von_neumann_entropy(&rho).unwrap();
        assert!(s.abs() <= 1e-9, "pure-state entropy {s:.3e}");
    }

    #[test]
    fn maximally_mixed_state_has_entropy_ln_d() {
        for dim in [2usize, 3, 5, 8] {
            let p = vec![1.0 / dim as f64; dim];
            let rho = DensityMatrix::from_probabilities(&p).unwrap();
            let s = von_neumann_entropy(&rho).unwrap();
            assert!((s - (dim as f64).ln()).abs() <= 1e-9);
        }
    }

    #[test]
    fn hand_computed_entropy() {
        // S(1/2, 1/4, 1/4) = (3/2) ln 2.
        let rho = DensityMatrix::from_probabilities(&[0.5, 0.25, 0.25]).unwrap();
        let s = von_neumann_entropy(&rho).unwrap();
        assert!((s - 1.5 * LN_2).abs() <= 1e-12);
    }

    #[test]
    fn entropy_is_basis_invariant() {
        // Conjugating by a unitary permutes nothing physical: compare the
        // diagonal matrix against a rotated copy.
        let rho = DensityMatrix::from_probabilities(&[0.7, 0.3]).unwrap();
        let theta: f64 = 0.4;
        let u = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(theta.cos(), 0.0),
                Complex64::new(-theta.sin(), 0.0),
                Complex64::new(theta.sin(), 0.0),
                Complex64::new(theta.cos(), 0.0),
            ],
        );
        let rotated = DensityMatrix::new(&(&u * rho.entries()) * u.adjoint()).unwrap();
        let s0 = von_neumann_entropy(&rho).unwrap();
        let s1 = von_neumann_entropy(&rotated).unwrap();
        assert!((s0 - s1).abs() <= 1e-10);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = DMatrix::from_element(2, 2, Complex64::new(0.5, 0.0));
        m[(0, 1)] = Complex64::new(0.5, 1e-6);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NotADensityMatrix { .. })
        ));
    }

    #[test]
    fn rejects_wrong_trace() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.6, 0.0),
        ]));
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NotADensityMatrix { .. })
        ));
    }

    #[test]
    fn entropy_rejects_indefinite_matrix() {
        // Hermitian, trace one, but with a genuinely negative eigenvalue.
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![
            Complex64::new(1.2, 0.0),
            Complex64::new(-0.2, 0.0),
        ]));
        let rho = DensityMatrix::new(m).unwrap();
        assert!(matches!(
            von_neumann_entropy(&rho),
            Err(Error::NotADensityMatrix { .. })
        ));
    }

    #[test]
    fn tiny_negative_eigenvalues_are_clamped() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![
            Complex64::new(1.0 + 5e-11, 0.0),
            Complex64::new(-5e-11, 0.0),
        ]));
        let rho = DensityMatrix::new(m).unwrap();
        let s = von_neumann_entropy(&rho).unwrap();
        assert!(s >= 0.0 && s <= 1e-9);
    }

    #[test]
    fn probability_validation() {
        assert!(validate_probabilities(&[0.5, 0.5]).is_ok());
        assert!(validate_probabilities(&[]).is_err());
        assert!(validate_probabilities(&[0.5, 0.4]).is_err());
        assert!(validate_probabilities(&[1.5, -0.5]).is_err());
        assert!(validate_probabilities(&[f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn shannon_entropy_of_degenerate_distribution_is_zero() {
        assert_eq!(shannon_entropy(&[1.0, 0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn diagonal_probabilities_round_trip() {
        let p = [0.1, 0.2, 0.3, 0.4];
        let rho = DensityMatrix::from_probabilities(&p).unwrap();
        assert_eq!(rho.diagonal_probabilities(), p.to_vec());
    }
}
