//! Entropy growth of time-averaged states after a quench.
//!
//! Prepare a pure state, evolve it under a fixed Hamiltonian, and ask what
//! an observer who only knows the elapsed time *to within* `t` can say: the
//! effective state is the time average
//!
//! `rho_bar(t) = (1/t) integral_0^t |psi(s)><psi(s)| ds`.
//!
//! In the energy eigenbasis the average has the closed form
//! `rho_bar[n,m] = c_n conj(c_m) K((e_n - e_m) t)` with
//! `K(x) = (1 - exp(-ix)) / (ix)`, so no numerical integration is needed.
//! As `t` grows the off-diagonal coherences die off like `1/t` and the von
//! Neumann entropy of `rho_bar(t)` climbs — logarithmically once `t`
//! exceeds the dephasing time — until it saturates at the diagonal
//! (Shannon) entropy of the level occupations.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quantum::density::{self, entropy_of_spectrum, DensityMatrix};
use crate::quantum::operator::HermitianOperator;
use crate::quantum::spectral::{diagonalize, EnergyStatistics, SpectralDecomposition};
use crate::quantum::state::QuantumState;

/// Fewest samples a log-growth fit will accept inside its window.
pub const MIN_FIT_SAMPLES: usize = 8;

/// Default fit window in units of the dephasing time: the stretch where
/// growth is reliably logarithmic but saturation has not yet set in.
pub const DEFAULT_FIT_WINDOW: (f64, f64) = (5.0, 50.0);

/// A quench experiment, fully determined by a Hamiltonian and an initial
/// state: the spectral decomposition, the initial state's eigenbasis
/// amplitudes and occupations, and the derived energy statistics.
#[derive(Debug, Clone)]
pub struct QuenchSetup {
    spectral: SpectralDecomposition,
    amplitudes: DVector<Complex64>,
    occupations: Vec<f64>,
    statistics: EnergyStatistics,
    diagonal_entropy: f64,
}

impl QuenchSetup {
    /// Diagonalizes `h` and projects `psi0` onto its eigenbasis.
    pub fn new(h: &HermitianOperator, psi0: &QuantumState) -> Result<Self> {
        Self::from_decomposition(diagonalize(h), psi0)
    }

    /// Builds the setup from an existing decomposition (avoids repeating
    /// the `O(d^3)` solve when several experiments share one Hamiltonian).
    pub fn from_decomposition(
        spectral: SpectralDecomposition,
        psi0: &QuantumState,
    ) -> Result<Self> {
        let amplitudes = spectral.to_eigenbasis(psi0)?;
        Self::from_amplitudes(spectral, amplitudes)
    }

    /// Builds the setup directly from eigenbasis amplitudes `c_n = <n|psi0>`.
    ///
    /// This skips the basis rotation entirely, so an amplitude vector that
    /// is exactly one-hot stays exactly one-hot — useful when the initial
    /// state *is* an eigenstate and round-off leakage would be spurious.
    pub fn from_amplitudes(
        spectral: SpectralDecomposition,
        amplitudes: DVector<Complex64>,
    ) -> Result<Self> {
        if amplitudes.len() != spectral.dim() {
            return Err(Error::DimensionMismatch {
                left: amplitudes.len(),
                right: spectral.dim(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::NotAProbabilityVector {
                reason: format!("amplitude norm^2 is {norm_sq}, expected 1"),
            });
        }
        let occupations: Vec<f64> = amplitudes.iter().map(|a| a.norm_sqr()).collect();
        let statistics = spectral.statistics_from_occupations(&occupations)?;
        let diagonal_entropy = density::shannon_entropy(&occupations)?;
        Ok(Self {
            spectral,
            amplitudes,
            occupations,
            statistics,
            diagonal_entropy,
        })
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.spectral.dim()
    }

    /// The underlying spectral decomposition.
    pub fn spectral(&self) -> &SpectralDecomposition {
        &self.spectral
    }

    /// Eigenbasis amplitudes `c_n = <n|psi0>`.
    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Level occupations `p_n = |c_n|^2`.
    pub fn occupations(&self) -> &[f64] {
        &self.occupations
    }

    /// Mean energy, width, and dephasing time of the initial state.
    pub fn statistics(&self) -> EnergyStatistics {
        self.statistics
    }

    /// The dephasing time `1 / width` that sets the clock of the entropy
    /// growth (`+inf` if the initial state is an eigenstate).
    pub fn boltzmann_time(&self) -> f64 {
        self.statistics.boltzmann_time
    }

    /// Shannon entropy of the occupations: the ceiling every time-averaged
    /// entropy saturates at.
    pub fn diagonal_entropy(&self) -> f64 {
        self.diagonal_entropy
    }

    /// The pure initial state as a density matrix in the eigenbasis — the
    /// `t -> 0+` limit of the time average.
    pub fn initial_projector(&self) -> DensityMatrix {
        let dim = self.dim();
        let c = &self.amplitudes;
        let mut entries = DMatrix::zeros(dim, dim);
        for n in 0..dim {
            entries[(n, n)] = Complex64::new(self.occupations[n], 0.0);
            for m in (n + 1)..dim {
                let v = c[n] * c[m].conj();
                entries[(n, m)] = v;
                entries[(m, n)] = v.conj();
            }
        }
        DensityMatrix::from_trusted(entries)
    }

    /// The fully dephased state `diag(p)` — the `t -> inf` limit of the
    /// time average.
    pub fn dephased_limit(&self) -> DensityMatrix {
        let dim = self.dim();
        let mut entries = DMatrix::zeros(dim, dim);
        for n in 0..dim {
            entries[(n, n)] = Complex64::new(self.occupations[n], 0.0);
        }
        DensityMatrix::from_trusted(entries)
    }

    /// The time-averaged state `rho_bar(t)` in the energy eigenbasis,
    /// assembled from the closed-form kernel.
    ///
    /// The diagonal equals the occupations exactly (the kernel is pinned to
    /// `K(0) = 1`), so only the coherences carry any `t` dependence.
    pub fn time_averaged_density_matrix(&self, t: f64) -> Result<DensityMatrix> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::NonPositiveTime { value: t });
        }
        let dim = self.dim();
        let c = &self.amplitudes;
        let e = self.spectral.eigenvalues();
        let mut entries = DMatrix::zeros(dim, dim);
        for n in 0..dim {
            entries[(n, n)] = Complex64::new(self.occupations[n], 0.0);
            for m in (n + 1)..dim {
                let v = c[n] * c[m].conj() * kernel((e[n] - e[m]) * t);
                entries[(n, m)] = v;
                entries[(m, n)] = v.conj();
            }
        }
        Ok(DensityMatrix::from_trusted(entries))
    }

    /// Same state expressed back in the original (computational) basis.
    pub fn time_averaged_density_matrix_original_basis(&self, t: f64) -> Result<DensityMatrix> {
        let rho = self.time_averaged_density_matrix(t)?;
        DensityMatrix::new(self.spectral.conjugate_to_original_basis(rho.entries()))
    }

    /// Von Neumann entropy of the time-averaged state at a single time.
    pub fn entropy_at(&self, t: f64) -> Result<f64> {
        let rho = self.time_averaged_density_matrix(t)?;
        let s = entropy_of_spectrum(&rho.eigenvalues(), self.dim())?;
        self.check_majorization(s, t)?;
        Ok(s)
    }

    /// Entropy of the time average over a whole grid of times.
    ///
    /// Times must be strictly ascending and positive.  Points are evaluated
    /// independently (in parallel when a rayon pool is configured) and
    /// collected in grid order, so the output is identical for every thread
    /// count.
    pub fn entropy_curve(&self, times: &[f64]) -> Result<EntropyCurve> {
        if times.is_empty() {
            return Err(Error::InvalidTimeGrid {
                reason: "no time points".into(),
            });
        }
        for (i, w) in times.windows(2).enumerate() {
            if !(w[0] < w[1]) {
                return Err(Error::InvalidTimeGrid {
                    reason: format!("times[{}] = {} !< times[{}] = {}", i, w[0], i + 1, w[1]),
                });
            }
        }
        if let Some(&t) = times.iter().find(|&&t| !(t > 0.0) || !t.is_finite()) {
            return Err(Error::NonPositiveTime { value: t });
        }
        let entropies: Vec<f64> = times
            .par_iter()
            .map(|&t| self.entropy_at(t))
            .collect::<Result<_>>()?;
        Ok(EntropyCurve {
            times: times.to_vec(),
            entropies,
            diagonal_entropy: self.diagonal_entropy,
        })
    }

    /// The time average cannot be *more* mixed than the fully dephased
    /// state: its entropy is bounded by the diagonal entropy.  A violation
    /// beyond round-off means the numerics broke down.
    fn check_majorization(&self, entropy: f64, t: f64) -> Result<()> {
        if entropy > self.diagonal_entropy + 1e-9 {
            return Err(Error::InvariantViolation {
                what: format!(
                    "entropy {entropy} at t = {t} exceeds the diagonal entropy {}",
                    self.diagonal_entropy
                ),
            });
        }
        Ok(())
    }
}

/// The dephasing kernel `K(x) = (1 - exp(-ix)) / (ix)`, evaluated in the
/// cancellation-free form `exp(-ix/2) * sinc(x/2)`.
///
/// `K(0) = 1` exactly; `|K|` decays like `2/|x|`, which is what drives the
/// coherence loss of the time average.
fn kernel(x: f64) -> Complex64 {
    if x == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let half = 0.5 * x;
    Complex64::cis(-half) * (half.sin() / half)
}

/// Shannon entropy of a set of level occupations — the saturation value of
/// the time-averaged entropy.
pub fn diagonal_entropy(occupations: &[f64]) -> Result<f64> {
    density::shannon_entropy(occupations)
}

/// Entropy of the time-averaged state sampled on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyCurve {
    times: Vec<f64>,
    entropies: Vec<f64>,
    diagonal_entropy: f64,
}

impl EntropyCurve {
    /// Assembles a curve from raw parts, validating the grid contract
    /// (strictly ascending positive times, finite entropies).
    pub fn from_parts(times: Vec<f64>, entropies: Vec<f64>, diagonal_entropy: f64) -> Result<Self> {
        if times.len() != entropies.len() {
            return Err(Error::DimensionMismatch {
                left: times.len(),
                right: entropies.len(),
            });
        }
        if times.is_empty() {
            return Err(Error::InvalidTimeGrid {
                reason: "no time points".into(),
            });
        }
        if let Some(&t) = times.iter().find(|&&t| !(t > 0.0) || !t.is_finite()) {
            return Err(Error::NonPositiveTime { value: t });
        }
        if times.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidTimeGrid {
                reason: "times must be strictly ascending".into(),
            });
        }
        if entropies.iter().any(|s| !s.is_finite()) {
            return Err(Error::NonFinite { name: "entropies" });
        }
        Ok(Self {
            times,
            entropies,
            diagonal_entropy,
        })
    }

    /// Sample times, strictly ascending.
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Entropy of the time average at each sample time.
    pub fn entropies(&self) -> &[f64] {
        &self.entropies
    }

    /// The saturation ceiling shared by every point of the curve.
    pub fn diagonal_entropy(&self) -> f64 {
        self.diagonal_entropy
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.times.len()
    }

    /// True when the curve has no samples (unreachable via constructors,
    /// but clippy insists `len` comes with `is_empty`).
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Least-squares line through `(ln(t / tau), S)` pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGrowthFit {
    /// Entropy gained per e-fold of time.
    pub slope: f64,
    /// Fitted entropy at `t = tau` (where the log coordinate vanishes).
    pub intercept: f64,
    /// Coefficient of determination; 1 means perfectly logarithmic growth.
    pub r_squared: f64,
    /// Number of samples inside the fit window.
    pub samples: usize,
}

/// Fits `S = intercept + slope * ln(t / reference_time)` over the samples
/// with `window.0 <= t <= window.1`.
///
/// `reference_time` is the unit of the log coordinate — using the
/// dephasing time makes intercepts comparable across systems.  The window
/// is in absolute time and must contain at least [`MIN_FIT_SAMPLES`]
/// samples.
pub fn log_growth_fit(
    curve: &EntropyCurve,
    reference_time: f64,
    window: (f64, f64),
) -> Result<LogGrowthFit> {
    if !(reference_time > 0.0) || !reference_time.is_finite() {
        return Err(Error::NonPositiveInput {
            name: "reference_time",
            value: reference_time,
        });
    }
    let (lo, hi) = window;
    if !(lo > 0.0) || !(hi > lo) || !hi.is_finite() {
        return Err(Error::InvalidTimeGrid {
            reason: format!("fit window [{lo}, {hi}] must satisfy 0 < lo < hi"),
        });
    }
    let pairs: Vec<(f64, f64)> = curve
        .times
        .iter()
        .zip(curve.entropies.iter())
        .filter(|(&t, _)| t >= lo && t <= hi)
        .map(|(&t, &s)| ((t / reference_time).ln(), s))
        .collect();
    if pairs.len() < MIN_FIT_SAMPLES {
        return Err(Error::InsufficientSamples {
            found: pairs.len(),
            required: MIN_FIT_SAMPLES,
        });
    }

    let n = pairs.len() as f64;
    let x_mean = pairs.iter().map(|(x, _)| x).sum::<f64>() / n;
    let y_mean = pairs.iter().map(|(_, y)| y).sum::<f64>() / n;
    let sxx: f64 = pairs.iter().map(|(x, _)| (x - x_mean) * (x - x_mean)).sum();
    let sxy: f64 = pairs
        .iter()
        .map(|(x, y)| (x - x_mean) * (y - y_mean))
        .sum();
    // Strictly ascending times make the log coordinates distinct, so sxx
    // can only vanish through catastrophic underflow of the window.
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;

    let ss_res: f64 = pairs
        .iter()
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let ss_tot: f64 = pairs.iter().map(|(_, y)| (y - y_mean) * (y - y_mean)).sum();
    let r_squared = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else {
        // A perfectly flat curve is fit perfectly by a flat line.
        1.0
    };

    Ok(LogGrowthFit {
        slope,
        intercept,
        r_squared,
        samples: pairs.len(),
    })
}
