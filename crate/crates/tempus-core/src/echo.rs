//! Echo fidelity: how well a time reversal undoes an evolution when the
//! reversal is mistimed.
//!
//! Evolve for `t`, then reverse for `t + delta`.  The recovered state
//! overlaps the initial one with probability
//!
//! `F(delta) = |sum_n p_n exp(-i e_n delta)|^2`,
//!
//! which depends only on the timing error `delta`, not on `t` — the
//! uncompensated phases are exactly the ones a `delta`-long free evolution
//! would have produced on the occupation distribution.  Near the peak
//! `F(delta) ~ 1 - (width * delta)^2`, so the echo decays on the dephasing
//! time scale `1 / width`: the narrower in energy the state, the more
//! forgiving the reversal — and the worse the system is as a clock.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quench::QuenchSetup;

/// Fidelity `F(delta)` of an echo with timing error `delta`.
///
/// `F(0) = 1` up to round-off; the decay sets in once
/// `|delta| * width ~ 1`.
pub fn echo_fidelity(setup: &QuenchSetup, delta: f64) -> Result<f64> {
    if !delta.is_finite() {
        return Err(Error::NonFinite { name: "delta" });
    }
    let chi: Complex64 = setup
        .occupations()
        .iter()
        .zip(setup.spectral().eigenvalues())
        .map(|(&p, &e)| Complex64::cis(-e * delta) * p)
        .sum();
    Ok(chi.norm_sqr())
}

/// Analytic curvature of the echo peak: `-d^2F/ddelta^2` at `delta = 0`,
/// which equals `2 * width^2`.
///
/// An energy eigenstate has zero width — its echo never decays and the
/// curvature question is vacuous — so that case is reported as
/// [`Error::ZeroWidth`] rather than a silent 0.
pub fn echo_curvature(setup: &QuenchSetup) -> Result<f64> {
    let width = setup.statistics().width;
    if width == 0.0 {
        return Err(Error::ZeroWidth);
    }
    Ok(2.0 * width * width)
}

/// Echo fidelity sampled over a grid of timing errors.
#[derive(Debug, Clone, PartialEq)]
pub struct EchoCurve {
    deltas: Vec<f64>,
    fidelities: Vec<f64>,
}

impl EchoCurve {
    /// Assembles a curve from raw parts, validating the grid contract:
    /// strictly ascending finite deltas, fidelities in `[0, 1]` up to
    /// round-off, and `F = 1` within `1e-12` wherever `delta = 0` appears.
    pub fn from_parts(deltas: Vec<f64>, fidelities: Vec<f64>) -> Result<Self> {
        if deltas.len() != fidelities.len() {
            return Err(Error::DimensionMismatch {
                left: deltas.len(),
                right: fidelities.len(),
            });
        }
        if deltas.is_empty() {
            return Err(Error::InvalidTimeGrid {
                reason: "no delta samples".into(),
            });
        }
        if deltas.iter().any(|d| !d.is_finite()) {
            return Err(Error::NonFinite { name: "deltas" });
        }
        if deltas.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidTimeGrid {
                reason: "deltas must be strictly ascending".into(),
            });
        }
        for (&d, &f) in deltas.iter().zip(fidelities.iter()) {
            if !f.is_finite() || !(-1e-12..=1.0 + 1e-12).contains(&f) {
                return Err(Error::InvariantViolation {
                    what: format!("fidelity {f} at delta = {d} outside [0, 1]"),
                });
            }
            if d == 0.0 && (f - 1.0).abs() > 1e-12 {
                return Err(Error::InvariantViolation {
                    what: format!("fidelity at delta = 0 is {f}, expected 1"),
                });
            }
        }
        Ok(Self { deltas, fidelities })
    }

    /// Timing errors, strictly ascending.
    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    /// Echo fidelity at each timing error.
    pub fn fidelities(&self) -> &[f64] {
        &self.fidelities
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    /// True when the curve has no samples (unreachable via constructors).
    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }
}

/// Evaluates the echo over a grid of timing errors (strictly ascending,
/// may span both signs) and bundles the result with its invariant checks.
pub fn echo_curve(setup: &QuenchSetup, deltas: &[f64]) -> Result<EchoCurve> {
    let fidelities: Vec<f64> = deltas
        .iter()
        .map(|&d| echo_fidelity(setup, d))
        .collect::<Result<_>>()?;
    EchoCurve::from_parts(deltas.to_vec(), fidelities)
}

/// Half width of the echo peak: the smallest `|delta|` at which the
/// fidelity has fallen to 1/2, located by linear interpolation between
/// samples, taking the nearer of the two sides of the peak.
///
/// Fails with [`Error::NotBracketed`] unless the curve crosses 1/2 on
/// *both* sides of `delta = 0` — a one-sided grid or an echo that never
/// decays inside the sampled range has no measurable width.
pub fn half_width(curve: &EchoCurve) -> Result<f64> {
    let d = curve.deltas();
    let f = curve.fidelities();
    let mut positive: Option<f64> = None;
    let mut negative: Option<f64> = None;
    for i in 0..d.len().saturating_sub(1) {
        let a = f[i] - 0.5;
        let b = f[i + 1] - 0.5;
        let crosses = a == 0.0 || b == 0.0 || (a > 0.0) != (b > 0.0);
        if !crosses {
            continue;
        }
        let x = if f[i + 1] == f[i] {
            // Both samples sit exactly on the level: the edge of a plateau.
            if d[i] >= 0.0 {
                d[i]
            } else {
                d[i + 1]
            }
        } else {
            d[i] + (d[i + 1] - d[i]) * (0.5 - f[i]) / (f[i + 1] - f[i])
        };
        if x >= 0.0 {
            // Ascending scan: the first crossing at or after zero is the
            // closest one.
            if positive.is_none() {
                positive = Some(x);
            }
        } else {
            // Keep overwriting: the last crossing before zero is closest.
            negative = Some(x);
        }
    }
    match (negative, positive) {
        (Some(n), Some(p)) => Ok(p.min(-n)),
        _ => Err(Error::NotBracketed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::ensembles::build_gue;
    use crate::quantum::operator::HermitianOperator;
    use crate::quantum::state::QuantumState;
    use crate::quench::QuenchSetup;

    const PI: f64 = std::f64::consts::PI;

    fn two_level_setup(omega: f64) -> QuenchSetup {
        let h = HermitianOperator::from_real_diagonal(&[0.0, omega]).unwrap();
        let psi0 = QuantumState::uniform(2).unwrap();
        QuenchSetup::new(&h, &psi0).unwrap()
    }

    #[test]
    fn fidelity_at_zero_error_is_one() {
        let h = build_gue(16, 3).unwrap();
        let psi0 = QuantumState::basis_vector(16, 0).unwrap();
        let setup = QuenchSetup::new(&h, &psi0).unwrap();
        let f = echo_fidelity(&setup, 0.0).unwrap();
        assert!((f - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn two_level_echo_is_cosine_squared() {
        let omega = 1.7;
        let setup = two_level_setup(omega);
        for i in 0..50 {
            let delta = (i as f64 - 25.0) * 0.13;
            let expected = (omega * delta / 2.0).cos().powi(2);
            let got = echo_fidelity(&setup, delta).unwrap();
            assert!(
                (got - expected).abs() <= 1e-13,
                "delta = {delta}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn echo_depends_only_on_timing_error() {
        // Double-evolution route: evolve for t, reverse for t + delta, and
        // compare with the recovered-state fidelity.  Every t must give the
        // same answer as the closed form.
        let h = build_gue(12, 9).unwrap();
        let psi0 = QuantumState::basis_vector(12, 2).unwrap();
        let setup = QuenchSetup::new(&h, &psi0).unwrap();
        let spec = setup.spectral();
        let delta = 0.8;
        let closed = echo_fidelity(&setup, delta).unwrap();
        for &t in &[0.0, 1.0, 7.3, 42.0] {
            let forward = spec.evolve(&psi0, t).unwrap();
            let recovered = spec.evolve(&forward, -(t + delta)).unwrap();
            let direct = recovered.fidelity(&psi0).unwrap();
            assert!(
                (direct - closed).abs() <= 1e-11,
                "t = {t}: {direct} vs {closed}"
            );
        }
    }

    #[test]
    fn curvature_matches_finite_differences() {
        // Independent route: central second difference of the fidelity at
        // the peak. F(h) + F(-h) - 2 = -curvature * h^2 + O(h^4).
        let h_op = build_gue(16, 5).unwrap();
        let psi0 = QuantumState::basis_vector(16, 0).unwrap();
        let setup = QuenchSetup::new(&h_op, &psi0).unwrap();
        let analytic = echo_curvature(&setup).unwrap();
        let tau = setup.boltzmann_time();
        let h = 1e-4 * tau;
        let fd = -(echo_fidelity(&setup, h).unwrap() + echo_fidelity(&setup, -h).unwrap() - 2.0)
            / (h * h);
        assert!(
            (fd - analytic).abs() <= 1e-4 * analytic,
            "finite difference {fd} vs analytic {analytic}"
        );
    }

    #[test]
    fn two_level_curvature_is_half_omega_squared() {
        // Width of the uniform two-level state is omega/2, so the peak
        // curvature 2 * width^2 = omega^2 / 2.
        let omega = 1.7;
        let setup = two_level_setup(omega);
        let c = echo_curvature(&setup).unwrap();
        assert!((c - omega * omega / 2.0).abs() <= 1e-13);
    }

    #[test]
    fn curvature_of_an_eigenstate_is_degenerate() {
        let h = HermitianOperator::from_real_diagonal(&[1.0, 2.0]).unwrap();
        let psi0 = QuantumState::basis_vector(2, 0).unwrap();
        let setup = QuenchSetup::new(&h, &psi0).unwrap();
        assert!(matches!(echo_curvature(&setup), Err(Error::ZeroWidth)));
    }

    #[test]
    fn half_width_of_two_level_echo() {
        // cos^2(omega delta / 2) = 1/2 first at delta = pi / (2 omega).
        let omega = 1.7;
        let setup = two_level_setup(omega);
        let deltas = crate::grid::lin_spaced(-2.0, 2.0, 801).unwrap();
        let curve = echo_curve(&setup, &deltas).unwrap();
        let w = half_width(&curve).unwrap();
        let expected = PI / (2.0 * omega);
        assert!((w - expected).abs() <= 1e-3, "{w} vs {expected}");
    }

    #[test]
    fn half_width_of_synthetic_parabola() {
        // F = 1 - (delta / tau)^2 crosses 1/2 at tau / sqrt(2).
        let tau = 0.9;
        let deltas = crate::grid::lin_spaced(-1.2, 1.2, 2401).unwrap();
        let fids: Vec<f64> = deltas
            .iter()
            .map(|&d| (1.0 - (d / tau) * (d / tau)).max(0.0))
            .collect();
        let curve = EchoCurve::from_parts(deltas, fids).unwrap();
        let w = half_width(&curve).unwrap();
        assert!((w - tau / 2f64.sqrt()).abs() <= 1e-3);
    }

    #[test]
    fn half_width_takes_the_nearer_side() {
        // An asymmetric synthetic curve: crosses at -0.4 and +0.8.
        let deltas = vec![-1.0, -0.4, 0.0, 0.8, 1.6];
        let fids = vec![0.2, 0.5, 1.0, 0.5, 0.1];
        let curve = EchoCurve::from_parts(deltas, fids).unwrap();
        assert_eq!(half_width(&curve).unwrap(), 0.4);
    }

    #[test]
    fn half_width_requires_both_sides() {
        // Only the positive flank is sampled.
        let deltas = vec![0.0, 0.5, 1.0];
        let fids = vec![1.0, 0.6, 0.2];
        let curve = EchoCurve::from_parts(deltas, fids).unwrap();
        assert!(matches!(half_width(&curve), Err(Error::NotBracketed)));

        // Sampled on both sides but never decays to 1/2.
        let setup = two_level_setup(0.1);
        let deltas = crate::grid::lin_spaced(-1.0, 1.0, 21).unwrap();
        let curve = echo_curve(&setup, &deltas).unwrap();
        assert!(matches!(half_width(&curve), Err(Error::NotBracketed)));
    }

    #[test]
    fn curve_validation_rejects_garbage() {
        assert!(EchoCurve::from_parts(vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(EchoCurve::from_parts(vec![], vec![]).is_err());
        assert!(EchoCurve::from_parts(vec![1.0, 0.0], vec![0.5, 0.5]).is_err());
        assert!(EchoCurve::from_parts(vec![0.0], vec![0.9]).is_err());
        assert!(EchoCurve::from_parts(vec![0.5], vec![1.7]).is_err());
        assert!(EchoCurve::from_parts(vec![f64::NAN], vec![0.5]).is_err());
        assert!(echo_fidelity(&two_level_setup(1.0), f64::INFINITY).is_err());
    }

    #[test]
    fn grid_order_errors_surface_through_echo_curve() {
        let setup = two_level_setup(1.0);
        assert!(matches!(
            echo_curve(&setup, &[1.0, 0.5]),
            Err(Error::InvalidTimeGrid { .. })
        ));
    }
}
