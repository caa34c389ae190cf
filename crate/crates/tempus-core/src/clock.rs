//! A finite quantum clock: `n` equally spaced energy levels whose uniform
//! superposition sweeps through `n` distinguishable pointer positions, one
//! per resolution step `tau`, before returning to its starting state.
//!
//! The clock state at time `t` is
//!
//! `|C(t)> = (1/sqrt(n)) sum_{k=1..n} exp(-i 2 pi k t / (n tau)) |k>`,
//!
//! i.e. the level splitting is `2 pi / (n tau)` so that the full revival
//! period is `n tau` and consecutive pointer states are exactly
//! orthogonal.  The pointer basis is the discrete Fourier transform of the
//! energy levels; reading the clock means projecting onto it.
//!
//! Running such a clock leaves a record: after `t_run` it has traversed
//! `t_run / tau` distinguishable positions, so erasing the history costs
//! `ln(t_run / tau)` nats — the record entropy.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest number of clock levels the dense pointer routines accept.
pub const MAX_TICKS: usize = crate::quantum::ensembles::MAX_DENSE_DIM;

/// Tolerance on the unit norm of a clock state.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// A clock design: how many levels it has and how long one tick lasts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClockSpec {
    ticks: usize,
    resolution: f64,
}

impl ClockSpec {
    /// Validates `ticks >= 2` (a one-state clock shows nothing) and a
    /// strictly positive, finite `resolution`.
    pub fn new(ticks: usize, resolution: f64) -> Result<Self> {
        if ticks < 2 {
            return Err(Error::DimensionTooSmall {
                dim: ticks,
                min: 2,
            });
        }
        if ticks > MAX_TICKS {
            return Err(Error::DimensionTooLarge {
                dim: ticks,
                cap: MAX_TICKS,
            });
        }
        if !(resolution > 0.0) || !resolution.is_finite() {
            return Err(Error::NonPositiveInput {
                name: "resolution",
                value: resolution,
            });
        }
        Ok(Self { ticks, resolution })
    }

    /// Number of distinguishable pointer positions.
    pub fn ticks(&self) -> usize {
        self.ticks
    }

    /// Duration of one tick.
    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    /// Full revival period `n * tau`: after this long the clock state
    /// returns to itself exactly.
    pub fn period(&self) -> f64 {
        self.ticks as f64 * self.resolution
    }

    /// The clock state at time `t` (any finite real; the construction is
    /// periodic, so `t` is reduced modulo the period first).
    ///
    /// Phases are evaluated after reducing `k t / period` modulo 1, which
    /// keeps every trig argument inside one turn and the phase error at
    /// round-off level even for thousands of levels.
    pub fn state_at(&self, t: f64) -> Result<ClockState> {
        if !t.is_finite() {
            return Err(Error::NonFinite { name: "t" });
        }
        let period = self.period();
        let phase = t.rem_euclid(period) / period; // in [0, 1)
        let scale = 1.0 / (self.ticks as f64).sqrt();
        let amplitudes = DVector::from_iterator(
            self.ticks,
            (1..=self.ticks).map(|k| {
                let turns = (k as f64 * phase).fract();
                Complex64::cis(-std::f64::consts::TAU * turns) * scale
            }),
        );
        Ok(ClockState { amplitudes })
    }

    /// Pointer state `m` for `m` in `0..n`: where the hand points after
    /// exactly `m` ticks.  These are the DFT basis vectors, so distinct
    /// pointers are exactly orthogonal.
    ///
    /// The phase index `k m` is reduced modulo `n` in integer arithmetic,
    /// so the amplitudes are exact roots of unity up to one `sin`/`cos`
    /// rounding each.
    pub fn pointer_state(&self, m: usize) -> Result<ClockState> {
        if m >= self.ticks {
            return Err(Error::IndexOutOfRange {
                index: m,
                len: self.ticks,
            });
        }
        let n = self.ticks;
        let scale = 1.0 / (n as f64).sqrt();
        let amplitudes = DVector::from_iterator(
            n,
            (1..=n).map(|k| {
                let turns = ((k * m) % n) as f64 / n as f64;
                Complex64::cis(-std::f64::consts::TAU * turns) * scale
            }),
        );
        Ok(ClockState { amplitudes })
    }

    /// Probability of each pointer outcome when reading `state`:
    /// `q_m = |<pointer_m|state>|^2`.  The pointer basis is complete, so
    /// the distribution sums to 1 to working precision.
    pub fn readout_distribution(&self, state: &ClockState) -> Result<Vec<f64>> {
        if state.dim() != self.ticks {
            return Err(Error::DimensionMismatch {
                left: self.ticks,
                right: state.dim(),
            });
        }
        (0..self.ticks)
            .map(|m| Ok(self.pointer_state(m)?.overlap(state)?.norm_sqr()))
            .collect()
    }

    /// Entropy of the record left by running this clock for `t_run`:
    /// `ln` of the number of ticks completed (nearest integer, clamped to
    /// at least one and at most a full revolution).
    ///
    /// `t_run` must lie in `(0, period]`; past one period the hand laps
    /// itself and "number of positions visited" stops growing.
    pub fn record_entropy(&self, t_run: f64) -> Result<f64> {
        let period = self.period();
        if !t_run.is_finite() || t_run <= 0.0 || t_run > period {
            return Err(Error::OutOfRange {
                name: "t_run",
                value: t_run,
                lo: 0.0,
                hi: period,
            });
        }
        let completed = (t_run / self.resolution).round().clamp(1.0, self.ticks as f64);
        Ok(completed.ln())
    }

    /// Overlap probability between the clock at `t` and at `t + delta`:
    /// `|<C(t)|C(t + delta)>|^2`.  Time-translation invariance makes it a
    /// function of `delta` alone; it is 1 at multiples of the period and
    /// exactly 0 at nonzero multiples of the resolution.
    pub fn autocorrelation(&self, delta: f64) -> Result<f64> {
        if !delta.is_finite() {
            return Err(Error::NonFinite { name: "delta" });
        }
        let period = self.period();
        let phase = delta.rem_euclid(period) / period;
        let n = self.ticks;
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 1..=n {
            let turns = (k as f64 * phase).fract();
            sum += Complex64::cis(-std::f64::consts::TAU * turns);
        }
        // |sum/n|^2 <= 1 up to round-off; clamp the dust.
        Ok((sum / n as f64).norm_sqr().min(1.0))
    }
}

/// A normalized state of the clock's `n`-level Hilbert space, indexed by
/// energy level `k = 1..n` (stored at `k - 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct ClockState {
    amplitudes: DVector<Complex64>,
}

impl ClockState {
    /// Wraps an amplitude vector, checking unit norm.
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionTooSmall { dim: 0, min: 2 });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotAProbabilityVector {
                reason: format!("squared amplitudes sum to {norm_sq}, expected 1"),
            });
        }
        Ok(Self { amplitudes })
    }

    /// Number of levels.
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

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn spec_validation() {
        assert!(ClockSpec::new(2, 1.0).is_ok());
        assert!(matches!(
            ClockSpec::new(1, 1.0),
            Err(Error::DimensionTooSmall { dim: 1, min: 2 })
        ));
        assert!(matches!(
            ClockSpec::new(MAX_TICKS + 1, 1.0),
            Err(Error::DimensionTooLarge { .. })
        ));
        assert!(matches!(
            ClockSpec::new(4, 0.0),
            Err(Error::NonPositiveInput { .. })
        ));
        assert!(ClockSpec::new(4, -1.0).is_err());
        assert!(ClockSpec::new(4, f64::INFINITY).is_err());
    }

    #[test]
    fn period_is_ticks_times_resolution() {
        let clock = ClockSpec::new(8, 0.7).unwrap();
        assert_eq!(clock.period(), 8.0 * 0.7);
    }

    #[test]
    fn clock_state_is_normalized() {
        let clock = ClockSpec::new(16, 0.3).unwrap();
        for &t in &[0.0, 0.1, 1.7, 100.0, -3.2] {
            let state = clock.state_at(t).unwrap();
            let norm_sq: f64 = state.amplitudes().iter().map(|a| a.norm_sqr()).sum();
            assert!((norm_sq - 1.0).abs() <= 1e-12, "norm at t = {t}");
        }
    }

    #[test]
    fn clock_state_is_periodic() {
        let clock = ClockSpec::new(8, 1.0).unwrap();
        // Exactly representable shift: the reduction is bitwise identical.
        let a = clock.state_at(0.25).unwrap();
        let b = clock.state_at(0.25 + clock.period()).unwrap();
        assert_eq!(a, b);
        // Generic shift: identical up to round-off.
        let clock = ClockSpec::new(7, 0.3).unwrap();
        let a = clock.state_at(0.11).unwrap();
        let b = clock.state_at(0.11 + clock.period()).unwrap();
        assert!((a.fidelity(&b).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn pointer_states_are_orthonormal() {
        let clock = ClockSpec::new(8, 0.5).unwrap();
        for m1 in 0..8 {
            let p1 = clock.pointer_state(m1).unwrap();
            for m2 in 0..8 {
                let p2 = clock.pointer_state(m2).unwrap();
                let g = p1.overlap(&p2).unwrap();
                let expected = if m1 == m2 { 1.0 } else { 0.0 };
                assert!(
                    (g.norm() - expected).abs() <= 1e-13,
                    "gram[{m1},{m2}] = {g}"
                );
            }
        }
    }

    #[test]
    fn pointer_index_is_range_checked() {
        let clock = ClockSpec::new(4, 1.0).unwrap();
        assert!(matches!(
            clock.pointer_state(4),
            Err(Error::IndexOutOfRange { index: 4, len: 4 })
        ));
    }

    #[test]
    fn hand_points_at_the_right_pointer_at_tick_times() {
        let clock = ClockSpec::new(8, 0.7).unwrap();
        for m in 0..8 {
            let state = clock.state_at(m as f64 * 0.7).unwrap();
            let pointer = clock.pointer_state(m).unwrap();
            let f = pointer.fidelity(&state).unwrap();
            assert!((f - 1.0).abs() <= 1e-12, "tick {m}: fidelity {f}");
        }
    }

    #[test]
    fn readout_is_one_hot_at_tick_times() {
        let clock = ClockSpec::new(8, 1.0).unwrap();
        let q = clock
            .readout_distribution(&clock.state_at(3.0).unwrap())
            .unwrap();
        for (m, &qm) in q.iter().enumerate() {
            let expected = if m == 3 { 1.0 } else { 0.0 };
            assert!((qm - expected).abs() <= 1e-12, "q[{m}] = {qm}");
        }
    }

    #[test]
    fn readout_between_ticks_splits_between_neighbours() {
        // Halfway between ticks 2 and 3 the distribution is symmetric
        // around them, with each neighbour at 1 / (n sin(pi/(2n)))^2.
        let n = 8;
        let clock = ClockSpec::new(n, 1.0).unwrap();
        let q = clock
            .readout_distribution(&clock.state_at(2.5).unwrap())
            .unwrap();
        assert!((q.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        let expected = {
            let s = (n as f64) * (PI / (2.0 * n as f64)).sin();
            1.0 / (s * s)
        };
        assert!((q[2] - expected).abs() <= 1e-12, "q[2] = {}", q[2]);
        assert!((q[3] - expected).abs() <= 1e-12, "q[3] = {}", q[3]);
        assert!((q[2] - 0.4105).abs() <= 1e-3);
        // The split is symmetric outwards as well.
        assert!((q[1] - q[4]).abs() <= 1e-12);
        assert!((q[0] - q[5]).abs() <= 1e-12);
    }

    #[test]
    fn readout_checks_dimension() {
        let clock = ClockSpec::new(4, 1.0).unwrap();
        let other = ClockSpec::new(5, 1.0).unwrap().state_at(0.0).unwrap();
        assert!(matches!(
            clock.readout_distribution(&other),
            Err(Error::DimensionMismatch { left: 4, right: 5 })
        ));
    }

    #[test]
    fn record_entropy_counts_completed_ticks() {
        let clock = ClockSpec::new(64, 0.3).unwrap();
        for k in [1usize, 2, 16, 64] {
            let s = clock.record_entropy(k as f64 * 0.3).unwrap();
            assert_eq!(s, (k as f64).ln(), "k = {k}");
        }
        // Less than half a tick: nothing recorded yet.
        assert_eq!(clock.record_entropy(0.1).unwrap(), 0.0);
        // Full period: maximal record ln(n).
        assert_eq!(clock.record_entropy(clock.period()).unwrap(), 64f64.ln());
    }

    #[test]
    fn record_entropy_is_additive_over_runs() {
        // Two successive runs of a and b ticks leave records that add:
        // ln a + ln b = ln(ab).
        let clock = ClockSpec::new(512, 1.0).unwrap();
        let (a, b) = (12usize, 37usize);
        let s_a = clock.record_entropy(a as f64).unwrap();
        let s_b = clock.record_entropy(b as f64).unwrap();
        let s_ab = clock.record_entropy((a * b) as f64).unwrap();
        assert!((s_a + s_b - s_ab).abs() <= 1e-12);
    }

    #[test]
    fn record_entropy_rejects_out_of_range_times() {
        let clock = ClockSpec::new(8, 1.0).unwrap();
        assert!(matches!(
            clock.record_entropy(0.0),
            Err(Error::OutOfRange { .. })
        ));
        assert!(clock.record_entropy(-1.0).is_err());
        assert!(clock.record_entropy(8.0 + 1e-6).is_err());
        assert!(clock.record_entropy(f64::NAN).is_err());
    }

    #[test]
    fn autocorrelation_peaks_at_period_multiples() {
        let clock = ClockSpec::new(8, 0.7).unwrap();
        assert!((clock.autocorrelation(0.0).unwrap() - 1.0).abs() <= 1e-12);
        assert!((clock.autocorrelation(clock.period()).unwrap() - 1.0).abs() <= 1e-12);
        assert!((clock.autocorrelation(-clock.period()).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn autocorrelation_vanishes_at_whole_ticks() {
        let clock = ClockSpec::new(8, 0.7).unwrap();
        for m in 1..8 {
            let a = clock.autocorrelation(m as f64 * 0.7).unwrap();
            assert!(a <= 1e-12, "autocorrelation at tick {m} is {a}");
        }
    }

    #[test]
    fn autocorrelation_matches_geometric_sum_formula() {
        // Independent route: |sum_k exp(-i k theta)|^2 / n^2 telescopes to
        // sin^2(n theta / 2) / (n^2 sin^2(theta / 2)).
        let n = 16;
        let clock = ClockSpec::new(n, 0.25).unwrap();
        let period = clock.period();
        for i in 1..40 {
            let delta = period * i as f64 / 41.3;
            let theta = std::f64::consts::TAU * delta.rem_euclid(period) / period;
            let expected = {
                let num = (n as f64 * theta / 2.0).sin();
                let den = (n as f64) * (theta / 2.0).sin();
                (num / den) * (num / den)
            };
            let got = clock.autocorrelation(delta).unwrap();
            assert!(
                (got - expected).abs() <= 1e-12,
                "delta = {delta}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn two_level_autocorrelation_is_cosine_squared() {
        // n = 2: |(e^{-i theta} + e^{-2 i theta}) / 2|^2 = cos^2(theta/2).
        let clock = ClockSpec::new(2, 1.0).unwrap();
        for i in 0..20 {
            let delta = i as f64 * 0.1;
            let theta = PI * delta; // 2 pi delta / period, period = 2
            let expected = (theta / 2.0).cos().powi(2);
            // Compare after reducing exactly as the implementation does.
            let got = clock.autocorrelation(delta).unwrap();
            assert!(
                (got - expected.min(1.0)).abs() <= 1e-12,
                "delta = {delta}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn autocorrelation_stays_in_unit_interval() {
        let clock = ClockSpec::new(13, 0.11).unwrap();
        for i in -50..50 {
            let a = clock.autocorrelation(i as f64 * 0.037).unwrap();
            assert!((0.0..=1.0).contains(&a));
        }
    }

    #[test]
    fn clock_state_validation() {
        assert!(ClockState::new(DVector::zeros(0)).is_err());
        assert!(ClockState::new(DVector::from_element(
            4,
            Complex64::new(0.5, 0.0)
        ))
        .is_ok());
        assert!(ClockState::new(DVector::from_element(
            4,
            Complex64::new(0.6, 0.0)
        ))
        .is_err());
    }
}
