//! Cross-module checks against independent numerics: the closed-form
//! time average is validated against direct quadrature of the evolving
//! projector, and the experiment pipelines are exercised end to end on
//! ensembles none of the unit tests touch.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use tempus_core::clock::ClockSpec;
use tempus_core::demon::{demon_experiment, DemonConfig};
use tempus_core::echo;
use tempus_core::quantum::{build_gue, build_spin_chain, QuantumState};
use tempus_core::quench::{log_growth_fit, QuenchSetup};
use tempus_core::DensityMatrix;

/// Average of the evolving projector over [0, t], computed by Simpson
/// quadrature in the energy eigenbasis. Completely independent of the
/// closed-form kernel: it only uses the propagator phases.
fn quadrature_averaged_state(setup: &QuenchSetup, t: f64, panels: usize) -> DMatrix<Complex64> {
    assert!(panels % 2 == 0, "Simpson quadrature needs an even panel count");
    let dim = setup.dim();
    let energies = setup.spectral().eigenvalues();
    let amplitudes = setup.amplitudes();
    let h = t / panels as f64;

    let mut sum = DMatrix::<Complex64>::zeros(dim, dim);
    for k in 0..=panels {
        let s = k as f64 * h;
        let weight = if k == 0 || k == panels {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let v = DVector::from_iterator(
            dim,
            (0..dim).map(|n| amplitudes[n] * Complex64::cis(-energies[n] * s)),
        );
        let outer = &v * v.adjoint();
        sum += outer * Complex64::new(weight, 0.0);
    }
    sum * Complex64::new(h / (3.0 * t), 0.0)
}

fn entropy_of(matrix: &DMatrix<Complex64>) -> f64 {
    let rho = DensityMatrix::new(matrix.clone()).expect("quadrature average is a valid state");
    tempus_core::von_neumann_entropy(&rho).expect("entropy of valid state")
}

#[test]
fn closed_form_average_matches_quadrature() {
    let h = build_gue(24, 42).unwrap();
    let psi = QuantumState::basis_vector(24, 0).unwrap();
    let setup = QuenchSetup::new(&h, &psi).unwrap();
    let t = 3.0 * setup.boltzmann_time();

    let numeric = quadrature_averaged_state(&setup, t, 8192);
    let closed = setup.time_averaged_density_matrix(t).unwrap();

    let max_dev = (&numeric - closed.entries())
        .iter()
        .map(|z| z.norm())
        .fold(0.0_f64, f64::max);
    assert!(max_dev <= 1e-8, "closed form deviates from quadrature by {max_dev:e}");

    let s_numeric = entropy_of(&numeric);
    let s_closed = setup.entropy_at(t).unwrap();
    assert!(
        (s_numeric - s_closed).abs() <= 1e-8,
        "entropies disagree: quadrature {s_numeric} vs closed form {s_closed}"
    );
}

#[test]
fn quadrature_agreement_holds_for_a_spread_out_initial_state() {
    let h = build_gue(16, 7).unwrap();
    let psi = QuantumState::uniform(16).unwrap();
    let setup = QuenchSetup::new(&h, &psi).unwrap();
    let t = 1.5 * setup.boltzmann_time();

    let numeric = quadrature_averaged_state(&setup, t, 4096);
    let closed = setup.time_averaged_density_matrix(t).unwrap();
    let max_dev = (&numeric - closed.entries())
        .iter()
        .map(|z| z.norm())
        .fold(0.0_f64, f64::max);
    assert!(max_dev <= 1e-8, "deviation {max_dev:e}");
}

#[test]
fn spin_chain_quench_saturates_toward_the_diagonal_entropy() {
    let h = build_spin_chain(8, 1.0, 0.9, 0.5).unwrap();
    // Domain-wall-like product state: a single computational basis vector.
    let psi = QuantumState::basis_vector(256, 0b1010_1010).unwrap();
    let setup = QuenchSetup::new(&h, &psi).unwrap();
    let tau = setup.boltzmann_time();

    let early = setup.entropy_at(0.05 * tau).unwrap();
    let late = setup.entropy_at(1e6 * tau).unwrap();
    let ceiling = setup.diagonal_entropy();

    assert!(early < late, "entropy should grow from {early} to {late}");
    assert!(late <= ceiling + 1e-9);
    assert!(
        late >= 0.9 * ceiling,
        "late-time entropy {late} should approach the ceiling {ceiling}"
    );
}

#[test]
fn log_growth_fit_sees_positive_slope_on_a_random_matrix_quench() {
    let h = build_gue(64, 11).unwrap();
    let psi = QuantumState::basis_vector(64, 0).unwrap();
    let setup = QuenchSetup::new(&h, &psi).unwrap();
    let tau = setup.boltzmann_time();

    let times: Vec<f64> = tempus_core::grid::log_spaced(0.5 * tau, 200.0 * tau, 48).unwrap();
    let curve = setup.entropy_curve(&times).unwrap();
    let fit = log_growth_fit(&curve, tau, (5.0, 50.0)).unwrap();

    assert!(fit.slope > 0.0, "slope {} should be positive", fit.slope);
    assert!(fit.r_squared > 0.5, "r^2 {} too low for a growth window", fit.r_squared);
    assert!(fit.samples >= 8);
}

#[test]
fn echo_width_sits_at_the_inverse_energy_width_scale() {
    let h = build_gue(64, 5).unwrap();
    let psi = QuantumState::basis_vector(64, 0).unwrap();
    let setup = QuenchSetup::new(&h, &psi).unwrap();
    let tau = setup.boltzmann_time();

    let deltas = tempus_core::grid::lin_spaced(-4.0 * tau, 4.0 * tau, 321).unwrap();
    let curve = echo::echo_curve(&setup, &deltas).unwrap();
    let width = echo::half_width(&curve).unwrap();

    assert!(
        (0.3 * tau..=3.0 * tau).contains(&width),
        "half width {width} should be within a factor of a few of {tau}"
    );
}

#[test]
fn demon_and_clock_agree_on_the_record_entropy_at_whole_ticks() {
    let h = build_gue(8, 2).unwrap();
    let psi = QuantumState::basis_vector(8, 0).unwrap();
    let setup = QuenchSetup::new(&h, &psi).unwrap();

    let tau = 0.7;
    let ticks = 16;
    let clock = ClockSpec::new(ticks, tau).unwrap();
    for k in [1usize, 2, 5, 16] {
        let t_run = k as f64 * tau;
        let config = DemonConfig {
            tau_clock: tau,
            t_run,
            samples: 4,
            seed: 9,
            perfect_clock: false,
        };
        let ledger = demon_experiment(&setup, &config).unwrap();
        let from_clock = clock.record_entropy(t_run).unwrap();
        assert!(
            (ledger.record_entropy - from_clock).abs() <= 1e-12,
            "k = {k}: demon {} vs clock {}",
            ledger.record_entropy,
            from_clock
        );
    }
}

#[test]
fn coarse_demon_clock_erases_less_than_it_learns() {
    // With a very coarse clock the reversal barely works and the residual
    // entropy stays close to the fully dephased value; with a fine clock it
    // collapses toward zero. Both ends bracket the record cost.
    let h = build_gue(32, 4).unwrap();
    let psi = QuantumState::basis_vector(32, 0).unwrap();
    let setup = QuenchSetup::new(&h, &psi).unwrap();
    let tau_b = setup.boltzmann_time();
    let ceiling = setup.diagonal_entropy();

    let run = |tau_clock: f64| {
        let config = DemonConfig {
            tau_clock,
            t_run: 50.0 * tau_b,
            samples: 512,
            seed: 21,
            perfect_clock: false,
        };
        demon_experiment(&setup, &config).unwrap()
    };

    let coarse = run(20.0 * tau_b);
    let fine = run(0.02 * tau_b);

    assert!(coarse.residual_entropy >= 0.5 * ceiling);
    assert!(fine.residual_entropy <= 0.1 * ceiling);
    assert!(fine.mean_fidelity > coarse.mean_fidelity);
    assert!(fine.record_entropy > coarse.record_entropy);
}
