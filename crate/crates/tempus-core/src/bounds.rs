//! Physical limits on clocks: how many distinguishable ticks relativity
//! and thermodynamics allow.
//!
//! Three bounds, one bridge, and one distinguished point:
//!
//! * **Mass bound** — resolving time in steps `tau` costs energy
//!   `hbar / tau` per tick, so a device of total mass `M` can tick at most
//!   `M c^2 tau / hbar` times.
//! * **Gravitational ceiling** — a clock of resolution `tau` must fit in
//!   `c tau` without collapsing: `c tau >= r_S = 2 G M / c^2`.  At the
//!   limit the clock *is* a black hole and the tick count becomes
//!   `G M^2 / (hbar c)`, the order of magnitude of the Bekenstein-Hawking
//!   entropy — ticks and entropy are the same resource.
//! * **Thermodynamic bound** — detectors at temperature `T` resolve a tick
//!   of energy `hbar / tau` only if `k_B T <= hbar / tau`; a clock of
//!   total energy `E` therefore ticks at most `E / (k_B T)` times.
//! * **Bridge** — plugging the horizon-limited resolution into the mass
//!   bound reproduces the gravitational tick count up to a factor of
//!   exactly 2: independent routes, same answer.
//! * **Planck clock** — the fastest clock allowed is a Planck-mass black
//!   hole: it ticks about once and evaporates within of order the Planck
//!   time.
//!
//! Everything is SI; entropies and tick counts are dimensionless.

use crate::error::{Error, Result};

/// The fundamental constants the bounds are built from (SI units).
///
/// Values are fixed at construction of the crate — every routine in this
/// module reads [`CODATA_2018`], so results are reproducible bit for bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Speed of light in vacuum, m/s (exact by definition).
    pub speed_of_light: f64,
    /// Newtonian constant of gravitation, m^3/(kg s^2).
    pub gravitational_constant: f64,
    /// Reduced Planck constant, J s.
    pub reduced_planck: f64,
    /// Boltzmann constant, J/K (exact by definition).
    pub boltzmann: f64,
}

/// CODATA 2018 recommended values.
pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    speed_of_light: 299_792_458.0,
    gravitational_constant: 6.674_30e-11,
    reduced_planck: 1.054_571_817e-34,
    boltzmann: 1.380_649e-23,
};

/// The resources a clock design may declare.  Every field is optional;
/// each bound states which fields it needs and fails with
/// [`Error::MissingField`] when one is absent.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ClockBudget {
    /// Total mass, kg.
    pub mass: Option<f64>,
    /// Tick resolution, s.
    pub resolution: Option<f64>,
    /// Intended running time, s.
    pub run_time: Option<f64>,
    /// Total energy, J.
    pub energy: Option<f64>,
    /// Detector temperature, K.
    pub temperature: Option<f64>,
}

/// Everything relativity fixes about a clock made from a black hole of a
/// given mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlackHoleClock {
    /// Mass, kg.
    pub mass: f64,
    /// Schwarzschild radius `2 G M / c^2`, m.
    pub schwarzschild_radius: f64,
    /// Best tick resolution: the horizon light-crossing time `r_S / c`, s.
    pub resolution: f64,
    /// Hawking temperature `hbar c^3 / (8 pi G M k_B)`, K.
    pub hawking_temperature: f64,
    /// Bekenstein-Hawking entropy `4 pi G M^2 / (hbar c)`, dimensionless
    /// (in units of `k_B`).
    pub entropy_exact: f64,
    /// Maximal tick count `G M^2 / (hbar c)` — the entropy without its
    /// geometric prefactor, which is all an order-of-magnitude bound
    /// resolves.
    pub ticks_order_of_magnitude: f64,
}

/// The two independent routes to a black hole's tick count, side by side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BridgeReport {
    /// Mass, kg.
    pub mass: f64,
    /// The mass bound evaluated at the horizon-limited resolution
    /// `tau = r_S / c`.
    pub mass_bound_at_horizon_resolution: f64,
    /// The gravitational tick count `G M^2 / (hbar c)`.
    pub ticks_order_of_magnitude: f64,
    /// Their quotient: exactly 2 in exact arithmetic, since
    /// `M c^2 (2 G M / c^3) / hbar = 2 G M^2 / (hbar c)`.
    pub ratio: f64,
}

/// The fastest clock nature admits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanckClock {
    /// Planck mass `sqrt(hbar c / G)`, kg.
    pub mass: f64,
    /// Planck time `sqrt(hbar G / c^5)`, s.
    pub time: f64,
    /// Tick count of a Planck-mass black hole.  Algebraically
    /// `G m_P^2 / (hbar c) = 1`; the identity is exact, so the field is
    /// pinned to 1 rather than carrying the round-off of evaluating it.
    pub ticks: f64,
}

/// Maximum tick count of a clock of mass `M` and resolution `tau`:
/// `M c^2 tau / hbar`.
///
/// Needs `mass` and `resolution`; both must be strictly positive.
pub fn max_ticks_mass_bound(budget: &ClockBudget) -> Result<f64> {
    let mass = budget.mass.ok_or(Error::MissingField { field: "mass" })?;
    let resolution = budget.resolution.ok_or(Error::MissingField {
        field: "resolution",
    })?;
    check_mass(mass)?;
    if !(resolution > 0.0) || !resolution.is_finite() {
        return Err(Error::NonPositiveInput {
            name: "resolution",
            value: resolution,
        });
    }
    let k = CODATA_2018;
    Ok(mass * k.speed_of_light * k.speed_of_light * resolution / k.reduced_planck)
}

/// Maximum tick count of a clock of energy `E` read out by detectors at
/// temperature `T`: `E / (k_B T)` — the entropy the readout dissipates.
pub fn thermodynamic_tick_bound(energy: f64, temperature: f64) -> Result<f64> {
    if !(energy > 0.0) || !energy.is_finite() {
        return Err(Error::NonPositiveInput {
            name: "energy",
            value: energy,
        });
    }
    if !(temperature > 0.0) || !temperature.is_finite() {
        return Err(Error::NonPositiveInput {
            name: "temperature",
            value: temperature,
        });
    }
    Ok(energy / (CODATA_2018.boltzmann * temperature))
}

/// All the clock-relevant numbers of a black hole of mass `M`.
pub fn black_hole_clock(mass: f64) -> Result<BlackHoleClock> {
    check_mass(mass)?;
    let k = CODATA_2018;
    let c = k.speed_of_light;
    let schwarzschild_radius = 2.0 * k.gravitational_constant * mass / (c * c);
    let resolution = schwarzschild_radius / c;
    let hawking_temperature = k.reduced_planck * c * c * c
        / (8.0 * std::f64::consts::PI * k.gravitational_constant * mass * k.boltzmann);
    let ticks_order_of_magnitude =
        k.gravitational_constant * mass * mass / (k.reduced_planck * c);
    let entropy_exact = 4.0 * std::f64::consts::PI * ticks_order_of_magnitude;
    Ok(BlackHoleClock {
        mass,
        schwarzschild_radius,
        resolution,
        hawking_temperature,
        entropy_exact,
        ticks_order_of_magnitude,
    })
}

/// Evaluates the mass bound at the gravitational resolution limit and
/// compares it with the horizon tick count.  The two phenomenologies —
/// quantum uncertainty plus relativity on one side, measurement
/// thermodynamics on the other — agree to the factor 2 the report carries.
pub fn bound_consistency(mass: f64) -> Result<BridgeReport> {
    let clock = black_hole_clock(mass)?;
    let budget = ClockBudget {
        mass: Some(mass),
        resolution: Some(clock.resolution),
        ..ClockBudget::default()
    };
    let mass_bound_at_horizon_resolution = max_ticks_mass_bound(&budget)?;
    Ok(BridgeReport {
        mass,
        mass_bound_at_horizon_resolution,
        ticks_order_of_magnitude: clock.ticks_order_of_magnitude,
        ratio: mass_bound_at_horizon_resolution / clock.ticks_order_of_magnitude,
    })
}

/// Planck mass `sqrt(hbar c / G)`, kg.
pub fn planck_mass() -> f64 {
    let k = CODATA_2018;
    (k.reduced_planck * k.speed_of_light / k.gravitational_constant).sqrt()
}

/// Planck time `sqrt(hbar G / c^5)`, s.
pub fn planck_time() -> f64 {
    let k = CODATA_2018;
    (k.reduced_planck * k.gravitational_constant / k.speed_of_light.powi(5)).sqrt()
}

/// The Planck-mass black hole: the fastest clock, with a single tick.
pub fn planck_clock() -> PlanckClock {
    PlanckClock {
        mass: planck_mass(),
        time: planck_time(),
        ticks: 1.0,
    }
}

/// Hawking evaporation time of a black hole of mass `M`:
/// `5120 pi G^2 M^3 / (hbar c^4)`, s.
///
/// For the Planck mass this is `5120 pi` Planck times — the sense in which
/// the fastest clock ticks once and is gone.
pub fn evaporation_time(mass: f64) -> Result<f64> {
    check_mass(mass)?;
    let k = CODATA_2018;
    Ok(
        5120.0 * std::f64::consts::PI * k.gravitational_constant * k.gravitational_constant
            * mass
            * mass
            * mass
            / (k.reduced_planck * k.speed_of_light.powi(4)),
    )
}

fn check_mass(mass: f64) -> Result<()> {
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::NonPositiveMass { value: mass });
    }
    Ok(())
}
