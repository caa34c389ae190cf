//! The five experiment runners.  Each one merges the optional config file,
//! validates everything up front (aggregating every problem into a single
//! config error), computes, and lays the results out as a [`ResultTable`].

use tempus_core::bounds;
use tempus_core::clock::ClockSpec;
use tempus_core::demon::{demon_experiment, DemonConfig, DemonLedger};
use tempus_core::echo;
use tempus_core::quench::log_growth_fit;
use tempus_core::Error as CoreError;

use crate::cli::{BoundsArgs, ClockArgs, DemonArgs, EchoArgs, OutputArgs, QuenchArgs};
use crate::config::ConfigBag;
use crate::error::CliError;
use crate::gridspec::GridSpec;
use crate::system::SystemPlan;
use crate::table::{format_float, ResultTable};

const DEFAULT_QUENCH_TIMES: &str = "0.1:10000:64:log";
const DEFAULT_ECHO_DELTAS: &str = "-4:4:161:lin";
const DEFAULT_DEMON_TAU_GRID: &str = "0.05:10:12:log";
const DEFAULT_DEMON_T_RUN: f64 = 50.0;
const DEFAULT_DEMON_SAMPLES: usize = 256;
const DEFAULT_CLOCK_TICKS: usize = 8;
const DEFAULT_CLOCK_TAU: f64 = 1.0;
const DEFAULT_BOUNDS_MASSES: &str = "1e-10:1e40:11:log";

/// Units for time-like grids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Unit {
    /// Multiples of the dephasing time of the prepared state.
    Taub,
    /// Plain numbers in the Hamiltonian's inverse energy units.
    Abs,
}

impl Unit {
    fn name(self) -> &'static str {
        match self {
            Unit::Taub => "taub",
            Unit::Abs => "abs",
        }
    }
}

fn parse_unit(raw: Option<&str>, problems: &mut Vec<String>) -> Unit {
    match raw.unwrap_or("taub") {
        "taub" => Unit::Taub,
        "abs" => Unit::Abs,
        other => {
            problems.push(format!("unknown unit '{other}' (expected taub or abs)"));
            Unit::Taub
        }
    }
}

fn validate_format(raw: Option<&str>, problems: &mut Vec<String>) {
    match raw.unwrap_or("csv") {
        "csv" | "json" => {}
        other => problems.push(format!("unknown format '{other}' (expected csv or json)")),
    }
}

fn parse_grid(raw: &str, flag: &str, problems: &mut Vec<String>) -> Option<GridSpec> {
    match raw.parse::<GridSpec>() {
        Ok(spec) => Some(spec),
        Err(why) => {
            problems.push(format!("--{flag}: {why}"));
            None
        }
    }
}

/// Converts grid points in the chosen unit to absolute times.
fn to_absolute(points: Vec<f64>, unit: Unit, tau_b: f64) -> Result<Vec<f64>, CliError> {
    match unit {
        Unit::Abs => Ok(points),
        Unit::Taub => {
            if !tau_b.is_finite() {
                return Err(CliError::Config(
                    "unit taub is undefined here: the prepared state has zero energy width \
                     (its dephasing time is infinite); pass --unit abs"
                        .into(),
                ));
            }
            Ok(points.into_iter().map(|x| x * tau_b).collect())
        }
    }
}

fn new_table<S: Into<String>>(command: &str, columns: Vec<S>) -> ResultTable {
    let mut t = ResultTable::new(columns);
    t.set_meta("command", command);
    t.set_meta("version", env!("CARGO_PKG_VERSION"));
    t
}

fn add_system_meta(table: &mut ResultTable, plan: &SystemPlan) {
    for (k, v) in plan.meta() {
        table.set_meta(k, v);
    }
}

fn fail_if_any(problems: Vec<String>) -> Result<(), CliError> {
    if problems.is_empty() {
        Ok(())
    } else {
        Err(CliError::aggregate(problems))
    }
}

// ---------------------------------------------------------------------------
// quench
// ---------------------------------------------------------------------------

pub fn run_quench(mut args: QuenchArgs) -> Result<(ResultTable, OutputArgs), CliError> {
    let mut problems = Vec::new();
    if let Some(path) = args.output.config.clone() {
        let mut bag = ConfigBag::load(&path)?;
        args.system.apply_config(&mut bag, &mut problems);
        bag.fill(&mut args.times, "times", &mut problems);
        bag.fill(&mut args.unit, "unit", &mut problems);
        bag.fill(&mut args.fit_window, "fit-window", &mut problems);
        args.output.apply_config(&mut bag, &mut problems);
        bag.finish(&mut problems);
    }

    let unit = parse_unit(args.unit.as_deref(), &mut problems);
    validate_format(args.output.format.as_deref(), &mut problems);
    let times_raw = args.times.clone().unwrap_or_else(|| DEFAULT_QUENCH_TIMES.into());
    let spec = parse_grid(&times_raw, "times", &mut problems);
    let window = match args.fit_window.as_deref() {
        None => None,
        Some(raw) => match parse_fit_window(raw) {
            Ok(w) => Some(w),
            Err(why) => {
                problems.push(why);
                None
            }
        },
    };
    let plan = SystemPlan::resolve(&args.system, &mut problems);
    fail_if_any(problems)?;
    let (plan, spec) = (plan.expect("no problems"), spec.expect("no problems"));

    let setup = plan.build()?;
    let tau_b = setup.boltzmann_time();
    let grid = spec.materialize().map_err(CliError::config_from)?;
    let times = to_absolute(grid, unit, tau_b)?;
    if times.first().is_some_and(|&t| !(t > 0.0)) {
        return Err(CliError::Config(format!(
            "--times must start above zero for a time average, found {}",
            format_float(times[0])
        )));
    }

    let curve = setup.entropy_curve(&times)?;

    let mut table = new_table("quench", vec!["t", "t_over_tauB", "S_dt", "S_diag", "bound_gap"]);
    add_system_meta(&mut table, &plan);
    table.set_meta("times", &times_raw);
    table.set_meta("unit", unit.name());
    table.set_meta_float("tau_B", tau_b);
    table.set_meta_float("energy_mean", setup.statistics().mean);
    table.set_meta_float("energy_width", setup.statistics().width);
    table.set_meta_float("diagonal_entropy", setup.diagonal_entropy());

    if let Some((lo, hi)) = window {
        table.set_meta("fit-window", format!("{}:{}", format_float(lo), format_float(hi)));
        let fit = log_growth_fit(&curve, tau_b, (lo, hi))?;
        table.set_meta_float("fit_slope", fit.slope);
        table.set_meta_float("fit_intercept", fit.intercept);
        table.set_meta_float("fit_r_squared", fit.r_squared);
        table.set_meta("fit_samples", fit.samples.to_string());
    }

    let s_diag = setup.diagonal_entropy();
    for (&t, &s) in curve.times().iter().zip(curve.entropies()) {
        table.push_row(vec![t, t / tau_b, s, s_diag, s_diag - s]);
    }
    Ok((table, args.output))
}

fn parse_fit_window(raw: &str) -> Result<(f64, f64), String> {
    let bad = |why: &str| format!("--fit-window '{raw}' invalid: {why} (expected lo:hi)");
    let (lo, hi) = raw.split_once(':').ok_or_else(|| bad("no ':'"))?;
    let lo: f64 = lo.parse().map_err(|_| bad("lo is not a number"))?;
    let hi: f64 = hi.parse().map_err(|_| bad("hi is not a number"))?;
    if !(lo > 0.0) || !(hi > lo) || !hi.is_finite() {
        return Err(bad("need 0 < lo < hi"));
    }
    Ok((lo, hi))
}

// ---------------------------------------------------------------------------
// echo
// ---------------------------------------------------------------------------

pub fn run_echo(mut args: EchoArgs) -> Result<(ResultTable, OutputArgs), CliError> {
    let mut problems = Vec::new();
    if let Some(path) = args.output.config.clone() {
        let mut bag = ConfigBag::load(&path)?;
        args.system.apply_config(&mut bag, &mut problems);
        bag.fill(&mut args.deltas, "deltas", &mut problems);
        bag.fill(&mut args.unit, "unit", &mut problems);
        args.output.apply_config(&mut bag, &mut problems);
        bag.finish(&mut problems);
    }

    let unit = parse_unit(args.unit.as_deref(), &mut problems);
    validate_format(args.output.format.as_deref(), &mut problems);
    let deltas_raw = args.deltas.clone().unwrap_or_else(|| DEFAULT_ECHO_DELTAS.into());
    let spec = parse_grid(&deltas_raw, "deltas", &mut problems);
    let plan = SystemPlan::resolve(&args.system, &mut problems);
    fail_if_any(problems)?;
    let (plan, spec) = (plan.expect("no problems"), spec.expect("no problems"));

    let setup = plan.build()?;
    let tau_b = setup.boltzmann_time();
    let grid = spec.materialize().map_err(CliError::config_from)?;
    let deltas = to_absolute(grid, unit, tau_b)?;

    let curve = echo::echo_curve(&setup, &deltas)?;
    let curvature = match echo::echo_curvature(&setup) {
        Ok(c) => c,
        // Zero energy width: F is identically 1 and genuinely flat.
        Err(CoreError::ZeroWidth) => 0.0,
        Err(e) => return Err(e.into()),
    };
    let half_width = match echo::half_width(&curve) {
        Ok(w) => w,
        // The grid never reaches F = 1/2; report "no width on this grid".
        Err(CoreError::NotBracketed) => f64::NAN,
        Err(e) => return Err(e.into()),
    };

    let mut table = new_table("echo", vec!["delta", "delta_over_tauB", "fidelity"]);
    add_system_meta(&mut table, &plan);
    table.set_meta("deltas", &deltas_raw);
    table.set_meta("unit", unit.name());
    table.set_meta_float("tau_B", tau_b);
    table.set_meta_float("energy_width", setup.statistics().width);
    table.set_meta_float("curvature", curvature);
    table.set_meta_float("half_width", half_width);

    for (&d, &f) in curve.deltas().iter().zip(curve.fidelities()) {
        table.push_row(vec![d, d / tau_b, f]);
    }
    Ok((table, args.output))
}

// ---------------------------------------------------------------------------
// clock
// ---------------------------------------------------------------------------

pub fn run_clock(mut args: ClockArgs) -> Result<(ResultTable, OutputArgs), CliError> {
    let mut problems = Vec::new();
    if let Some(path) = args.output.config.clone() {
        let mut bag = ConfigBag::load(&path)?;
        bag.fill(&mut args.ticks, "ticks", &mut problems);
        bag.fill(&mut args.tau, "tau", &mut problems);
        bag.fill(&mut args.times, "times", &mut problems);
        bag.fill(&mut args.t_run, "t-run", &mut problems);
        args.output.apply_config(&mut bag, &mut problems);
        bag.finish(&mut problems);
    }

    validate_format(args.output.format.as_deref(), &mut problems);
    let ticks = args.ticks.unwrap_or(DEFAULT_CLOCK_TICKS);
    let tau = args.tau.unwrap_or(DEFAULT_CLOCK_TAU);
    let times_raw = args
        .times
        .clone()
        .unwrap_or_else(|| format!("0:{ticks}:{}:lin", 4 * ticks + 1));
    let spec = parse_grid(&times_raw, "times", &mut problems);
    let t_run = args.t_run.unwrap_or(ticks as f64);
    if !(t_run > 0.0) || t_run > ticks as f64 {
        problems.push(format!(
            "--t-run must lie in (0, ticks] periods of the resolution, found {t_run}"
        ));
    }
    fail_if_any(problems)?;
    let spec = spec.expect("no problems");

    let clock = ClockSpec::new(ticks, tau).map_err(CliError::config_from)?;
    let grid = spec.materialize().map_err(CliError::config_from)?;

    let mut columns = vec!["t".to_string()];
    columns.extend((0..ticks).map(|m| format!("p{m}")));
    let mut table = new_table("clock", columns);
    table.set_meta("ticks", ticks.to_string());
    table.set_meta_float("tau", tau);
    table.set_meta("times", &times_raw);
    table.set_meta("t-run", format_float(t_run));
    table.set_meta_float("period", clock.period());
    let record = clock.record_entropy(t_run * tau).map_err(CliError::config_from)?;
    table.set_meta_float("record_entropy", record);

    for &x in &grid {
        let t = x * tau;
        let state = clock.state_at(t)?;
        let q = clock.readout_distribution(&state)?;
        let mut row = Vec::with_capacity(1 + ticks);
        row.push(t);
        row.extend(q);
        table.push_row(row);
    }
    Ok((table, args.output))
}

// ---------------------------------------------------------------------------
// demon
// ---------------------------------------------------------------------------

pub fn run_demon(mut args: DemonArgs) -> Result<(ResultTable, OutputArgs), CliError> {
    let mut problems = Vec::new();
    if let Some(path) = args.output.config.clone() {
        let mut bag = ConfigBag::load(&path)?;
        args.system.apply_config(&mut bag, &mut problems);
        bag.fill(&mut args.tau_grid, "tau-grid", &mut problems);
        bag.fill(&mut args.t_run, "t-run", &mut problems);
        bag.fill(&mut args.samples, "samples", &mut problems);
        bag.fill_flag(&mut args.include_perfect, "include-perfect", &mut problems);
        bag.fill(&mut args.unit, "unit", &mut problems);
        args.output.apply_config(&mut bag, &mut problems);
        bag.finish(&mut problems);
    }

    let unit = parse_unit(args.unit.as_deref(), &mut problems);
    validate_format(args.output.format.as_deref(), &mut problems);
    let tau_grid_raw = args
        .tau_grid
        .clone()
        .unwrap_or_else(|| DEFAULT_DEMON_TAU_GRID.into());
    let spec = parse_grid(&tau_grid_raw, "tau-grid", &mut problems);
    let t_run_in = args.t_run.unwrap_or(DEFAULT_DEMON_T_RUN);
    if !(t_run_in > 0.0) || !t_run_in.is_finite() {
        problems.push(format!("--t-run must be positive and finite, found {t_run_in}"));
    }
    let samples = args.samples.unwrap_or(DEFAULT_DEMON_SAMPLES);
    if samples == 0 {
        problems.push("--samples must be at least 1".into());
    }
    let plan = SystemPlan::resolve(&args.system, &mut problems);
    fail_if_any(problems)?;
    let (plan, spec) = (plan.expect("no problems"), spec.expect("no problems"));

    let setup = plan.build()?;
    let tau_b = setup.boltzmann_time();
    let grid = spec.materialize().map_err(CliError::config_from)?;
    let tau_clocks = to_absolute(grid, unit, tau_b)?;
    if tau_clocks.first().is_some_and(|&tc| !(tc > 0.0)) {
        return Err(CliError::Config(format!(
            "--tau-grid resolutions must be positive, found {}",
            format_float(tau_clocks[0])
        )));
    }
    let t_run = to_absolute(vec![t_run_in], unit, tau_b)?[0];

    let seed = plan.seed();
    let run = |tau_clock: f64, perfect: bool| -> Result<DemonLedger, CliError> {
        let config = DemonConfig {
            tau_clock,
            t_run,
            samples,
            seed,
            perfect_clock: perfect,
        };
        Ok(demon_experiment(&setup, &config)?)
    };

    let mut table = new_table(
        "demon",
        vec![
            "tau_clock",
            "tau_over_tauB",
            "mean_fidelity",
            "S_system",
            "S_record",
            "residual_entropy",
            "fidelity_std_error",
        ],
    );
    add_system_meta(&mut table, &plan);
    table.set_meta("tau-grid", &tau_grid_raw);
    table.set_meta("t-run", format_float(t_run_in));
    table.set_meta("samples", samples.to_string());
    table.set_meta(
        "include-perfect",
        if args.include_perfect { "true" } else { "false" },
    );
    table.set_meta("unit", unit.name());
    table.set_meta_float("tau_B", tau_b);
    table.set_meta_float("t_run_abs", t_run);
    table.set_meta_float("diagonal_entropy", setup.diagonal_entropy());

    let mut push = |tau_clock: f64, ledger: &DemonLedger| {
        table.push_row(vec![
            tau_clock,
            tau_clock / tau_b,
            ledger.mean_fidelity,
            ledger.system_entropy,
            ledger.record_entropy,
            ledger.residual_entropy,
            ledger.fidelity_std_error,
        ]);
    };

    if args.include_perfect {
        let ledger = run(0.0, true)?;
        push(0.0, &ledger);
    }
    for &tau_clock in &tau_clocks {
        let ledger = run(tau_clock, false)?;
        push(tau_clock, &ledger);
    }
    Ok((table, args.output))
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

pub fn run_bounds(mut args: BoundsArgs) -> Result<(ResultTable, OutputArgs), CliError> {
    let mut problems = Vec::new();
    if let Some(path) = args.output.config.clone() {
        let mut bag = ConfigBag::load(&path)?;
        bag.fill(&mut args.masses, "masses", &mut problems);
        bag.fill(&mut args.energy, "energy", &mut problems);
        bag.fill(&mut args.temperature, "temperature", &mut problems);
        args.output.apply_config(&mut bag, &mut problems);
        bag.finish(&mut problems);
    }

    validate_format(args.output.format.as_deref(), &mut problems);
    let masses_raw = args
        .masses
        .clone()
        .unwrap_or_else(|| DEFAULT_BOUNDS_MASSES.into());
    let spec = parse_grid(&masses_raw, "masses", &mut problems);
    if args.energy.is_some() != args.temperature.is_some() {
        problems.push("--energy and --temperature must be given together".into());
    }
    fail_if_any(problems)?;
    let spec = spec.expect("no problems");

    let mut masses = spec.materialize().map_err(CliError::config_from)?;
    let planck_mass = bounds::planck_mass();
    masses.push(planck_mass);
    masses.sort_by(f64::total_cmp);
    masses.dedup();

    let mut table = new_table(
        "bounds",
        vec![
            "mass_kg",
            "mass_over_planck_mass",
            "schwarzschild_radius_m",
            "resolution_s",
            "resolution_over_planck_time",
            "hawking_temperature_K",
            "entropy_exact",
            "ticks_order_of_magnitude",
            "mass_bound_at_horizon",
            "consistency_ratio",
            "evaporation_time_s",
        ],
    );
    table.set_meta("masses", &masses_raw);
    let planck = bounds::planck_clock();
    table.set_meta_float("planck_mass_kg", planck.mass);
    table.set_meta_float("planck_time_s", planck.time);
    table.set_meta_float("planck_ticks", planck.ticks);
    if let (Some(energy), Some(temperature)) = (args.energy, args.temperature) {
        table.set_meta_float("energy_J", energy);
        table.set_meta_float("temperature_K", temperature);
        let ticks = bounds::thermodynamic_tick_bound(energy, temperature)
            .map_err(CliError::config_from)?;
        table.set_meta_float("thermodynamic_tick_bound", ticks);
    }

    let planck_time = bounds::planck_time();
    for &mass in &masses {
        let bh = bounds::black_hole_clock(mass).map_err(CliError::config_from)?;
        let bridge = bounds::bound_consistency(mass).map_err(CliError::config_from)?;
        let evaporation = bounds::evaporation_time(mass).map_err(CliError::config_from)?;
        table.push_row(vec![
            bh.mass,
            bh.mass / planck_mass,
            bh.schwarzschild_radius,
            bh.resolution,
            bh.resolution / planck_time,
            bh.hawking_temperature,
            bh.entropy_exact,
            bh.ticks_order_of_magnitude,
            bridge.mass_bound_at_horizon_resolution,
            bridge.ratio,
            evaporation,
        ]);
    }
    Ok((table, args.output))
}
