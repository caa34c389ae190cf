//! Resolving `SystemArgs` into a ready quench setup plus the metadata that
//! makes the run reproducible from the artifact alone.

use nalgebra::DVector;
use num_complex::Complex64;

use tempus_core::quantum::MAX_DENSE_DIM;
use tempus_core::quench::QuenchSetup;
use tempus_core::{build_goe, build_gue, build_spin_chain, diagonalize, QuantumState};

use crate::cli::SystemArgs;
use crate::error::CliError;
use crate::table::format_float;

const DEFAULT_DIM: usize = 64;
const DEFAULT_LENGTH: usize = 8;
const DEFAULT_COUPLING: f64 = 1.0;
const DEFAULT_TRANSVERSE: f64 = 0.9;
const DEFAULT_LONGITUDINAL: f64 = 0.5;
const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ensemble {
    Gue,
    Goe,
    SpinChain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Initial {
    Basis,
    Uniform,
    Eigenstate,
}

/// Validated system choice, ready to build.
#[derive(Debug)]
pub struct SystemPlan {
    ensemble: Ensemble,
    dim: usize,
    length: usize,
    coupling: f64,
    transverse: f64,
    longitudinal: f64,
    seed: u64,
    initial: Initial,
    initial_index: usize,
}

impl SystemPlan {
    /// Checks the argument set for contradictions and fills defaults.
    /// Every problem found is pushed; `None` is returned iff any were.
    pub fn resolve(args: &SystemArgs, problems: &mut Vec<String>) -> Option<Self> {
        let before = problems.len();

        let ensemble = match args.ensemble.as_deref().unwrap_or("gue") {
            "gue" => Ensemble::Gue,
            "goe" => Ensemble::Goe,
            "spin-chain" => Ensemble::SpinChain,
            other => {
                problems.push(format!(
                    "unknown ensemble '{other}' (expected gue, goe, or spin-chain)"
                ));
                Ensemble::Gue
            }
        };

        // Flags must match the family, so a config can't silently carry a
        // setting that has no effect.
        if ensemble == Ensemble::SpinChain {
            if args.dim.is_some() {
                problems.push("--dim applies to gue/goe; use --length for spin-chain".into());
            }
        } else {
            if args.length.is_some() {
                problems.push("--length applies to spin-chain; use --dim for gue/goe".into());
            }
            for (name, given) in [
                ("--coupling", args.coupling.is_some()),
                ("--transverse-field", args.transverse_field.is_some()),
                ("--longitudinal-field", args.longitudinal_field.is_some()),
            ] {
                if given {
                    problems.push(format!("{name} applies to spin-chain only"));
                }
            }
        }

        let length = args.length.unwrap_or(DEFAULT_LENGTH);
        let dim = match ensemble {
            Ensemble::SpinChain => {
                if !(2..=MAX_DENSE_DIM.trailing_zeros() as usize).contains(&length) {
                    problems.push(format!(
                        "--length must be in 2..={}, found {length}",
                        MAX_DENSE_DIM.trailing_zeros()
                    ));
                    0
                } else {
                    1usize << length
                }
            }
            _ => {
                let dim = args.dim.unwrap_or(DEFAULT_DIM);
                if !(2..=MAX_DENSE_DIM).contains(&dim) {
                    problems.push(format!("--dim must be in 2..={MAX_DENSE_DIM}, found {dim}"));
                }
                dim
            }
        };

        let initial = match args.initial.as_deref().unwrap_or("basis") {
            "basis" => Initial::Basis,
            "uniform" => Initial::Uniform,
            "eigenstate" => Initial::Eigenstate,
            other => {
                problems.push(format!(
                    "unknown initial state '{other}' (expected basis, uniform, or eigenstate)"
                ));
                Initial::Basis
            }
        };
        if initial == Initial::Uniform && args.initial_index.is_some() {
            problems.push("--initial-index has no effect with --initial uniform".into());
        }
        let initial_index = args.initial_index.unwrap_or(0);
        if dim > 0 && initial_index >= dim {
            problems.push(format!(
                "--initial-index {initial_index} out of range for dimension {dim}"
            ));
        }

        for (name, value) in [
            ("--coupling", args.coupling.unwrap_or(DEFAULT_COUPLING)),
            ("--transverse-field", args.transverse_field.unwrap_or(DEFAULT_TRANSVERSE)),
            (
                "--longitudinal-field",
                args.longitudinal_field.unwrap_or(DEFAULT_LONGITUDINAL),
            ),
        ] {
            if !value.is_finite() {
                problems.push(format!("{name} must be finite, found {value}"));
            }
        }

        if problems.len() > before {
            return None;
        }
        Some(SystemPlan {
            ensemble,
            dim,
            length,
            coupling: args.coupling.unwrap_or(DEFAULT_COUPLING),
            transverse: args.transverse_field.unwrap_or(DEFAULT_TRANSVERSE),
            longitudinal: args.longitudinal_field.unwrap_or(DEFAULT_LONGITUDINAL),
            seed: args.seed.unwrap_or(DEFAULT_SEED),
            initial,
            initial_index,
        })
    }

    /// The resolved seed, for experiments that sample.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Builds the Hamiltonian and initial state and diagonalizes.
    /// Construction errors count as config errors: they can only come from
    /// the inputs.
    pub fn build(&self) -> Result<QuenchSetup, CliError> {
        let h = match self.ensemble {
            Ensemble::Gue => build_gue(self.dim, self.seed),
            Ensemble::Goe => build_goe(self.dim, self.seed),
            Ensemble::SpinChain => {
                build_spin_chain(self.length, self.coupling, self.transverse, self.longitudinal)
            }
        }
        .map_err(CliError::config_from)?;

        match self.initial {
            Initial::Basis => {
                let psi = QuantumState::basis_vector(self.dim, self.initial_index)
                    .map_err(CliError::config_from)?;
                QuenchSetup::new(&h, &psi).map_err(CliError::config_from)
            }
            Initial::Uniform => {
                let psi = QuantumState::uniform(self.dim).map_err(CliError::config_from)?;
                QuenchSetup::new(&h, &psi).map_err(CliError::config_from)
            }
            Initial::Eigenstate => {
                // Exactly one-hot in the eigenbasis: no rotation round-off.
                let mut amplitudes = DVector::<Complex64>::zeros(self.dim);
                amplitudes[self.initial_index] = Complex64::new(1.0, 0.0);
                QuenchSetup::from_amplitudes(diagonalize(&h), amplitudes)
                    .map_err(CliError::config_from)
            }
        }
    }

    /// Config-echo metadata: everything needed to reproduce the system.
    pub fn meta(&self) -> Vec<(String, String)> {
        let mut m: Vec<(String, String)> = Vec::new();
        match self.ensemble {
            Ensemble::Gue | Ensemble::Goe => {
                let name = if self.ensemble == Ensemble::Gue { "gue" } else { "goe" };
                m.push(("ensemble".into(), name.into()));
                m.push(("dim".into(), self.dim.to_string()));
                m.push(("seed".into(), self.seed.to_string()));
            }
            Ensemble::SpinChain => {
                m.push(("ensemble".into(), "spin-chain".into()));
                m.push(("length".into(), self.length.to_string()));
                m.push(("coupling".into(), format_float(self.coupling)));
                m.push(("transverse-field".into(), format_float(self.transverse)));
                m.push(("longitudinal-field".into(), format_float(self.longitudinal)));
            }
        }
        let initial = match self.initial {
            Initial::Basis => "basis",
            Initial::Uniform => "uniform",
            Initial::Eigenstate => "eigenstate",
        };
        m.push(("initial".into(), initial.into()));
        if self.initial != Initial::Uniform {
            m.push(("initial-index".into(), self.initial_index.to_string()));
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty_args() -> SystemArgs {
        SystemArgs {
            ensemble: None,
            dim: None,
            length: None,
            coupling: None,
            transverse_field: None,
            longitudinal_field: None,
            seed: None,
            initial: None,
            initial_index: None,
        }
    }

    #[test]
    fn defaults_resolve_to_a_gue_basis_quench() {
        let mut problems = Vec::new();
        let plan = SystemPlan::resolve(&empty_args(), &mut problems).unwrap();
        assert!(problems.is_empty());
        let setup = plan.build().unwrap();
        assert_eq!(setup.dim(), DEFAULT_DIM);
        assert!(setup.boltzmann_time().is_finite());
    }

    #[test]
    fn contradictory_flags_are_all_reported() {
        let mut args = empty_args();
        args.ensemble = Some("spin-chain".into());
        args.dim = Some(64);
        args.initial = Some("uniform".into());
        args.initial_index = Some(3);
        let mut problems = Vec::new();
        assert!(SystemPlan::resolve(&args, &mut problems).is_none());
        assert_eq!(problems.len(), 2, "{problems:?}");
    }

    #[test]
    fn chain_flags_rejected_on_random_ensembles() {
        let mut args = empty_args();
        args.coupling = Some(2.0);
        args.length = Some(6);
        let mut problems = Vec::new();
        assert!(SystemPlan::resolve(&args, &mut problems).is_none());
        assert_eq!(problems.len(), 2, "{problems:?}");
    }

    #[test]
    fn eigenstate_initial_condition_has_exactly_zero_entropy_ceiling() {
        let mut args = empty_args();
        args.dim = Some(16);
        args.initial = Some("eigenstate".into());
        args.initial_index = Some(5);
        let mut problems = Vec::new();
        let plan = SystemPlan::resolve(&args, &mut problems).unwrap();
        let setup = plan.build().unwrap();
        assert_eq!(setup.diagonal_entropy(), 0.0);
        assert_eq!(setup.occupations()[5], 1.0);
        assert_eq!(setup.boltzmann_time(), f64::INFINITY);
    }

    #[test]
    fn out_of_range_index_is_caught_before_building() {
        let mut args = empty_args();
        args.dim = Some(8);
        args.initial_index = Some(8);
        let mut problems = Vec::new();
        assert!(SystemPlan::resolve(&args, &mut problems).is_none());
        assert!(problems[0].contains("out of range"));
    }

    #[test]
    fn metadata_echoes_the_resolved_system() {
        let mut args = empty_args();
        args.ensemble = Some("spin-chain".into());
        args.length = Some(4);
        let mut problems = Vec::new();
        let plan = SystemPlan::resolve(&args, &mut problems).unwrap();
        let meta = plan.meta();
        assert!(meta.contains(&("ensemble".to_string(), "spin-chain".to_string())));
        assert!(meta.contains(&("length".to_string(), "4".to_string())));
        assert!(meta.contains(&("coupling".to_string(), "1.0".to_string())));
    }
}
