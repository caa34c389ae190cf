//! # tempus-core
//!
//! A numerical laboratory for the relation between time, dephasing, and
//! entropy in closed quantum systems, plus the gravitational and
//! thermodynamic limits on physical clocks.
//!
//! The crate is organized around five experiments:
//!
//! * [`quench`] — evolve a pure state under a fixed Hamiltonian and track
//!   how the entropy of the *time-averaged* state grows logarithmically in
//!   time, saturating at the diagonal entropy.
//! * [`echo`] — imperfectly reverse an evolution and measure the fidelity
//!   of the recovered state as a function of the timing error; the decay
//!   width defines the system's intrinsic clock resolution.
//! * [`clock`] — a finite-dimensional tick counter built from equally
//!   spaced energy levels, with pointer readout and record entropy.
//! * [`demon`] — the reversal experiment run end to end with a finite
//!   clock steering the demon, showing the entropy cost of timekeeping.
//! * [`bounds`] — order-of-magnitude limits on any physical clock from
//!   relativity and thermodynamics (maximal tick counts, black-hole
//!   clocks, Planck-scale consistency).
//!
//! Everything is exact diagonalization over dense complex matrices:
//! deterministic, seedable, and free of time-step error.  No global state,
//! no hidden RNG — the same inputs give bitwise-identical outputs on any
//! thread count.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod clock;
pub mod demon;
pub mod echo;
pub mod error;
pub mod grid;
pub mod quantum;
pub mod quench;

pub use error::{Error, Result};
pub use quantum::{
    build_goe, build_gue, build_spin_chain, diagonalize, shannon_entropy, von_neumann_entropy,
    DensityMatrix, EnergyStatistics, HermitianOperator, QuantumState, SpectralDecomposition,
};
