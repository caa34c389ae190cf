//! Finite-dimensional quantum mechanics: states, Hermitian operators,
//! spectral decompositions, density matrices, and Hamiltonian builders.

pub mod density;
pub mod ensembles;
pub mod operator;
pub mod spectral;
pub mod state;

pub use density::{shannon_entropy, validate_probabilities, von_neumann_entropy, DensityMatrix};
pub use ensembles::{build_goe, build_gue, build_spin_chain, MAX_DENSE_DIM};
pub use operator::HermitianOperator;
pub use spectral::{diagonalize, EnergyStatistics, SpectralDecomposition};
pub use state::QuantumState;
