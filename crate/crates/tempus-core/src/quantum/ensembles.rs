//! Seeded Hamiltonian builders: random-matrix ensembles and a spin chain.
//!
//! Every builder is a pure function of its arguments.  Random matrices draw
//! from a counter-based generator seeded explicitly, and entries are filled
//! in a fixed traversal order, so the same `(dim, seed)` pair produces a
//! bitwise-identical operator on every platform and thread count.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::quantum::operator::HermitianOperator;

/// Largest Hilbert-space dimension the dense builders will allocate.  A
/// complex matrix at this size is 256 MiB; anything bigger needs sparse
/// methods this crate does not pretend to offer.
pub const MAX_DENSE_DIM: usize = 4096;

/// A random Hermitian matrix from the Gaussian unitary ensemble.
///
/// Normalization: diagonal entries are real `N(0, 1/dim)`; off-diagonal
/// entries are complex with independent real and imaginary parts
/// `N(0, 1/(2 dim))`, i.e. total off-diagonal variance `1/dim`.  With this
/// scaling the spectrum converges to a semicircle of radius ~2 and level
/// spacings stay `O(1/dim)`, so energies and times are `O(1)` for every
/// matrix size.
///
/// Entries are drawn row by row: for each `i`, first the diagonal, then the
/// off-diagonals `j > i` (real part before imaginary part).
pub fn build_gue(dim: usize, seed: u64) -> Result<HermitianOperator> {
    check_dim(dim)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let diag_sd = (1.0 / dim as f64).sqrt();
    let off_sd = (1.0 / (2.0 * dim as f64)).sqrt();
    let mut entries = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        let d: f64 = rng.sample(StandardNormal);
        entries[(i, i)] = Complex64::new(diag_sd * d, 0.0);
        for j in (i + 1)..dim {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let z = Complex64::new(off_sd * re, off_sd * im);
            entries[(i, j)] = z;
            entries[(j, i)] = z.conj();
        }
    }
    HermitianOperator::new(entries)
}

/// A random real symmetric matrix from the Gaussian orthogonal ensemble.
///
/// Normalization mirrors [`build_gue`]: off-diagonal variance `1/dim`,
/// diagonal variance `2/dim` (the factor 2 is what makes the ensemble
/// orthogonally invariant), semicircle radius ~2.  Same traversal order as
/// the unitary ensemble.
pub fn build_goe(dim: usize, seed: u64) -> Result<HermitianOperator> {
    check_dim(dim)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let diag_sd = (2.0 / dim as f64).sqrt();
    let off_sd = (1.0 / dim as f64).sqrt();
    let mut entries = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        let d: f64 = rng.sample(StandardNormal);
        entries[(i, i)] = Complex64::new(diag_sd * d, 0.0);
        for j in (i + 1)..dim {
            let v: f64 = rng.sample(StandardNormal);
            let z = Complex64::new(off_sd * v, 0.0);
            entries[(i, j)] = z;
            entries[(j, i)] = z;
        }
    }
    HermitianOperator::new(entries)
}

/// The mixed-field Ising chain with open boundaries:
///
/// `H = -J sum_i sz_i sz_{i+1} - g sum_i sx_i - h sum_i sz_i`
///
/// on `sites` spins.  With both fields switched on (e.g. `g = 0.9`,
/// `h = 0.5`) the model is robustly non-integrable, which makes it a useful
/// deterministic counterpart to the random ensembles.
///
/// Basis convention: site 0 is the highest bit of the basis index and a
/// cleared bit means spin up (`sz = +1`), so index 0 is all-up.
pub fn build_spin_chain(
    sites: usize,
    coupling: f64,
    transverse_field: f64,
    longitudinal_field: f64,
) -> Result<HermitianOperator> {
    if sites < 2 {
        return Err(Error::DimensionTooSmall {
            dim: sites,
            min: 2,
        });
    }
    if sites >= usize::BITS as usize || (1usize << sites) > MAX_DENSE_DIM {
        return Err(Error::DimensionTooLarge {
            dim: 1usize.checked_shl(sites as u32).unwrap_or(usize::MAX),
            cap: MAX_DENSE_DIM,
        });
    }
    for (name, v) in [
        ("coupling", coupling),
        ("transverse_field", transverse_field),
        ("longitudinal_field", longitudinal_field),
    ] {
        if !v.is_finite() {
            return Err(Error::NonFinite { name });
        }
    }

    let dim = 1usize << sites;
    let sz = |state: usize, site: usize| -> f64 {
        if state & (1 << (sites - 1 - site)) == 0 {
            1.0
        } else {
            -1.0
        }
    };

    let mut entries = DMatrix::zeros(dim, dim);
    for state in 0..dim {
        let mut diag = 0.0;
        for site in 0..sites - 1 {
            diag -= coupling * sz(state, site) * sz(state, site + 1);
        }
        for site in 0..sites {
            diag -= longitudinal_field * sz(state, site);
        }
        entries[(state, state)] = Complex64::new(diag, 0.0);
        // sx_i flips one spin, connecting states that differ in one bit.
        for site in 0..sites {
            let flipped = state ^ (1 << (sites - 1 - site));
            entries[(state, flipped)] += Complex64::new(-transverse_field, 0.0);
        }
    }
    HermitianOperator::new(entries)
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { dim, min: 2 });
    }
    if dim > MAX_DENSE_DIM {
        return Err(Error::DimensionTooLarge {
            dim,
            cap: MAX_DENSE_DIM,
        });
    }
    Ok(())
}
