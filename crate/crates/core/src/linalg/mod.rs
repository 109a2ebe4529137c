//! Self-contained complex dense linear algebra.

mod eig;
mod funcs;
mod matrix;
pub mod random;

pub use eig::{hermitian_eig, min_eig, svd, SpectralData, Svd, HERMITIAN_TOL, JACOBI_TOL, MAX_SWEEPS, RANK_TOL};
pub use funcs::{
    block2, clip_tol, gram_sqrt, pinv_sqrt, polar, psd_eig, psd_function, psd_sqrt, CLIP_TOL, RANK_TOL_PINV,
};
pub use matrix::{vec_dot, vec_norm, ComplexMatrix, C64, ONE, ZERO};
pub use random::{
    derive_seed, ginibre, ginibre_rect, haar_unitary, random_contraction, random_psd, Rng, RNG_ALGORITHM,
};
