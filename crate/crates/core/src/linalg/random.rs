//! Seeded random matrix ensembles.
//!
//! The stream is ChaCha8 (`rand_chacha`) seeded through `seed_from_u64`, and
//! Gaussians come from the trigonometric Box–Muller transform. The pair is
//! identified by [`RNG_ALGORITHM`] in every report.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::eig::svd;
use super::matrix::{vec_dot, vec_norm, ComplexMatrix, C64};

pub const RNG_ALGORITHM: &str = "chacha8/box-muller";

/// Per-trial (or per-restart) seed derived from a master seed.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    seed ^ index
}

#[derive(Debug, Clone)]
pub struct Rng {
    inner: ChaCha8Rng,
    spare: Option<f64>,
}

impl Rng {
    pub fn seed_from(seed: u64) -> Self {
        Self { inner: ChaCha8Rng::seed_from_u64(seed), spare: None }
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.inner.gen_range(lo..=hi)
    }

    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let t = std::f64::consts::TAU * u2;
        self.spare = Some(r * t.sin());
        r * t.cos()
    }

    /// Standard complex Gaussian, `E|z|² = 1`.
    pub fn complex_normal(&mut self) -> C64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        C64::new(self.normal() * s, self.normal() * s)
    }
}

pub fn ginibre_rect(rows: usize, cols: usize, rng: &mut Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| rng.complex_normal())
}

/// `n×n` matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre(n: usize, rng: &mut Rng) -> ComplexMatrix {
    ginibre_rect(n, n, rng)
}

/// Haar-distributed unitary: Gram–Schmidt on a Ginibre matrix (positive `R` diagonal).
pub fn haar_unitary(n: usize, rng: &mut Rng) -> ComplexMatrix {
    let g = ginibre(n, rng);
    let mut q: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut w = g.column(j);
        for _ in 0..2 {
            for b in &q {
                let d = vec_dot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= d * bi;
                }
            }
        }
        let nw = vec_norm(&w);
        q.push(w.iter().map(|z| z / nw).collect());
    }
    let mut u = ComplexMatrix::zeros(n, n);
    for (j, col) in q.iter().enumerate() {
        u.set_column(j, col);
    }
    u
}

/// `G^*G` for a Ginibre `G`.
pub fn random_psd(n: usize, rng: &mut Rng) -> ComplexMatrix {
    ginibre(n, rng).gram()
}

/// Ginibre matrix scaled to unit operator norm, then by a uniform factor in `[0, 1]`.
pub fn random_contraction(n: usize, rng: &mut Rng) -> ComplexMatrix {
    let g = ginibre(n, rng);
    let top = svd(&g).map(|d| d.s[0]).unwrap_or(1.0);
    let t = rng.uniform();
    if top > 0.0 {
        g.scale(t / top)
    } else {
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_is_unitary() {
        let mut rng = Rng::seed_from(1);
        let u = haar_unitary(3, &mut rng);
        let d = &u.adjoint() * &u;
        assert!((&d - &ComplexMatrix::identity(3)).frobenius() <= 1e-12);
    }

    #[test]
    fn same_seed_same_stream() {
        let a = ginibre(3, &mut Rng::seed_from(0));
        let b = ginibre(3, &mut Rng::seed_from(0));
        assert_eq!(a, b);
        let c = ginibre(3, &mut Rng::seed_from(1));
        assert_ne!(a, c);
    }

    #[test]
    fn contraction_norm_at_most_one() {
        let mut rng = Rng::seed_from(5);
        for _ in 0..20 {
            let k = random_contraction(4, &mut rng);
            assert!(svd(&k).unwrap().s[0] <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn normal_moments_roughly_standard() {
        let mut rng = Rng::seed_from(9);
        let n = 20000;
        let xs: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.05, "{mean}");
        assert!((var - 1.0).abs() < 0.05, "{var}");
    }
}
