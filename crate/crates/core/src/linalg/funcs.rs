//! Functional calculus on PSD matrices, polar decomposition and block assembly.

use super::eig::{hermitian_eig, svd, SpectralData};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Eigenvalues in `[-clip_tol, 0)` are treated as roundoff and clipped to zero.
pub const CLIP_TOL: f64 = 1e-10;
/// Eigenvalues at or below `RANK_TOL_PINV · λ_max` are inverted to zero.
pub const RANK_TOL_PINV: f64 = 1e-10;

pub fn clip_tol(lambda_max: f64) -> f64 {
    CLIP_TOL * lambda_max.max(1.0)
}

/// Spectral data of a matrix that must be PSD up to the clip tolerance.
pub fn psd_eig(a: &ComplexMatrix) -> Result<SpectralData> {
    let e = hermitian_eig(a)?;
    let tol = clip_tol(e.max());
    if e.min() < -tol {
        return Err(Error::NotPsd { min_eig: e.min(), clip_tol: tol });
    }
    Ok(e)
}

/// `f(A)` for Hermitian PSD `A`, with slightly negative eigenvalues clipped to 0.
pub fn psd_function(a: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    let e = psd_eig(a)?;
    Ok(e.recompose(|x| f(x.max(0.0))))
}

pub fn psd_sqrt(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    psd_function(a, f64::sqrt)
}

/// `(W^*W)^{1/2}` for any rectangular `W`, computed from its singular triples.
///
/// Going through `‖W v_j‖` rather than `sqrt(λ_j(W^*W))` avoids the square-root
/// amplification of roundoff on small singular values.
pub fn gram_sqrt(w: &ComplexMatrix) -> Result<ComplexMatrix> {
    let d = svd(w)?;
    let n = w.cols();
    let mut values = d.s.clone();
    values.resize(n, 0.0);
    Ok(SpectralData { values, vectors: d.v }.recompose(|x| x))
}

/// Polar decomposition `A = U P` with `P = |A|` and `U` unitary.
pub fn polar(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    a.ensure_square()?;
    let d = svd(a)?;
    let u = &d.u * &d.v.adjoint();
    let p = SpectralData { values: d.s, vectors: d.v }.recompose(|x| x);
    Ok((u, p))
}

/// Moore–Penrose inverse of `A^{1/2}` for PSD `A`.
pub fn pinv_sqrt(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let e = psd_eig(a)?;
    let cut = RANK_TOL_PINV * e.max();
    Ok(e.recompose(|x| if x > cut && x > 0.0 { 1.0 / x.sqrt() } else { 0.0 }))
}

/// `[[A, B], [C, D]]`.
pub fn block2(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, d: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols() {
        return Err(Error::ShapeMismatch(format!(
            "blocks {:?} {:?} / {:?} {:?}",
            a.shape(),
            b.shape(),
            c.shape(),
            d.shape()
        )));
    }
    let (r1, c1) = a.shape();
    let rows = r1 + c.rows();
    let cols = c1 + b.cols();
    Ok(ComplexMatrix::from_fn(rows, cols, |i, j| match (i < r1, j < c1) {
        (true, true) => a[(i, j)],
        (true, false) => b[(i, j - c1)],
        (false, true) => c[(i - r1, j)],
        (false, false) => d[(i - r1, j - c1)],
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::C64;

    #[test]
    fn sqrt_of_diagonal() {
        let r = psd_sqrt(&ComplexMatrix::diag(&[4.0, 9.0])).unwrap();
        assert!(r.max_diff(&ComplexMatrix::diag(&[2.0, 3.0])) < 1e-15);
    }

    #[test]
    fn sqrt_of_scaled_projection() {
        // (8/9) P with P the rank-2 projection diag-block from the 3x3 construction.
        let p = ComplexMatrix::from_real(3, 3, &[0.5, 0.0, -0.5, 0.0, 1.0, 0.0, -0.5, 0.0, 0.5]).unwrap();
        let r = psd_sqrt(&p.scale(8.0 / 9.0)).unwrap();
        assert!(r.max_diff(&p.scale(2.0 * 2f64.sqrt() / 3.0)) < 1e-14);
    }

    #[test]
    fn not_psd_rejected() {
        let r = psd_sqrt(&ComplexMatrix::diag(&[1.0, -1e-3]));
        assert!(matches!(r, Err(Error::NotPsd { .. })));
        // within clip tolerance
        let r = psd_sqrt(&ComplexMatrix::diag(&[1.0, -1e-12])).unwrap();
        assert_eq!(r[(1, 1)], C64::new(0.0, 0.0));
    }

    #[test]
    fn polar_of_matrix_unit_and_unitary() {
        let (u, p) = polar(&ComplexMatrix::unit(2, 0, 1)).unwrap();
        assert!(p.max_diff(&ComplexMatrix::diag(&[0.0, 1.0])) < 1e-15);
        assert!((&u * &p).max_diff(&ComplexMatrix::unit(2, 0, 1)) < 1e-15);
        assert!((&u.adjoint() * &u).max_diff(&ComplexMatrix::identity(2)) < 1e-14);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let w = ComplexMatrix::from_pairs(2, 2, &[(s, 0.0), (0.0, s), (0.0, s), (s, 0.0)]).unwrap();
        let (u, p) = polar(&w).unwrap();
        assert!(u.max_diff(&w) < 1e-14);
        assert!(p.max_diff(&ComplexMatrix::identity(2)) < 1e-14);
    }

    #[test]
    fn polar_rank_one() {
        let u = [C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
        let v = [C64::new(0.0, 1.0), C64::new(0.0, 0.0)];
        let a = ComplexMatrix::outer(&u, &v);
        let (_, p) = polar(&a).unwrap();
        assert!(p.max_diff(&ComplexMatrix::outer(&v, &v)) < 1e-15);
    }

    #[test]
    fn pinv_sqrt_simple() {
        assert!(pinv_sqrt(&ComplexMatrix::identity(3)).unwrap().max_diff(&ComplexMatrix::identity(3)) < 1e-15);
        let r = pinv_sqrt(&ComplexMatrix::diag(&[4.0, 0.0])).unwrap();
        assert!(r.max_diff(&ComplexMatrix::diag(&[0.5, 0.0])) < 1e-15);
    }

    #[test]
    fn block_shapes() {
        let i = ComplexMatrix::identity(2);
        let z = ComplexMatrix::zeros(2, 2);
        assert_eq!(block2(&i, &z, &z, &i).unwrap(), ComplexMatrix::identity(4));
        let bad = ComplexMatrix::zeros(3, 2);
        assert!(matches!(block2(&i, &z, &bad, &i), Err(Error::ShapeMismatch(_))));
    }
}
