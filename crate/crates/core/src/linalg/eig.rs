//! Cyclic Jacobi eigensolver for complex Hermitian matrices, and the SVD built on it.

use super::matrix::{vec_dot, vec_norm, ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Relative symmetry defect accepted by [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Stop when the off-diagonal Frobenius mass falls below this fraction of `‖A‖_F`.
pub const JACOBI_TOL: f64 = 1e-13;
pub const MAX_SWEEPS: usize = 60;
/// Singular values below this fraction of `σ_1` are treated as exact zeros.
pub const RANK_TOL: f64 = 1e-12;

/// Eigenvalues in descending order with orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl SpectralData {
    /// `V diag(f(λ)) V^*`.
    pub fn recompose(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.rows();
        let k = self.values.len();
        let fv: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut s = ZERO;
                for (c, &w) in fv.iter().enumerate().take(k) {
                    if w != 0.0 {
                        s += self.vectors[(i, c)] * self.vectors[(j, c)].conj() * w;
                    }
                }
                out[(i, j)] = s;
                out[(j, i)] = s.conj();
            }
            out[(i, i)].im = 0.0;
        }
        out
    }

    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }
}

fn off_diagonal_mass(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One two-sided Jacobi rotation annihilating `m[p][q]`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let theta = (aqq - app) / (2.0 * g);
    let t =
        if theta.abs() > 1e150 { 0.5 / theta } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // J = [[c, s], [-s·conj(e), c·conj(e)]] on the (p, q) plane.
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;
    let n = m.rows();
    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * jpp + akq * jqp;
        m[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        m[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)].im = 0.0;
    m[(q, q)].im = 0.0;
    for k in 0..v.rows() {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<SpectralData> {
    let n = a.ensure_square()?;
    let fro = a.frobenius();
    let defect = a.hermitian_defect();
    let allowed = HERMITIAN_TOL * fro.max(1.0);
    if defect > allowed {
        return Err(Error::NotHermitian { defect, allowed });
    }
    let mut m = a.hermitian_part();
    for i in 0..n {
        m[(i, i)].im = 0.0;
    }
    let mut v = ComplexMatrix::identity(n);
    let target = JACOBI_TOL * fro;
    let mut sweep = 0;
    loop {
        let off = off_diagonal_mass(&m);
        if off <= target {
            break;
        }
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps: sweep, off });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        sweep += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &v.column(src));
    }
    Ok(SpectralData { values, vectors })
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eig(a: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eig(a)?.min())
}

/// `A = U diag(s) V^*` with full unitary `U` (rows×rows) and `V` (cols×cols);
/// `s` holds the `min(rows, cols)` singular values in descending order.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub s: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (r, c) = (self.u.rows(), self.v.rows());
        let mut us = ComplexMatrix::zeros(r, c);
        for (j, &sj) in self.s.iter().enumerate() {
            for i in 0..r {
                us[(i, j)] = self.u[(i, j)] * sj;
            }
        }
        &us * &self.v.adjoint()
    }
}

/// Orthonormalises `cols` in place (two passes of Gram-Schmidt) and completes
/// them to an orthonormal basis of `C^dim`.
fn complete_basis(mut cols: Vec<Vec<C64>>, dim: usize) -> Vec<Vec<C64>> {
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(dim);
    let project_out = |w: &mut Vec<C64>, basis: &[Vec<C64>]| {
        for _ in 0..2 {
            for b in basis {
                let d = vec_dot(b, w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= d * bi;
                }
            }
        }
    };
    // Standard basis vectors are tried in order; the one with the largest
    // residual is taken so the completion stays well conditioned.
    let completion = |basis: &[Vec<C64>]| -> Vec<C64> {
        let mut best: Option<(f64, Vec<C64>)> = None;
        for e in 0..dim {
            let mut w = vec![ZERO; dim];
            w[e] = ONE;
            project_out(&mut w, basis);
            let nw = vec_norm(&w);
            if best.as_ref().is_none_or(|b| nw > b.0) {
                best = Some((nw, w));
            }
        }
        let (nw, w) = best.expect("dim > 0");
        w.iter().map(|z| z / nw).collect()
    };
    for mut w in cols.drain(..) {
        project_out(&mut w, &basis);
        let nw = vec_norm(&w);
        if nw > 1e-8 {
            basis.push(w.iter().map(|z| z / nw).collect());
        } else {
            let c = completion(&basis);
            basis.push(c);
        }
    }
    while basis.len() < dim {
        let c = completion(&basis);
        basis.push(c);
    }
    basis
}

/// Singular value decomposition from the eigenvectors of `A^*A`.
///
/// Singular values are taken as `‖A v_j‖`, which keeps their absolute error at
/// roundoff level even near zero; left vectors are `A v_j / σ_j`, completed to
/// a unitary on the numerical kernel.
pub fn svd(a: &ComplexMatrix) -> Result<Svd> {
    if a.rows() < a.cols() {
        let t = svd(&a.adjoint())?;
        return Ok(Svd { u: t.v, s: t.s, v: t.u });
    }
    let (rows, cols) = a.shape();
    let eig = hermitian_eig(&a.gram())?;
    let mut triples: Vec<(f64, Vec<C64>, Vec<C64>)> = (0..cols)
        .map(|j| {
            let vj = eig.vectors.column(j);
            let avj = a.apply(&vj);
            (vec_norm(&avj), vj, avj)
        })
        .collect();
    triples.sort_by(|x, y| y.0.total_cmp(&x.0));
    let smax = triples.first().map(|t| t.0).unwrap_or(0.0);
    let cutoff = RANK_TOL * smax;
    let mut s = Vec::with_capacity(cols);
    let mut v = ComplexMatrix::zeros(cols, cols);
    let mut left = Vec::new();
    for (j, (sj, vj, avj)) in triples.into_iter().enumerate() {
        v.set_column(j, &vj);
        if sj > cutoff && sj > 0.0 {
            s.push(sj);
            left.push(avj.iter().map(|z| z / sj).collect());
        } else {
            s.push(0.0);
        }
    }
    let basis = complete_basis(left, rows);
    debug_assert_eq!(basis.len(), rows);
    let mut u = ComplexMatrix::zeros(rows, rows);
    for (j, col) in basis.iter().enumerate() {
        u.set_column(j, col);
    }
    Ok(Svd { u, s, v })
}
