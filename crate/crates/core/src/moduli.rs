//! The usual, arithmetic symmetric and quadratic symmetric moduli, plus the
//! block embeddings used to move between them.
//!
//! All three moduli are computed from singular triples of a (possibly stacked)
//! matrix, so their small eigenvalues carry roundoff-level absolute error:
//!
//! * `|Z| = (Z^*Z)^{1/2}`
//! * `|Z|_sym = (|Z| + |Z^*|)/2`
//! * `|Z|_qsym = ((|Z|² + |Z^*|²)/2)^{1/2} = |W|` with `W = [Z; Z^*]/√2`

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{block2, gram_sqrt, ComplexMatrix, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModulusKind {
    Usual,
    ArithmeticSym,
    QuadraticSym,
}

impl ModulusKind {
    pub const ALL: [ModulusKind; 3] = [ModulusKind::Usual, ModulusKind::ArithmeticSym, ModulusKind::QuadraticSym];

    pub fn apply(self, z: &ComplexMatrix) -> Result<ComplexMatrix> {
        match self {
            ModulusKind::Usual => usual_modulus(z),
            ModulusKind::ArithmeticSym => sym_modulus(z),
            ModulusKind::QuadraticSym => qsym_modulus(z),
        }
    }
}

/// `|Z| = (Z^*Z)^{1/2}`.
pub fn usual_modulus(z: &ComplexMatrix) -> Result<ComplexMatrix> {
    z.ensure_square()?;
    gram_sqrt(z)
}

/// `|Z^*| = (ZZ^*)^{1/2}`.
pub fn adjoint_modulus(z: &ComplexMatrix) -> Result<ComplexMatrix> {
    z.ensure_square()?;
    gram_sqrt(&z.adjoint())
}

/// `|Z|_sym = (|Z| + |Z^*|)/2`.
pub fn sym_modulus(z: &ComplexMatrix) -> Result<ComplexMatrix> {
    let sum = &usual_modulus(z)? + &adjoint_modulus(z)?;
    Ok(sum.scale(0.5).hermitian_part())
}

/// `|Z|_qsym = ((|Z|² + |Z^*|²)/2)^{1/2}`.
pub fn qsym_modulus(z: &ComplexMatrix) -> Result<ComplexMatrix> {
    z.ensure_square()?;
    let stacked = z.vstack(&z.adjoint())?.scale(std::f64::consts::FRAC_1_SQRT_2);
    Ok(gram_sqrt(&stacked)?.hermitian_part())
}

/// `(ℜZ, ℑZ)` with `Z = ℜZ + i ℑZ`, both Hermitian.
pub fn cartesian(z: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    z.ensure_square()?;
    let za = z.adjoint();
    let re = (z + &za).scale(0.5);
    let im = (z - &za).scale_c(C64::new(0.0, -0.5));
    Ok((re, im))
}

/// `[[0, A], [A^*, 0]]`.
pub fn hermitian_dilation(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.ensure_square()?;
    let z = ComplexMatrix::zeros(n, n);
    block2(&z, a, &a.adjoint(), &z)
}

/// `Φ(A) = [[A, 0], [A^*, 0]]/√2`, whose modulus is `diag(|A|_qsym, 0)`.
pub fn phi_embedding(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.ensure_square()?;
    let z = ComplexMatrix::zeros(n, n);
    Ok(block2(a, &z, &a.adjoint(), &z)?.scale(std::f64::consts::FRAC_1_SQRT_2))
}

/// `Σ_k modulus(A_k)`.
pub fn sum_of_moduli(kind: ModulusKind, mats: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let first = mats.first().ok_or_else(|| Error::BadArgument("empty matrix tuple".into()))?;
    let mut acc = ComplexMatrix::zeros(first.rows(), first.cols());
    for m in mats {
        acc += &kind.apply(m)?;
    }
    Ok(acc)
}
