use std::f64::consts::SQRT_2;

use super::{digest, CheckReport, NormMode, ScalarFn};
use crate::error::{Error, Result};
use crate::linalg::{block2, hermitian_eig, min_eig, pinv_sqrt, psd_eig, psd_function, psd_sqrt, ComplexMatrix};
use crate::moduli::{adjoint_modulus, qsym_modulus, sum_of_moduli, sym_modulus, usual_modulus, ModulusKind};
use crate::norms::{norm, Exponent, NormSpec};

// ---------------------------------------------------------------------------
// Constants

pub fn lee_constant(m: usize, n: usize) -> f64 {
    (m.min(n) as f64).sqrt()
}

/// `√((1+√d)/2)`.
pub fn frob_constant(d: usize) -> f64 {
    ((1.0 + (d as f64).sqrt()) / 2.0).sqrt()
}

/// `d^{1/2 − 1/(2p)}`.
pub fn cp_constant(d: usize, p: Exponent) -> f64 {
    (d as f64).powf(0.5 - 0.5 * p.recip())
}

/// `2^{1 − 1/p}`.
pub fn schatten_sym_constant(p: Exponent) -> f64 {
    2f64.powf(1.0 - p.recip())
}

/// `1` for `p ≤ 2`, `2^{1/2 − 1/p}` beyond.
pub fn schatten_qsym_constant(p: Exponent) -> f64 {
    if p.value() <= 2.0 {
        1.0
    } else {
        2f64.powf(0.5 - p.recip())
    }
}

/// `min{2^{1 − 1/p}, √2}`.
pub fn sym_endpoint_constant(p: Exponent) -> f64 {
    schatten_sym_constant(p).min(SQRT_2)
}

/// `min{m, 2n}^{1/2 − 1/(2p)}`.
pub fn qsym_endpoint_constant(m: usize, n: usize, p: Exponent) -> f64 {
    cp_constant(m.min(2 * n), p)
}

/// `((2^{p/2} + 2^{1−p/2})/3)^{1/p}`, with the limit `√2` at `p = ∞`.
pub fn sym_lower_bound_curve(p: Exponent) -> f64 {
    match p {
        Exponent::Infinity => SQRT_2,
        Exponent::Finite(p) => {
            // log-form so 2^{p/2} never overflows
            let ln2 = std::f64::consts::LN_2;
            ((0.5 * p * ln2 + (2f64.powf(1.0 - p)).ln_1p() - 3f64.ln()) / p).exp()
        }
    }
}

// ---------------------------------------------------------------------------
// Helpers

/// `(m, n)` for a nonempty tuple of equal-size square matrices, not all zero.
pub fn tuple_shape(mats: &[ComplexMatrix]) -> Result<(usize, usize)> {
    let first = mats.first().ok_or_else(|| Error::BadArgument("empty matrix tuple".into()))?;
    let n = first.ensure_square()?;
    for a in mats {
        a.ensure_square()?;
        if a.rows() != n {
            return Err(Error::ShapeMismatch(format!("tuple mixes {n}x{n} and {0}x{0}", a.rows())));
        }
    }
    nonzero(&mats.iter().collect::<Vec<_>>())?;
    Ok((mats.len(), n))
}

fn nonzero(mats: &[&ComplexMatrix]) -> Result<()> {
    if mats.iter().all(|a| a.is_zero(0.0)) {
        Err(Error::Degenerate("all inputs vanish".into()))
    } else {
        Ok(())
    }
}

fn same_shape(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<usize> {
    let n = a.ensure_square()?;
    if b.shape() != a.shape() {
        return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", a.shape(), b.shape())));
    }
    Ok(n)
}

fn tuple_digest(mats: &[ComplexMatrix]) -> String {
    digest(&mats.iter().collect::<Vec<_>>())
}

fn sum(mats: &[ComplexMatrix]) -> ComplexMatrix {
    ComplexMatrix::sum(mats).expect("nonempty tuple")
}

fn compare(
    id: &str,
    mode: NormMode,
    l: &ComplexMatrix,
    r: &ComplexMatrix,
    constant: f64,
    dig: String,
) -> Result<CheckReport> {
    let (lhs, rhs) = mode.sides(l, r)?;
    Ok(CheckReport::new(format!("{id}@{mode}"), lhs, rhs, constant, dig))
}

fn schatten(p: Exponent) -> NormMode {
    NormMode::Single(NormSpec::Schatten(p))
}

fn ensure_psd(a: &ComplexMatrix) -> Result<()> {
    a.ensure_square()?;
    psd_eig(a).map(|_| ())
}

fn tr_product(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.adjoint().inner(b).re
}

// ---------------------------------------------------------------------------
// Single-matrix equivalences

/// `½‖|Z|‖ ≤ ‖|Z|_sym‖ ≤ ‖|Z|‖`, as (lower, upper).
pub fn check_equiv_sym(z: &ComplexMatrix, mode: NormMode) -> Result<(CheckReport, CheckReport)> {
    z.ensure_square()?;
    nonzero(&[z])?;
    let (abs, sym) = (usual_modulus(z)?, sym_modulus(z)?);
    let d = digest(&[z]);
    Ok((
        compare("equiv_sym_lower", mode, &abs, &sym, 2.0, d.clone())?,
        compare("equiv_sym_upper", mode, &sym, &abs, 1.0, d)?,
    ))
}

/// `(√2/2)‖|Z|‖ ≤ ‖|Z|_qsym‖ ≤ √2‖|Z|‖`, as (lower, upper).
pub fn check_equiv_qsym(z: &ComplexMatrix, mode: NormMode) -> Result<(CheckReport, CheckReport)> {
    z.ensure_square()?;
    nonzero(&[z])?;
    let (abs, q) = (usual_modulus(z)?, qsym_modulus(z)?);
    let d = digest(&[z]);
    Ok((
        compare("equiv_qsym_lower", mode, &abs, &q, SQRT_2, d.clone())?,
        compare("equiv_qsym_upper", mode, &q, &abs, SQRT_2, d)?,
    ))
}

/// `‖|Z|_sym‖ ≤ ‖|Z|_qsym‖ ≤ √2‖|Z|_sym‖`, as (lower, upper).
pub fn check_sym_vs_qsym(z: &ComplexMatrix, mode: NormMode) -> Result<(CheckReport, CheckReport)> {
    z.ensure_square()?;
    nonzero(&[z])?;
    let (s, q) = (sym_modulus(z)?, qsym_modulus(z)?);
    let d = digest(&[z]);
    Ok((
        compare("sym_vs_qsym_lower", mode, &s, &q, 1.0, d.clone())?,
        compare("sym_vs_qsym_upper", mode, &q, &s, SQRT_2, d)?,
    ))
}

// ---------------------------------------------------------------------------
// Sums of several matrices

/// `‖ΣA_k‖ ≤ √min{m,n} ‖Σ|A_k|‖`.
pub fn check_lee(mats: &[ComplexMatrix], mode: NormMode) -> Result<CheckReport> {
    let (m, n) = tuple_shape(mats)?;
    let r = sum_of_moduli(ModulusKind::Usual, mats)?;
    compare("lee", mode, &sum(mats), &r, lee_constant(m, n), tuple_digest(mats))
}

/// `‖ΣA_k‖ ≤ 2‖Σ|A_k|_sym‖`.
pub fn check_sum_vs_sym(mats: &[ComplexMatrix], mode: NormMode) -> Result<CheckReport> {
    tuple_shape(mats)?;
    let r = sum_of_moduli(ModulusKind::ArithmeticSym, mats)?;
    compare("sum_vs_sym", mode, &sum(mats), &r, 2.0, tuple_digest(mats))
}

/// `‖ΣA_k‖ ≤ √2‖Σ|A_k|_qsym‖`.
pub fn check_sum_vs_qsym(mats: &[ComplexMatrix], mode: NormMode) -> Result<CheckReport> {
    tuple_shape(mats)?;
    let r = sum_of_moduli(ModulusKind::QuadraticSym, mats)?;
    compare("sum_vs_qsym", mode, &sum(mats), &r, SQRT_2, tuple_digest(mats))
}

/// `‖|ΣA_k|_sym‖ ≤ √2‖Σ|A_k|_sym‖`.
pub fn check_bourin_lee(mats: &[ComplexMatrix], mode: NormMode) -> Result<CheckReport> {
    tuple_shape(mats)?;
    let l = sym_modulus(&sum(mats))?;
    let r = sum_of_moduli(ModulusKind::ArithmeticSym, mats)?;
    compare("bourin_lee", mode, &l, &r, SQRT_2, tuple_digest(mats))
}

/// `λ_{1+3j}(|ΣA_k|_sym) ≤ √2 λ_{1+j}(Σ|A_k|_sym)`, `j` zero-based.
pub fn check_corollary_24(mats: &[ComplexMatrix], j: usize) -> Result<CheckReport> {
    let (_, n) = tuple_shape(mats)?;
    if 1 + 3 * j > n {
        return Err(Error::BadIndex(format!("need 1+3j ≤ n, got j={j}, n={n}")));
    }
    let l = hermitian_eig(&sym_modulus(&sum(mats))?)?;
    let r = hermitian_eig(&sum_of_moduli(ModulusKind::ArithmeticSym, mats)?)?;
    Ok(CheckReport::new(format!("corollary_24@j={j}"), l.values[3 * j], r.values[j], SQRT_2, tuple_digest(mats)))
}

/// `‖|ΣA_k|_qsym‖ ≤ √min{m,2n}‖Σ|A_k|_qsym‖`.
pub fn check_qsym_lee(mats: &[ComplexMatrix], mode: NormMode) -> Result<CheckReport> {
    let (m, n) = tuple_shape(mats)?;
    let l = qsym_modulus(&sum(mats))?;
    let r = sum_of_moduli(ModulusKind::QuadraticSym, mats)?;
    compare("qsym_lee", mode, &l, &r, lee_constant(m, 2 * n), tuple_digest(mats))
}

/// `‖ΣA_k‖_p ≤ 2^{1−1/p}‖Σ|A_k|_sym‖_p`.
pub fn check_schatten_sym(mats: &[ComplexMatrix], p: Exponent) -> Result<CheckReport> {
    tuple_shape(mats)?;
    let r = sum_of_moduli(ModulusKind::ArithmeticSym, mats)?;
    compare("schatten_sym", schatten(p), &sum(mats), &r, schatten_sym_constant(p), tuple_digest(mats))
}

/// `‖ΣA_k‖_p ≤ c_p‖Σ|A_k|_qsym‖_p` with `c_p = 1` up to `p = 2`, `2^{1/2−1/p}` beyond.
pub fn check_schatten_qsym(mats: &[ComplexMatrix], p: Exponent) -> Result<CheckReport> {
    tuple_shape(mats)?;
    let r = sum_of_moduli(ModulusKind::QuadraticSym, mats)?;
    compare("schatten_qsym", schatten(p), &sum(mats), &r, schatten_qsym_constant(p), tuple_digest(mats))
}

/// `‖ΣA_k‖_2 ≤ √((1+√d)/2)‖Σ|A_k|‖_2`, `d = min{m,n}`.
pub fn check_frob_c2(mats: &[ComplexMatrix]) -> Result<CheckReport> {
    let (m, n) = tuple_shape(mats)?;
    let r = sum_of_moduli(ModulusKind::Usual, mats)?;
    let mode = NormMode::Single(NormSpec::Frobenius);
    compare("frob_c2", mode, &sum(mats), &r, frob_constant(m.min(n)), tuple_digest(mats))
}

/// `‖ΣA_k‖_p ≤ d^{1/2−1/(2p)}‖Σ|A_k|‖_p`.
pub fn check_cp_bound(mats: &[ComplexMatrix], p: Exponent) -> Result<CheckReport> {
    let (m, n) = tuple_shape(mats)?;
    let r = sum_of_moduli(ModulusKind::Usual, mats)?;
    compare("cp_bound", schatten(p), &sum(mats), &r, cp_constant(m.min(n), p), tuple_digest(mats))
}

/// `‖|ΣA_k|_sym‖_p ≤ min{2^{1−1/p}, √2}‖Σ|A_k|_sym‖_p`.
pub fn check_sym_endpoints(mats: &[ComplexMatrix], p: Exponent) -> Result<CheckReport> {
    tuple_shape(mats)?;
    let l = sym_modulus(&sum(mats))?;
    let r = sum_of_moduli(ModulusKind::ArithmeticSym, mats)?;
    compare("sym_endpoints", schatten(p), &l, &r, sym_endpoint_constant(p), tuple_digest(mats))
}

/// `‖|ΣA_k|_qsym‖_p ≤ min{m,2n}^{1/2−1/(2p)}‖Σ|A_k|_qsym‖_p`.
pub fn check_qsym_endpoints(mats: &[ComplexMatrix], p: Exponent) -> Result<CheckReport> {
    let (m, n) = tuple_shape(mats)?;
    let l = qsym_modulus(&sum(mats))?;
    let r = sum_of_moduli(ModulusKind::QuadraticSym, mats)?;
    compare("qsym_endpoints", schatten(p), &l, &r, qsym_endpoint_constant(m, n, p), tuple_digest(mats))
}

// ---------------------------------------------------------------------------
// Block positivity and contractions

/// `[[|A^*|, A], [A^*, |A|]] ⪰ 0`.
pub fn check_block_positivity(a: &ComplexMatrix) -> Result<CheckReport> {
    a.ensure_square()?;
    nonzero(&[a])?;
    let block = modulus_block(a)?;
    let scale = 2.0 * norm(a, NormSpec::Operator)?;
    Ok(CheckReport::positivity("block_positivity", min_eig(&block)?, scale, digest(&[a])))
}

/// The PSD block `[[|A^*|, A], [A^*, |A|]]`.
pub fn modulus_block(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(block2(&adjoint_modulus(a)?, a, &a.adjoint(), &usual_modulus(a)?)?.hermitian_part())
}

/// For `Z = P^{1/2}KP^{1/2}`: positivity of `[[P, Z], [Z^*, P]]` and `‖Z‖ ≤ ‖P‖`.
pub fn check_eqdiag_dom(p: &ComplexMatrix, k: &ComplexMatrix, mode: NormMode) -> Result<(CheckReport, CheckReport)> {
    same_shape(p, k)?;
    nonzero(&[p])?;
    ensure_psd(p)?;
    if norm(k, NormSpec::Operator)? > 1.0 + 1e-12 {
        return Err(Error::BadArgument("K is not a contraction".into()));
    }
    let half = psd_sqrt(p)?;
    let z = &(&half * k) * &half;
    let block = block2(p, &z, &z.adjoint(), p)?.hermitian_part();
    let d = digest(&[p, k]);
    let scale = 2.0 * norm(p, NormSpec::Operator)?;
    Ok((
        CheckReport::positivity("eqdiag_block", min_eig(&block)?, scale, d.clone()),
        compare("eqdiag_dom", mode, &z, p, 1.0, d)?,
    ))
}

/// For a PSD block `[[A, X], [X^*, B]]`, returns `K = A^{†/2} X B^{†/2}` and the
/// reconstruction defect `‖X − A^{1/2}KB^{1/2}‖_F`.
pub fn extract_contraction(block: &ComplexMatrix) -> Result<(ComplexMatrix, f64)> {
    let size = block.ensure_square()?;
    if size % 2 != 0 {
        return Err(Error::ShapeMismatch(format!("block of odd size {size}")));
    }
    psd_eig(block)?;
    let n = size / 2;
    let a = block.submatrix(0, 0, n, n).hermitian_part();
    let x = block.submatrix(0, n, n, n);
    let b = block.submatrix(n, n, n, n).hermitian_part();
    let k = &(&pinv_sqrt(&a)? * &x) * &pinv_sqrt(&b)?;
    let rebuilt = &(&psd_sqrt(&a)? * &k) * &psd_sqrt(&b)?;
    Ok((k, (&x - &rebuilt).frobenius()))
}

/// Contraction extracted from the modulus block of `A`: `‖K‖_∞ ≤ 1 + 1e-8`
/// and defect `≤ 1e-8 ‖A‖_F`.
pub fn check_contraction(a: &ComplexMatrix) -> Result<(CheckReport, CheckReport)> {
    a.ensure_square()?;
    nonzero(&[a])?;
    let (k, defect) = extract_contraction(&modulus_block(a)?)?;
    let d = digest(&[a]);
    Ok((
        CheckReport::new("contraction_norm", norm(&k, NormSpec::Operator)?, 1.0, 1.0 + 1e-8, d.clone()),
        CheckReport::new("contraction_defect", defect, a.frobenius(), 1e-8, d),
    ))
}

/// `‖X‖_1‖X‖_∞ ≤ ((1+√n)/2)‖X‖_2²` for PSD `X`.
pub fn check_one_inf_two(x: &ComplexMatrix) -> Result<CheckReport> {
    let n = x.ensure_square()?;
    nonzero(&[x])?;
    let e = psd_eig(x)?;
    let lam: Vec<f64> = e.values.iter().map(|v| v.max(0.0)).collect();
    let lhs = lam.iter().sum::<f64>() * lam[0];
    let rhs = lam.iter().map(|v| v * v).sum::<f64>();
    let c = (1.0 + (n as f64).sqrt()) / 2.0;
    Ok(CheckReport::new("one_inf_two", lhs, rhs, c, digest(&[x])))
}

// ---------------------------------------------------------------------------
// Trace inequalities

/// `|tr(A^*B)|² ≤ tr(|A||B|) tr(|A^*||B^*|)` and its AM–GM form.
pub fn check_trace_cs(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<(CheckReport, CheckReport)> {
    same_shape(a, b)?;
    nonzero(&[a, b])?;
    let t = a.inner(b).norm();
    let x = tr_product(&usual_modulus(a)?, &usual_modulus(b)?);
    let y = tr_product(&adjoint_modulus(a)?, &adjoint_modulus(b)?);
    let d = digest(&[a, b]);
    Ok((
        CheckReport::new("trace_cs", t * t, x * y, 1.0, d.clone()),
        CheckReport::new("trace_amgm", t, 0.5 * (x + y), 1.0, d),
    ))
}

/// `|tr(A^*B)| ≤ tr(|A|_qsym |B|_qsym)`.
pub fn check_trace_qsym(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<CheckReport> {
    same_shape(a, b)?;
    nonzero(&[a, b])?;
    let rhs = tr_product(&qsym_modulus(a)?, &qsym_modulus(b)?);
    Ok(CheckReport::new("trace_qsym", a.inner(b).norm(), rhs, 1.0, digest(&[a, b])))
}

/// `tr(A^p + B^p) ≤ tr(A+B)^p` for PSD `A, B`, `p ≥ 1` finite.
pub fn check_mccarthy(a: &ComplexMatrix, b: &ComplexMatrix, p: f64) -> Result<CheckReport> {
    same_shape(a, b)?;
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::BadNormParam(format!("McCarthy exponent {p} must be finite and ≥ 1")));
    }
    nonzero(&[a, b])?;
    ensure_psd(a)?;
    ensure_psd(b)?;
    let pow = |m: &ComplexMatrix| psd_function(m, |t| t.powf(p)).map(|r| r.trace().re);
    let lhs = pow(a)? + pow(b)?;
    let rhs = pow(&(a + b))?;
    Ok(CheckReport::new(format!("mccarthy@p={p}"), lhs, rhs, 1.0, digest(&[a, b])))
}

/// `‖f(A+B)‖ ≤ ‖f(A)+f(B)‖` for PSD `A, B` and nonnegative concave `f`.
pub fn check_bourin_uchiyama(a: &ComplexMatrix, b: &ComplexMatrix, mode: NormMode, f: ScalarFn) -> Result<CheckReport> {
    same_shape(a, b)?;
    if !f.is_concave() {
        return Err(Error::BadArgument(format!("{f} is not a nonnegative concave function")));
    }
    nonzero(&[a, b])?;
    ensure_psd(a)?;
    ensure_psd(b)?;
    let l = f.apply(&(a + b))?;
    let r = &f.apply(a)? + &f.apply(b)?;
    compare("bourin_uchiyama", mode, &l, &r, 1.0, digest(&[a, b]))
}

/// `‖f(αA+(1−α)B)‖ ≤ ‖αf(A)+(1−α)f(B)‖` for PSD `A, B` and nonnegative convex `f`.
pub fn check_aujla_silva(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    alpha: f64,
    mode: NormMode,
    f: ScalarFn,
) -> Result<CheckReport> {
    same_shape(a, b)?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::BadArgument(format!("alpha {alpha} outside [0, 1]")));
    }
    if !f.is_convex() {
        return Err(Error::BadArgument(format!("{f} is not a nonnegative convex function")));
    }
    nonzero(&[a, b])?;
    ensure_psd(a)?;
    ensure_psd(b)?;
    let l = f.apply(&(&a.scale(alpha) + &b.scale(1.0 - alpha)))?;
    let r = &f.apply(a)?.scale(alpha) + &f.apply(b)?.scale(1.0 - alpha);
    compare("aujla_silva", mode, &l, &r, 1.0, digest(&[a, b]))
}

/// Joint concavity of `(X, Y) ↦ tr(X^{1/2}Y^{1/2})` at the midpoint.
pub fn check_lieb(
    x1: &ComplexMatrix,
    x2: &ComplexMatrix,
    y1: &ComplexMatrix,
    y2: &ComplexMatrix,
) -> Result<CheckReport> {
    for m in [x2, y1, y2] {
        same_shape(x1, m)?;
    }
    nonzero(&[x1, x2, y1, y2])?;
    let f = |x: &ComplexMatrix, y: &ComplexMatrix| -> Result<f64> { Ok(tr_product(&psd_sqrt(x)?, &psd_sqrt(y)?)) };
    let lhs = 0.5 * (f(x1, y1)? + f(x2, y2)?);
    let rhs = f(&(x1 + x2).scale(0.5), &(y1 + y2).scale(0.5))?;
    Ok(CheckReport::new("lieb", lhs, rhs, 1.0, digest(&[x1, x2, y1, y2])))
}

// ---------------------------------------------------------------------------
// No eigenvalue-wise constant between the symmetric moduli

/// `[[cos θ, 0], [sin θ, 0]]`.
pub fn x_theta_matrix(theta: f64) -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[theta.cos(), 0.0, theta.sin(), 0.0]).expect("finite angle")
}

/// `λ_2(|X_θ|_qsym) / λ_2(|X_θ|_sym)`, computed numerically.
pub fn no_constant_ratio(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta <= std::f64::consts::FRAC_PI_2) {
        return Err(Error::BadArgument(format!("theta {theta} outside (0, π/2]")));
    }
    let x = x_theta_matrix(theta);
    let q = hermitian_eig(&qsym_modulus(&x)?)?;
    let s = hermitian_eig(&sym_modulus(&x)?)?;
    Ok(q.values[1] / s.values[1])
}

/// `√(2/(1 − cos θ))`, via `1 − cos θ = 2 sin²(θ/2)` to avoid cancellation.
pub fn no_constant_closed_form(theta: f64) -> f64 {
    1.0 / (theta / 2.0).sin()
}

/// Relative agreement of [`no_constant_ratio`] with its closed form, to `1e-8`.
pub fn check_no_constant(theta: f64) -> Result<CheckReport> {
    let computed = no_constant_ratio(theta)?;
    let closed = no_constant_closed_form(theta);
    let x = x_theta_matrix(theta);
    Ok(CheckReport::with_scale("no_constant", (computed - closed).abs(), closed, 1e-8, 1.0, digest(&[&x])))
}
