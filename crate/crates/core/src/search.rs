//! Derivative-free maximization of sum-versus-moduli ratios.
//!
//! A tuple of `m` complex `n×n` matrices is a real vector of length `2mn²`,
//! projected to unit stacked Frobenius norm before every evaluation. Each
//! restart runs Nelder–Mead from its own seeded start; restarts run in
//! parallel and are merged by a max-reduction in restart order.

use std::f64::consts::SQRT_2;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::inequalities::{cp_constant, frob_constant, qsym_endpoint_constant, sym_endpoint_constant};
use crate::linalg::{derive_seed, hermitian_eig, ComplexMatrix, Rng, C64};
use crate::moduli::{qsym_modulus, sum_of_moduli, sym_modulus, usual_modulus, ModulusKind};
use crate::norms::{norm, Exponent, NormSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LhsForm {
    PlainSum,
    AbsOfSum,
    SymOfSum,
    QsymOfSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RhsForm {
    SumAbs,
    SumSym,
    SumQsym,
}

/// Registered problems: id, description.
pub const PROBLEMS: &[(&str, &str)] = &[
    ("c_sym_op", "‖|ΣA_k|_sym‖_∞ / ‖Σ|A_k|_sym‖_∞, proven ≤ √2"),
    ("c_p_sym", "‖|ΣA_k|_sym‖_p / ‖Σ|A_k|_sym‖_p, proven ≤ min{2^{1−1/p}, √2}"),
    ("c_p_qsym", "‖|ΣA_k|_qsym‖_p / ‖Σ|A_k|_qsym‖_p, proven ≤ min{m,2n}^{1/2−1/(2p)}"),
    ("c_p_abs", "‖ΣA_k‖_p / ‖Σ|A_k|‖_p, proven ≤ min{m,n}^{1/2−1/(2p)}"),
    (
        "conj18_evidence",
        "heuristic: max over i+j−1 ≤ n of λ_{i+j−1}(|X+Y|_sym) / (√2(λ_i(|X|_sym)+λ_j(|Y|_sym))); values above 1 would refute unitary domination with constant √2",
    ),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub objective_id: String,
    pub m: usize,
    pub n: usize,
    pub norm: NormSpec,
    pub lhs_form: LhsForm,
    pub rhs_form: RhsForm,
}

impl ProblemSpec {
    /// Build a registered problem. `norm` is ignored by `c_sym_op` and
    /// `conj18_evidence`; the others default to the Frobenius norm.
    pub fn new(objective_id: &str, m: usize, n: usize, norm: Option<NormSpec>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::BadArgument(format!("m and n must be positive, got m={m}, n={n}")));
        }
        let p = norm.unwrap_or(NormSpec::Frobenius);
        let (norm, lhs_form, rhs_form) = match objective_id {
            "c_sym_op" => (NormSpec::Operator, LhsForm::SymOfSum, RhsForm::SumSym),
            "c_p_sym" => (p, LhsForm::SymOfSum, RhsForm::SumSym),
            "c_p_qsym" => (p, LhsForm::QsymOfSum, RhsForm::SumQsym),
            "c_p_abs" => (p, LhsForm::PlainSum, RhsForm::SumAbs),
            "conj18_evidence" => {
                if m != 2 {
                    return Err(Error::BadArgument("conj18_evidence needs m = 2".into()));
                }
                (NormSpec::Operator, LhsForm::SymOfSum, RhsForm::SumSym)
            }
            other => return Err(Error::Unknown { kind: "problem", name: other.to_string() }),
        };
        norm.validate()?;
        Ok(ProblemSpec { objective_id: objective_id.into(), m, n, norm, lhs_form, rhs_form })
    }

    pub fn dim(&self) -> usize {
        2 * self.m * self.n * self.n
    }

    fn heuristic(&self) -> bool {
        self.objective_id == "conj18_evidence"
    }

    /// The proven upper bound on the ratio, when one is known.
    pub fn proven_bound(&self) -> Option<f64> {
        if self.heuristic() {
            return None;
        }
        let p = self.norm.schatten_exponent()?;
        let (m, n) = (self.m, self.n);
        Some(match (self.lhs_form, self.rhs_form) {
            (LhsForm::SymOfSum, RhsForm::SumSym) => sym_endpoint_constant(p),
            (LhsForm::QsymOfSum, RhsForm::SumQsym) => qsym_endpoint_constant(m, n, p),
            (LhsForm::PlainSum, RhsForm::SumAbs) => {
                let d = m.min(n);
                let c = cp_constant(d, p);
                if p == Exponent::Finite(2.0) {
                    c.min(frob_constant(d))
                } else {
                    c
                }
            }
            _ => return None,
        })
    }

    fn check_tuple(&self, mats: &[ComplexMatrix]) -> Result<()> {
        if mats.len() != self.m {
            return Err(Error::ShapeMismatch(format!("expected {} matrices, got {}", self.m, mats.len())));
        }
        for a in mats {
            if a.rows() != self.n || a.cols() != self.n {
                return Err(Error::ShapeMismatch(format!(
                    "expected {0}x{0} matrices, got {1}x{2}",
                    self.n,
                    a.rows(),
                    a.cols()
                )));
            }
        }
        Ok(())
    }

    fn to_vector(&self, mats: &[ComplexMatrix]) -> Vec<f64> {
        mats.iter().flat_map(|a| a.data().iter().flat_map(|z| [z.re, z.im])).collect()
    }

    fn to_tuple(&self, x: &[f64]) -> Vec<ComplexMatrix> {
        let nn = self.n * self.n;
        (0..self.m)
            .map(|k| {
                let data = (0..nn).map(|i| C64::new(x[2 * (k * nn + i)], x[2 * (k * nn + i) + 1])).collect();
                ComplexMatrix::new(self.n, self.n, data).expect("length matches shape")
            })
            .collect()
    }
}

/// Rescale a tuple to unit stacked Frobenius norm.
pub fn normalize(mats: &[ComplexMatrix]) -> Result<Vec<ComplexMatrix>> {
    let total = mats.iter().map(|a| a.frobenius().powi(2)).sum::<f64>().sqrt();
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::Degenerate("zero or non-finite tuple".into()));
    }
    Ok(mats.iter().map(|a| a.scale(1.0 / total)).collect())
}

fn lhs(form: LhsForm, mats: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let s = ComplexMatrix::sum(mats).ok_or_else(|| Error::BadArgument("empty tuple".into()))?;
    match form {
        LhsForm::PlainSum => Ok(s),
        LhsForm::AbsOfSum => usual_modulus(&s),
        LhsForm::SymOfSum => sym_modulus(&s),
        LhsForm::QsymOfSum => qsym_modulus(&s),
    }
}

fn rhs(form: RhsForm, mats: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let kind = match form {
        RhsForm::SumAbs => ModulusKind::Usual,
        RhsForm::SumSym => ModulusKind::ArithmeticSym,
        RhsForm::SumQsym => ModulusKind::QuadraticSym,
    };
    sum_of_moduli(kind, mats)
}

/// `max_{i+j−1 ≤ n} λ_{i+j−1}(L) / (√2(λ_i(P) + λ_j(Q)))`, skipping vanishing denominators.
fn weyl_surrogate(mats: &[ComplexMatrix]) -> Result<f64> {
    let l = hermitian_eig(&sym_modulus(&(&mats[0] + &mats[1]))?)?.values;
    let p = hermitian_eig(&sym_modulus(&mats[0])?)?.values;
    let q = hermitian_eig(&sym_modulus(&mats[1])?)?.values;
    let floor = 1e-12 * p[0].max(q[0]);
    let mut best: Option<f64> = None;
    for i in 0..l.len() {
        for j in 0..l.len() - i {
            let den = SQRT_2 * (p[i] + q[j]);
            if den > floor {
                let r = l[i + j] / den;
                best = Some(best.map_or(r, |b: f64| b.max(r)));
            }
        }
    }
    best.ok_or_else(|| Error::Degenerate("all eigenvalue denominators vanish".into()))
}

/// The problem's ratio on `mats`, evaluated after normalization.
pub fn evaluate(problem: &ProblemSpec, mats: &[ComplexMatrix]) -> Result<f64> {
    problem.check_tuple(mats)?;
    let mats = normalize(mats)?;
    if problem.heuristic() {
        return weyl_surrogate(&mats);
    }
    let den = norm(&rhs(problem.rhs_form, &mats)?, problem.norm)?;
    if den <= 1e-12 {
        return Err(Error::Degenerate("denominator vanishes".into()));
    }
    Ok(norm(&lhs(problem.lhs_form, &mats)?, problem.norm)? / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub restarts: usize,
    pub iters: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub problem: ProblemSpec,
    pub best_ratio: f64,
    pub witness: Vec<ComplexMatrix>,
    pub seed: u64,
    pub restarts: usize,
    pub iters: usize,
    /// `(restart, best ratio over restarts 0..=restart)`.
    pub history: Vec<(usize, f64)>,
    pub proven_bound: Option<f64>,
    pub wall_time_s: f64,
}

impl SearchResult {
    /// True when `best_ratio` is above the proven bound by more than `1e-7`.
    pub fn exceeds_bound(&self) -> bool {
        self.proven_bound.is_some_and(|c| self.best_ratio > c + 1e-7)
    }
}

/// Nelder–Mead maximization of `f` from `x0`; returns the best point and value.
fn nelder_mead(f: impl Fn(&[f64]) -> f64, x0: Vec<f64>, step: f64, iters: usize) -> (Vec<f64>, f64) {
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;
    let d = x0.len();
    let g = |x: &[f64]| -f(x);
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    simplex.push((x0.clone(), g(&x0)));
    for i in 0..d {
        let mut x = x0.clone();
        x[i] += step;
        let v = g(&x);
        simplex.push((x, v));
    }
    let along = |c: &[f64], w: &[f64], t: f64| -> Vec<f64> { c.iter().zip(w).map(|(c, w)| c + t * (w - c)).collect() };
    for _ in 0..iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[d].1 - simplex[0].1;
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if diameter < 1e-10 || spread.abs() < 1e-12 {
            break;
        }
        let mut centroid = vec![0.0; d];
        for (x, _) in &simplex[..d] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / d as f64;
            }
        }
        let worst = simplex[d].0.clone();
        let xr = along(&centroid, &worst, -REFLECT);
        let fr = g(&xr);
        if fr < simplex[0].1 {
            let xe = along(&centroid, &worst, -EXPAND);
            let fe = g(&xe);
            simplex[d] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (xr, fr);
        } else {
            let (xc, fc) = if fr < simplex[d].1 {
                let xc = along(&centroid, &xr, CONTRACT);
                let fc = g(&xc);
                (xc, fc)
            } else {
                let xc = along(&centroid, &worst, CONTRACT);
                let fc = g(&xc);
                (xc, fc)
            };
            if fc < fr.min(simplex[d].1) {
                simplex[d] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for v in simplex.iter_mut().skip(1) {
                    v.0 = along(&best, &v.0, SHRINK);
                    v.1 = g(&v.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, v) = simplex.swap_remove(0);
    (x, -v)
}

fn unit(mut x: Vec<f64>) -> Vec<f64> {
    let s = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if s > 0.0 {
        x.iter_mut().for_each(|v| *v /= s);
    }
    x
}

/// Maximize from the given starting tuples first, then from seeded Ginibre starts.
fn run(problem: &ProblemSpec, starts: &[Vec<f64>], budget: Budget, seed: u64) -> Result<SearchResult> {
    if budget.restarts == 0 || budget.iters == 0 {
        return Err(Error::BadArgument("restarts and iters must be positive".into()));
    }
    let clock = Instant::now();
    let objective = |x: &[f64]| match evaluate(problem, &problem.to_tuple(x)) {
        Ok(v) if v.is_finite() => v,
        _ => 0.0,
    };
    let dim = problem.dim();
    let outcomes: Vec<(Vec<f64>, f64)> = (0..budget.restarts)
        .into_par_iter()
        .map(|r| {
            let x0 = match starts.get(r) {
                Some(x) => x.clone(),
                None => {
                    let mut rng = Rng::seed_from(derive_seed(seed, r as u64));
                    unit((0..dim).map(|_| rng.normal()).collect())
                }
            };
            let (x, _) = nelder_mead(objective, x0, 0.1 / (dim as f64).sqrt().max(1.0), budget.iters);
            let witness = normalize(&problem.to_tuple(&x)).ok();
            let v = witness.as_ref().and_then(|w| evaluate(problem, w).ok()).unwrap_or(f64::NEG_INFINITY);
            (x, v)
        })
        .collect();

    let mut history = Vec::with_capacity(outcomes.len());
    let mut best: Option<(usize, f64)> = None;
    for (r, (_, v)) in outcomes.iter().enumerate() {
        if v.is_finite() && best.is_none_or(|(_, b)| *v > b) {
            best = Some((r, *v));
        }
        history.push((r, best.map_or(f64::NEG_INFINITY, |(_, b)| b)));
    }
    let (r, _) = best.ok_or_else(|| Error::Degenerate("every restart was degenerate".into()))?;
    let witness = normalize(&problem.to_tuple(&outcomes[r].0))?;
    let best_ratio = evaluate(problem, &witness)?;
    // keep the history consistent with the value reported for the witness
    for h in history.iter_mut().skip(r) {
        h.1 = h.1.max(best_ratio);
    }
    Ok(SearchResult {
        problem: problem.clone(),
        best_ratio,
        witness,
        seed,
        restarts: budget.restarts,
        iters: budget.iters,
        history,
        proven_bound: problem.proven_bound(),
        wall_time_s: clock.elapsed().as_secs_f64(),
    })
}

/// Cold-start search: every restart begins at a unit-scaled Ginibre tuple.
pub fn optimize(problem: &ProblemSpec, budget: Budget, seed: u64) -> Result<SearchResult> {
    run(problem, &[], budget, seed)
}

/// Like [`optimize`], but the first restarts start from the catalog witnesses.
/// Later restarts use the same seeds as the cold run.
pub fn warm_start(problem: &ProblemSpec, entries: &[CatalogEntry], budget: Budget, seed: u64) -> Result<SearchResult> {
    let mut starts = Vec::new();
    for e in entries {
        problem.check_tuple(&e.matrices)?;
        starts.push(problem.to_vector(&normalize(&e.matrices)?));
    }
    run(problem, &starts, budget, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn evaluate_on_catalog_pairs() {
        let p = ProblemSpec::new("c_sym_op", 2, 3, None).unwrap();
        assert!(close(evaluate(&p, &catalog::sharp3x3().matrices).unwrap(), SQRT_2, 1e-10));
        let p = ProblemSpec::new("c_sym_op", 2, 2, None).unwrap();
        assert!(close(evaluate(&p, &catalog::example_114().matrices).unwrap(), 1.1789471123, 1e-6));
        for d in 2..=6 {
            let e = catalog::frobenius_sharp_family(d, d).unwrap();
            let p = ProblemSpec::new("c_p_abs", d, d, Some(NormSpec::Frobenius)).unwrap();
            assert!(close(evaluate(&p, &e.matrices).unwrap(), frob_constant(d), 1e-9));
            assert!(close(p.proven_bound().unwrap(), frob_constant(d), 0.0));
        }
    }

    #[test]
    fn evaluate_is_scale_invariant() {
        let p = ProblemSpec::new("c_p_qsym", 2, 2, Some(NormSpec::schatten(3.0).unwrap())).unwrap();
        let e = catalog::example_114();
        let big: Vec<_> = e.matrices.iter().map(|a| a.scale(1e3)).collect();
        assert!(close(evaluate(&p, &e.matrices).unwrap(), evaluate(&p, &big).unwrap(), 1e-10));
    }

    #[test]
    fn shape_and_budget_errors() {
        let p = ProblemSpec::new("c_sym_op", 2, 2, None).unwrap();
        assert!(matches!(
            warm_start(&p, &[catalog::sharp3x3()], Budget { restarts: 1, iters: 1 }, 0),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(optimize(&p, Budget { restarts: 0, iters: 10 }, 0).is_err());
        assert!(matches!(ProblemSpec::new("nosuch", 2, 2, None), Err(Error::Unknown { .. })));
        assert!(ProblemSpec::new("conj18_evidence", 3, 2, None).is_err());
    }

    #[test]
    fn deterministic_and_monotone() {
        let p = ProblemSpec::new("c_p_sym", 2, 2, Some(NormSpec::schatten(4.0).unwrap())).unwrap();
        let b = Budget { restarts: 6, iters: 150 };
        let a = optimize(&p, b, 5).unwrap();
        let c = optimize(&p, b, 5).unwrap();
        assert_eq!(a.best_ratio, c.best_ratio);
        assert_eq!(a.witness, c.witness);
        assert!(a.history.windows(2).all(|w| w[0].1 <= w[1].1));
        assert!(close(a.history.last().unwrap().1, a.best_ratio, 0.0));
        assert!(close(evaluate(&p, &a.witness).unwrap(), a.best_ratio, 1e-9));
        let total: f64 = a.witness.iter().map(|w| w.frobenius().powi(2)).sum();
        assert!(close(total, 1.0, 1e-12));
        assert!(!a.exceeds_bound());
    }

    #[test]
    fn single_matrix_problems_are_trivial() {
        let b = Budget { restarts: 3, iters: 100 };
        for id in ["c_sym_op", "c_p_sym", "c_p_qsym", "c_p_abs"] {
            let p = ProblemSpec::new(id, 1, 3, None).unwrap();
            let r = optimize(&p, b, 1).unwrap();
            assert!(close(r.best_ratio, 1.0, 1e-9), "{id} {}", r.best_ratio);
        }
    }

    #[test]
    fn warm_start_keeps_the_catalog_ratio() {
        let p = ProblemSpec::new("c_sym_op", 2, 3, None).unwrap();
        let r = warm_start(&p, &[catalog::sharp3x3()], Budget { restarts: 2, iters: 50 }, 0).unwrap();
        assert!(r.best_ratio >= SQRT_2 - 1e-9);
        assert!(!r.exceeds_bound());
    }

    #[test]
    fn warm_start_not_worse_than_cold() {
        let p = ProblemSpec::new("c_sym_op", 2, 2, None).unwrap();
        let b = Budget { restarts: 4, iters: 200 };
        let cold = optimize(&p, b, 42).unwrap();
        let warm = warm_start(&p, &[catalog::example_114()], b, 42).unwrap();
        assert!(warm.best_ratio >= cold.best_ratio);
        assert!(warm.best_ratio >= 1.1789471123 - 1e-6);
    }

    #[test]
    fn conj18_surrogate_on_sharp_pair() {
        let p = ProblemSpec::new("conj18_evidence", 2, 3, None).unwrap();
        let v = evaluate(&p, &catalog::sharp3x3().matrices).unwrap();
        assert!(v > 0.0 && v <= 1.0 + 1e-9, "{v}");
        assert_eq!(p.proven_bound(), None);
    }

    #[test]
    fn nelder_mead_finds_quadratic_peak() {
        let (x, v) = nelder_mead(|x| -(x[0] - 1.0).powi(2) - (x[1] + 2.0).powi(2), vec![0.0, 0.0], 0.5, 500);
        assert!(close(x[0], 1.0, 1e-5) && close(x[1], -2.0, 1e-5) && v > -1e-9);
    }
}
