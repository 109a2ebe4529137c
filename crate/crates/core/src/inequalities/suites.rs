//! Seeded random property suites, one per checker.
//!
//! Trial `i` draws its inputs from `Rng::seed_from(seed ^ i)`, so a suite run is
//! reproducible and the parallel and serial aggregations agree exactly.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::*;
use crate::error::{Error, Result};
use crate::linalg::{
    derive_seed, ginibre, ginibre_rect, haar_unitary, random_contraction, random_psd, ComplexMatrix, Rng, C64,
    RNG_ALGORITHM,
};
use crate::norms::{Exponent, NormSpec};

pub struct SuiteInfo {
    pub name: &'static str,
    pub statement: &'static str,
}

const fn s(name: &'static str, statement: &'static str) -> SuiteInfo {
    SuiteInfo { name, statement }
}

/// Every registered suite, one per checker.
pub const SUITES: &[SuiteInfo] = &[
    s("equiv_sym", "½‖|Z|‖ ≤ ‖|Z|_sym‖ ≤ ‖|Z|‖"),
    s("equiv_qsym", "(√2/2)‖|Z|‖ ≤ ‖|Z|_qsym‖ ≤ √2‖|Z|‖"),
    s("sym_vs_qsym", "‖|Z|_sym‖ ≤ ‖|Z|_qsym‖ ≤ √2‖|Z|_sym‖"),
    s("lee", "‖ΣA_k‖ ≤ √min{m,n}‖Σ|A_k|‖"),
    s("sum_vs_sym", "‖ΣA_k‖ ≤ 2‖Σ|A_k|_sym‖"),
    s("sum_vs_qsym", "‖ΣA_k‖ ≤ √2‖Σ|A_k|_qsym‖"),
    s("bourin_lee", "‖|ΣA_k|_sym‖ ≤ √2‖Σ|A_k|_sym‖"),
    s("corollary_24", "λ_{1+3j}(|ΣA_k|_sym) ≤ √2 λ_{1+j}(Σ|A_k|_sym)"),
    s("qsym_lee", "‖|ΣA_k|_qsym‖ ≤ √min{m,2n}‖Σ|A_k|_qsym‖"),
    s("schatten_sym", "‖ΣA_k‖_p ≤ 2^{1−1/p}‖Σ|A_k|_sym‖_p"),
    s("schatten_qsym", "‖ΣA_k‖_p ≤ max{1, 2^{1/2−1/p}}‖Σ|A_k|_qsym‖_p"),
    s("block_positivity", "[[|A^*|, A], [A^*, |A|]] ⪰ 0"),
    s("eqdiag_dom", "[[P, Z], [Z^*, P]] ⪰ 0 and ‖Z‖ ≤ ‖P‖ for Z = P^{1/2}KP^{1/2}"),
    s("contraction", "K = A^{†/2}XB^{†/2} is a contraction reproducing X"),
    s("one_inf_two", "‖X‖_1‖X‖_∞ ≤ ((1+√n)/2)‖X‖_2²"),
    s("frob_c2", "‖ΣA_k‖_2 ≤ √((1+√d)/2)‖Σ|A_k|‖_2"),
    s("cp_bound", "‖ΣA_k‖_p ≤ d^{1/2−1/(2p)}‖Σ|A_k|‖_p"),
    s("trace_cs", "|tr(A^*B)|² ≤ tr(|A||B|) tr(|A^*||B^*|)"),
    s("trace_qsym", "|tr(A^*B)| ≤ tr(|A|_qsym|B|_qsym)"),
    s("mccarthy", "tr(A^p + B^p) ≤ tr(A+B)^p"),
    s("bourin_uchiyama", "‖f(A+B)‖ ≤ ‖f(A)+f(B)‖, f concave"),
    s("aujla_silva", "‖f(αA+(1−α)B)‖ ≤ ‖αf(A)+(1−α)f(B)‖, f convex"),
    s("lieb", "tr(X^{1/2}Y^{1/2}) jointly concave"),
    s("no_constant", "λ_2(|X_θ|_qsym)/λ_2(|X_θ|_sym) = √(2/(1−cos θ))"),
    s("sym_endpoints", "‖|ΣA_k|_sym‖_p ≤ min{2^{1−1/p}, √2}‖Σ|A_k|_sym‖_p"),
    s("qsym_endpoints", "‖|ΣA_k|_qsym‖_p ≤ min{m,2n}^{1/2−1/(2p)}‖Σ|A_k|_qsym‖_p"),
];

/// Named groups of suites.
pub const GROUPS: &[(&str, &[&str])] = &[("equivalence", &["equiv_sym", "equiv_qsym", "sym_vs_qsym"])];

/// Suite names selected by `name`: a suite, a group, or `all`.
pub fn resolve(name: &str) -> Result<Vec<&'static str>> {
    if name == "all" {
        return Ok(SUITES.iter().map(|s| s.name).collect());
    }
    if let Some((_, members)) = GROUPS.iter().find(|(g, _)| *g == name) {
        return Ok(members.to_vec());
    }
    SUITES
        .iter()
        .find(|s| s.name == name)
        .map(|s| vec![s.name])
        .ok_or_else(|| Error::Unknown { kind: "suite", name: name.to_string() })
}

/// Exponent grid cycled through by trial index.
pub const P_GRID: [f64; 6] = [1.0, 1.5, 2.0, 3.0, 10.0, f64::INFINITY];

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteParams {
    pub trials: usize,
    pub seed: u64,
    pub dim: Option<usize>,
    pub count: Option<usize>,
    pub p: Option<Exponent>,
    pub norm: Option<NormMode>,
    pub tol: f64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self { trials: 1000, seed: 0, dim: None, count: None, p: None, norm: None, tol: CHECK_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub check_id: String,
    pub runs: usize,
    pub passed: usize,
    pub failed: usize,
    /// Smallest `margin / scale` seen.
    pub worst_margin: f64,
    pub worst_ratio: Option<f64>,
    pub worst_trial: usize,
    pub worst_digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub rng: &'static str,
    pub checks: Vec<CheckSummary>,
    pub failures: usize,
    pub errors: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.errors.is_empty()
    }
}

/// Run every suite selected by `name`.
pub fn run(name: &str, params: &SuiteParams) -> Result<Vec<SuiteReport>> {
    let names = resolve(name)?;
    validate(params)?;
    names.into_iter().map(|n| run_suite(n, params)).collect()
}

fn validate(params: &SuiteParams) -> Result<()> {
    if params.trials == 0 {
        return Err(Error::BadArgument("trials must be positive".into()));
    }
    if params.dim == Some(0) || params.count == Some(0) {
        return Err(Error::BadArgument("dimension and count must be positive".into()));
    }
    if !(params.tol.is_finite() && params.tol >= 0.0) {
        return Err(Error::BadArgument(format!("bad tolerance {}", params.tol)));
    }
    Ok(())
}

pub fn run_suite(name: &'static str, params: &SuiteParams) -> Result<SuiteReport> {
    resolve(name)?;
    validate(params)?;
    let outcomes: Vec<Result<Vec<CheckReport>>> =
        (0..params.trials).into_par_iter().map(|i| trial(name, i, params)).collect();

    let mut by_id: BTreeMap<String, CheckSummary> = BTreeMap::new();
    let mut errors = Vec::new();
    for (i, outcome) in outcomes.into_iter().enumerate() {
        let reports = match outcome {
            Ok(r) => r,
            Err(e) => {
                errors.push(format!("trial {i}: {e}"));
                continue;
            }
        };
        for r in reports {
            let r = r.with_tol(params.tol);
            let rel = r.margin / r.scale;
            let e = by_id.entry(r.check_id.clone()).or_insert_with(|| CheckSummary {
                check_id: r.check_id.clone(),
                runs: 0,
                passed: 0,
                failed: 0,
                worst_margin: f64::INFINITY,
                worst_ratio: None,
                worst_trial: i,
                worst_digest: r.inputs_digest.clone(),
            });
            e.runs += 1;
            if r.pass {
                e.passed += 1;
            } else {
                e.failed += 1;
            }
            // NaN margins must surface as the worst case
            if rel < e.worst_margin || rel.is_nan() {
                e.worst_margin = rel;
                e.worst_trial = i;
                e.worst_digest = r.inputs_digest.clone();
            }
            if let Some(q) = r.ratio {
                if e.worst_ratio.is_none_or(|w| q > w) {
                    e.worst_ratio = Some(q);
                }
            }
        }
    }
    let checks: Vec<CheckSummary> = by_id.into_values().collect();
    Ok(SuiteReport {
        suite: name.to_string(),
        trials: params.trials,
        seed: params.seed,
        tol: params.tol,
        rng: RNG_ALGORITHM,
        failures: checks.iter().map(|c| c.failed).sum(),
        checks,
        errors,
    })
}

const MODE_GRID_LEN: usize = P_GRID.len() + 1;

fn mode_for(i: usize, params: &SuiteParams) -> NormMode {
    if let Some(m) = params.norm {
        return m;
    }
    match i % MODE_GRID_LEN {
        k if k < P_GRID.len() => NormMode::Single(NormSpec::Schatten(Exponent::new(P_GRID[k]).expect("grid"))),
        _ => NormMode::AllUin,
    }
}

fn p_for(i: usize, params: &SuiteParams) -> Exponent {
    params.p.unwrap_or_else(|| Exponent::new(P_GRID[i % P_GRID.len()]).expect("grid"))
}

/// A random square matrix from a mix of ensembles and scales.
pub fn sample_matrix(n: usize, rng: &mut Rng) -> ComplexMatrix {
    let a = match rng.range(0, 3) {
        0 | 1 => ginibre(n, rng),
        2 if n > 1 => {
            let r = rng.range(1, n - 1);
            &ginibre_rect(n, r, rng) * &ginibre_rect(r, n, rng)
        }
        _ => {
            let u = haar_unitary(n, rng);
            let d = ComplexMatrix::from_fn(n, n, |i, j| if i == j { rng.complex_normal() } else { C64::new(0.0, 0.0) });
            &(&u * &d) * &u.adjoint()
        }
    };
    a.scale((2.0 * rng.normal()).exp())
}

fn sample_tuple(m: usize, n: usize, rng: &mut Rng) -> Vec<ComplexMatrix> {
    (0..m).map(|_| sample_matrix(n, rng)).collect()
}

fn trial(name: &str, i: usize, params: &SuiteParams) -> Result<Vec<CheckReport>> {
    let mut rng = Rng::seed_from(derive_seed(params.seed, i as u64));
    let n = params.dim.unwrap_or_else(|| rng.range(2, 6));
    let m = params.count.unwrap_or_else(|| rng.range(2, 5));
    let mode = mode_for(i, params);
    let p = p_for(i, params);
    let pair = |r: (CheckReport, CheckReport)| vec![r.0, r.1];

    Ok(match name {
        "equiv_sym" => pair(check_equiv_sym(&sample_matrix(n, &mut rng), mode)?),
        "equiv_qsym" => pair(check_equiv_qsym(&sample_matrix(n, &mut rng), mode)?),
        "sym_vs_qsym" => pair(check_sym_vs_qsym(&sample_matrix(n, &mut rng), mode)?),
        "lee" => vec![check_lee(&sample_tuple(m, n, &mut rng), mode)?],
        "sum_vs_sym" => vec![check_sum_vs_sym(&sample_tuple(m, n, &mut rng), mode)?],
        "sum_vs_qsym" => vec![check_sum_vs_qsym(&sample_tuple(m, n, &mut rng), mode)?],
        "bourin_lee" => vec![check_bourin_lee(&sample_tuple(m, n, &mut rng), mode)?],
        "corollary_24" => {
            let n = params.dim.unwrap_or_else(|| rng.range(2, 7));
            let j = rng.range(0, (n - 1) / 3);
            vec![check_corollary_24(&sample_tuple(m, n, &mut rng), j)?]
        }
        "qsym_lee" => vec![check_qsym_lee(&sample_tuple(m, n, &mut rng), mode)?],
        "schatten_sym" => vec![check_schatten_sym(&sample_tuple(m, n, &mut rng), p)?],
        "schatten_qsym" => vec![check_schatten_qsym(&sample_tuple(m, n, &mut rng), p)?],
        "block_positivity" => vec![check_block_positivity(&sample_matrix(n, &mut rng))?],
        "eqdiag_dom" => {
            let pm = random_psd(n, &mut rng);
            let k = random_contraction(n, &mut rng);
            pair(check_eqdiag_dom(&pm, &k, mode)?)
        }
        "contraction" => pair(check_contraction(&ginibre(n, &mut rng))?),
        "one_inf_two" => vec![check_one_inf_two(&random_psd(n, &mut rng))?],
        "frob_c2" => vec![check_frob_c2(&sample_tuple(m, n, &mut rng))?],
        "cp_bound" => vec![check_cp_bound(&sample_tuple(m, n, &mut rng), p)?],
        "trace_cs" => pair(check_trace_cs(&sample_matrix(n, &mut rng), &sample_matrix(n, &mut rng))?),
        "trace_qsym" => vec![check_trace_qsym(&sample_matrix(n, &mut rng), &sample_matrix(n, &mut rng))?],
        "mccarthy" => {
            let q = match params.p {
                Some(e) => e.value(),
                None => [1.0, 1.5, 2.0, 3.0, 10.0][i % 5],
            };
            vec![check_mccarthy(&random_psd(n, &mut rng), &random_psd(n, &mut rng), q)?]
        }
        "bourin_uchiyama" => {
            let f =
                [ScalarFn::Sqrt, ScalarFn::Power(0.3), ScalarFn::Power(0.75), ScalarFn::Identity, ScalarFn::Shift(1.0)]
                    [i % 5];
            vec![check_bourin_uchiyama(&random_psd(n, &mut rng), &random_psd(n, &mut rng), mode, f)?]
        }
        "aujla_silva" => {
            let f = [
                ScalarFn::Power(2.0),
                ScalarFn::Power(1.5),
                ScalarFn::Power(3.0),
                ScalarFn::Identity,
                ScalarFn::Shift(0.5),
            ][i % 5];
            let alpha = rng.uniform();
            vec![check_aujla_silva(&random_psd(n, &mut rng), &random_psd(n, &mut rng), alpha, mode, f)?]
        }
        "lieb" => {
            let x: Vec<_> = (0..4).map(|_| random_psd(n, &mut rng)).collect();
            vec![check_lieb(&x[0], &x[1], &x[2], &x[3])?]
        }
        "no_constant" => {
            let theta = std::f64::consts::FRAC_PI_2 * 10f64.powf(-3.0 * rng.uniform());
            vec![check_no_constant(theta)?]
        }
        "sym_endpoints" => vec![check_sym_endpoints(&sample_tuple(m, n, &mut rng), p)?],
        "qsym_endpoints" => vec![check_qsym_endpoints(&sample_tuple(m, n, &mut rng), p)?],
        other => return Err(Error::Unknown { kind: "suite", name: other.to_string() }),
    })
}
