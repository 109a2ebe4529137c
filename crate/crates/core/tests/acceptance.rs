//! Acceptance criteria, one line of output per criterion.
//!
//! Runs without the libtest harness so the lines are always printed;
//! exits nonzero when any criterion fails.

use std::f64::consts::SQRT_2;
use std::time::{Duration, Instant};

use modulus_lab::catalog::{self, Reproduction};
use modulus_lab::cli;
use modulus_lab::inequalities::{check_by_id, no_constant_ratio, suites};
use modulus_lab::linalg::{random_psd, ComplexMatrix, Rng};
use modulus_lab::search::{self, Budget, ProblemSpec};

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

/// Run the CLI in-process and return (exit code, stdout).
fn cli(args: &[&str]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(std::iter::once("modulus-lab").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf8"))
}

fn reproduce(example: &str) -> Result<Vec<Reproduction>, String> {
    let (code, out) = cli(&["reproduce", "--example", example, "--format", "json"]);
    if code != 0 {
        return Err(format!("exit {code}"));
    }
    // the JSON report must agree with the library call
    let lib = catalog::reproduce(example).map_err(|e| e.to_string())?;
    let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    if v.as_array().map(Vec::len) != Some(lib.len()) {
        return Err("JSON report does not match the catalog".into());
    }
    Ok(lib)
}

/// The computed value of the quantity printed as `name`.
fn quantity(r: &Reproduction, name: &str) -> f64 {
    r.quantities.iter().find(|q| q.quantity.to_string() == name).map(|q| q.computed).expect(name)
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let mut o = f();
    let dt = t.elapsed();
    o.detail = format!("{} [{:.3}s, limit {:.1}s]", o.detail, dt.as_secs_f64(), limit.as_secs_f64());
    if dt > limit {
        o.ok = false;
        o.detail.push_str(" too slow");
    }
    o
}

fn c1() -> Outcome {
    let r = match reproduce("sharp3x3") {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let r = &r[0];
    let s = quantity(r, "norm(sum_sym,op)");
    let l = quantity(r, "norm(sym_of_sum,op)");
    let q = quantity(r, "ratio(sym_of_sum/sum_sym,op)");
    let ok =
        within(s, 2.0 / 3.0, 1e-10) && within(l, 2.0 * 2f64.sqrt() / 3.0, 1e-10) && within(q, SQRT_2, 1e-10) && r.ok;
    Outcome { ok, detail: format!("‖Σsym‖={s:.12} ‖sym(Σ)‖={l:.12} ratio={q:.12}") }
}

fn c2() -> Outcome {
    match reproduce("example_114") {
        Ok(r) => {
            let q = quantity(&r[0], "ratio(sym_of_sum/sum_sym,op)");
            Outcome { ok: within(q, 1.1789471123, 1e-6) && r[0].ok, detail: format!("ratio={q:.12}") }
        }
        Err(e) => fail(e),
    }
}

fn c3() -> Outcome {
    match reproduce("expansive_counterexample") {
        Ok(r) => {
            let l: Vec<f64> = (0..3).map(|k| quantity(&r[0], &format!("eig(sum_abs,{k})"))).collect();
            let ok = within(l[0], 5.11522680, 1e-6)
                && within(l[1], 0.88353915, 1e-6)
                && within(l[2], 0.70372677, 1e-6)
                && l[1] < 1.0
                && r[0].ok;
            Outcome { ok, detail: format!("λ=({:.8}, {:.8}, {:.8})", l[0], l[1], l[2]) }
        }
        Err(e) => fail(e),
    }
}

fn c4() -> Outcome {
    match reproduce("c2_counterexample") {
        Ok(r) => {
            let q = quantity(&r[0], "ratio(sym_of_sum/sum_sym,fro)");
            Outcome { ok: within(q, 1.0144, 5e-4) && q > 1.0 && r[0].ok, detail: format!("ratio={q:.8}") }
        }
        Err(e) => fail(e),
    }
}

fn c5() -> Outcome {
    let r = match reproduce("frobenius_sharp_family") {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let mut worst: f64 = 0.0;
    for (d, rep) in (2..=6).zip(&r) {
        let target = ((1.0 + (d as f64).sqrt()) / 2.0).sqrt();
        worst = worst.max((quantity(rep, "ratio(sum/sum_abs,fro)") - target).abs());
    }
    Outcome {
        ok: r.len() == 5 && worst <= 1e-9 && r.iter().all(|x| x.ok),
        detail: format!("d=2..6 max error {worst:.2e}"),
    }
}

fn c6() -> Outcome {
    let r = match reproduce("lee_sharp_family") {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let mut worst: f64 = 0.0;
    for (&(m, n), rep) in [(3usize, 5usize), (5, 3), (4, 4)].iter().zip(&r) {
        let target = (m.min(n) as f64).sqrt();
        worst = worst.max((quantity(rep, "ratio(sum/sum_abs,op)") - target).abs());
    }
    Outcome { ok: r.len() == 3 && worst <= 1e-9 && r.iter().all(|x| x.ok), detail: format!("max error {worst:.2e}") }
}

fn c7() -> Outcome {
    let r = match reproduce("lemma61_extremizer") {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let mut worst: f64 = 0.0;
    for (n, rep) in (2..=8).zip(&r) {
        // oracle: diag(1, b, …, b), b = 1/(√n+1)
        let s = (n as f64).sqrt();
        let b = 1.0 / (s + 1.0);
        let nb = (n - 1) as f64;
        let direct = (1.0 + nb * b) / ((1.0 + s) / 2.0 * (1.0 + nb * b * b));
        worst = worst.max((quantity(rep, "one_inf_two_ratio") - 1.0).abs()).max((direct - 1.0).abs());
    }
    Outcome {
        ok: r.len() == 7 && worst <= 1e-10 && r.iter().all(|x| x.ok),
        detail: format!("n=2..8 max |ratio−1| {worst:.2e}"),
    }
}

fn c8() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("pool");
    let params = suites::SuiteParams { trials: 1000, seed: 0, ..Default::default() };
    match pool.install(|| suites::run("all", &params)) {
        Ok(reports) => {
            let failures: usize = reports.iter().map(|r| r.failures + r.errors.len()).sum();
            let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
            let ok = failures == 0 && reports.len() == suites::SUITES.len();
            Outcome {
                ok,
                detail: format!("{} suites, {checks} check ids, {failures} failures, single-threaded", reports.len()),
            }
        }
        Err(e) => fail(e.to_string()),
    }
}

fn c9() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=5 {
        for m in 1..=4 {
            let tuple = vec![ComplexMatrix::unit(n, 0, 1); m];
            for p in ["2", "3", "5", "inf"] {
                match check_by_id(&format!("schatten_qsym@schatten:{p}"), &tuple) {
                    Ok(r) => worst = worst.max((r.ratio.unwrap_or(f64::INFINITY) - 1.0).abs()),
                    Err(e) => return fail(e.to_string()),
                }
            }
        }
    }
    let mut rng = Rng::seed_from(9);
    let mut worst_psd: f64 = 0.0;
    for t in 0..40 {
        let n = 2 + t % 4;
        let tuple: Vec<_> = (0..2 + t % 3).map(|_| random_psd(n, &mut rng)).collect();
        for p in ["1", "1.5", "2"] {
            match check_by_id(&format!("schatten_qsym@schatten:{p}"), &tuple) {
                Ok(r) => worst_psd = worst_psd.max((r.ratio.unwrap_or(f64::INFINITY) - 1.0).abs()),
                Err(e) => return fail(e.to_string()),
            }
        }
    }
    Outcome {
        ok: worst <= 1e-9 && worst_psd <= 1e-9,
        detail: format!("E_12 tuples max |ratio−1| {worst:.2e}; PSD tuples {worst_psd:.2e}"),
    }
}

fn c10() -> Outcome {
    let e = catalog::sharp3x3();
    let mut worst: f64 = 0.0;
    for p in [1.0f64, 1.5, 2.0, 4.0, 16.0, 256.0] {
        // direct form of the curve, independent of the library's log form
        let curve = ((2f64.powf(p / 2.0) + 2f64.powf(1.0 - p / 2.0)) / 3.0).powf(1.0 / p);
        let problem = ProblemSpec::new("c_p_sym", 2, 3, Some(format!("schatten:{p}").parse().unwrap())).unwrap();
        match search::evaluate(&problem, &e.matrices) {
            Ok(v) => worst = worst.max((v - curve).abs()),
            Err(err) => return fail(err.to_string()),
        }
    }
    Outcome { ok: worst <= 1e-9, detail: format!("p ∈ {{1,1.5,2,4,16,256}} max error {worst:.2e}") }
}

fn c11() -> Outcome {
    let base = [
        "search",
        "--problem",
        "c_sym_op",
        "--m",
        "2",
        "--n",
        "2",
        "--restarts",
        "200",
        "--iters",
        "2000",
        "--seed",
        "42",
        "--format",
        "json",
    ];
    let best = |extra: &[&str]| -> Result<f64, String> {
        let args: Vec<&str> = base.iter().chain(extra).copied().collect();
        let (code, out) = cli(&args);
        if code != 0 {
            return Err(format!("exit {code}"));
        }
        let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        v["best_ratio"].as_f64().ok_or_else(|| "missing best_ratio".to_string())
    };
    match (best(&[]), best(&["--warm", "example_114"])) {
        (Ok(cold), Ok(warm)) => Outcome {
            ok: cold >= 1.15 && warm >= 1.1789471123 - 1e-6,
            detail: format!("cold {cold:.10}, warm-started {warm:.10}"),
        },
        (a, b) => fail(format!("{a:?} {b:?}")),
    }
}

fn c12() -> Outcome {
    let budget = Budget { restarts: 3, iters: 300 };
    let mut grid: Vec<ProblemSpec> = Vec::new();
    for (m, n) in [(2, 2), (3, 2), (2, 3)] {
        grid.push(ProblemSpec::new("c_sym_op", m, n, None).unwrap());
        for p in ["1", "2", "3", "inf"] {
            for id in ["c_p_sym", "c_p_qsym", "c_p_abs"] {
                grid.push(ProblemSpec::new(id, m, n, Some(format!("schatten:{p}").parse().unwrap())).unwrap());
            }
        }
    }
    let mut runs = 0;
    let mut closest = f64::INFINITY;
    for problem in &grid {
        let bound = problem.proven_bound().expect("bounded problem");
        for seed in 0..20 {
            match search::optimize(problem, budget, seed) {
                Ok(r) => {
                    runs += 1;
                    closest = closest.min(bound - r.best_ratio);
                    if r.best_ratio > bound + 1e-7 {
                        return fail(format!(
                            "{} m={} n={} {} seed {seed}: {} > {bound}",
                            problem.objective_id, problem.m, problem.n, problem.norm, r.best_ratio
                        ));
                    }
                }
                Err(e) => return fail(e.to_string()),
            }
        }
    }
    pass(format!("{runs} runs on {} problems, min gap to bound {closest:.2e}", grid.len()))
}

fn c13() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut at_001 = 0.0;
    for theta in [1.0f64, 0.3, 0.1, 0.03, 0.01] {
        let closed = (2.0 / (1.0 - theta.cos())).sqrt();
        match no_constant_ratio(theta) {
            Ok(v) => {
                worst = worst.max((v - closed).abs());
                if theta == 0.01 {
                    at_001 = v;
                }
            }
            Err(e) => return fail(e.to_string()),
        }
    }
    Outcome {
        ok: worst <= 1e-8 && at_001 > 200.0,
        detail: format!("max error {worst:.2e}, ratio at θ=0.01 {at_001:.4}"),
    }
}

fn main() {
    let ms = Duration::from_millis;
    let criteria: Vec<Criterion> = vec![
        ("1 sharp3x3 operator-norm sharpness", ms(100), c1),
        ("2 example_114 ratio", ms(100), c2),
        ("3 expansive counterexample eigenvalues", ms(100), c3),
        ("4 Frobenius sym ratio above 1", ms(100), c4),
        ("5 Frobenius sharp family", ms(500), c5),
        ("6 Lee sharp family", ms(200), c6),
        ("7 1·∞ vs 2² extremizer", ms(200), c7),
        ("8 property suites, 1000 trials", Duration::from_secs(120), c8),
        ("9 Schatten qsym phase transition", Duration::from_secs(1), c9),
        ("10 sym lower-bound curve", ms(500), c10),
        ("11 search floor", Duration::from_secs(60), c11),
        ("12 search sanity ceiling", Duration::from_secs(300), c12),
        ("13 no-constant divergence", ms(100), c13),
    ];
    let total = criteria.len();
    let mut failed = Vec::new();
    for (name, limit, f) in criteria {
        let o = timed(limit, f);
        println!("[{}] criterion {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        if !o.ok {
            failed.push(name);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {total} acceptance criteria passed");
}
