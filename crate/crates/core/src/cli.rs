//! Command-line front end: `modulus-lab verify|reproduce|search|list [flags]`.
//!
//! Exit codes: 0 success, 1 a mathematical failure, 2 a usage or config error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::catalog::{self, Reproduction, EXAMPLES};
use crate::error::{Error, Result};
use crate::inequalities::suites::{self, SuiteParams, SuiteReport, GROUPS, SUITES};
use crate::inequalities::{NormMode, CHECK_TOL};
use crate::norms::{Exponent, NormSpec};
use crate::search::{self, Budget, ProblemSpec, SearchResult, PROBLEMS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Caps the worker thread count.
pub const THREADS_ENV: &str = "MODULUS_LAB_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Verify,
    Reproduce,
    Search,
    List,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Flags shared by every subcommand. A JSON config file may set the same
/// keys; flags given on the command line win.
#[derive(Debug, Clone, Default, PartialEq, clap::Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Flags {
    /// Suite name, group (`equivalence`) or `all`
    #[arg(long)]
    pub suite: Option<String>,
    /// Catalog example id or `all`
    #[arg(long)]
    pub example: Option<String>,
    /// Search problem id
    #[arg(long)]
    pub problem: Option<String>,
    /// Number of matrices
    #[arg(long, visible_alias = "count")]
    #[serde(alias = "count")]
    pub m: Option<usize>,
    /// Matrix dimension
    #[arg(long, visible_alias = "dim")]
    #[serde(alias = "dim")]
    pub n: Option<usize>,
    /// Schatten exponent, a number ≥ 1 or `inf`
    #[arg(long)]
    pub p: Option<String>,
    /// Norm: `op`, `tr`, `fro`, `schatten:p`, `kyfan:k`, or `uin` (verify only)
    #[arg(long)]
    pub norm: Option<String>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub iters: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Comma-separated catalog ids used as warm starts for `search`
    #[arg(long)]
    pub warm: Option<String>,
    /// JSON file with defaults for any of these flags
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl Flags {
    fn or(self, other: Flags) -> Flags {
        Flags {
            suite: self.suite.or(other.suite),
            example: self.example.or(other.example),
            problem: self.problem.or(other.problem),
            m: self.m.or(other.m),
            n: self.n.or(other.n),
            p: self.p.or(other.p),
            norm: self.norm.or(other.norm),
            trials: self.trials.or(other.trials),
            restarts: self.restarts.or(other.restarts),
            iters: self.iters.or(other.iters),
            seed: self.seed.or(other.seed),
            tol: self.tol.or(other.tol),
            format: self.format.or(other.format),
            out: self.out.or(other.out),
            warm: self.warm.or(other.warm),
            config: self.config,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "modulus-lab",
    version,
    about = "Operator moduli: inequality checks, catalog reproduction and ratio search"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// For `list`: suites, examples, problems or all
    pub target: Option<String>,
    #[command(flatten)]
    pub flags: Flags,
}

/// A fully resolved invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub target: Option<String>,
    pub flags: Flags,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub format: Format,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let flags = match &cli.flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::BadArgument(format!("cannot read {}: {e}", path.display())))?;
                let file: Flags = serde_json::from_str(&text)
                    .map_err(|e| Error::BadArgument(format!("bad config {}: {e}", path.display())))?;
                cli.flags.or(file)
            }
            None => cli.flags,
        };
        let cfg = RunConfig {
            command: cli.command,
            target: cli.target,
            trials: flags.trials.unwrap_or(1000),
            seed: flags.seed.unwrap_or(0),
            tol: flags.tol.unwrap_or(CHECK_TOL),
            format: flags.format.unwrap_or_default(),
            flags,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reject unknown selectors and malformed parameters before any computation.
    fn validate(&self) -> Result<()> {
        let f = &self.flags;
        match self.command {
            Command::Verify => {
                suites::resolve(f.suite.as_deref().unwrap_or("all"))?;
                self.suite_params()?;
            }
            Command::Reproduce => {
                catalog::entries(self.example()?)?;
            }
            Command::Search => {
                self.problem()?;
                self.budget()?;
            }
            Command::List => {
                let t = self.target.as_deref().unwrap_or("all");
                if !["all", "suites", "examples", "problems"].contains(&t) {
                    return Err(Error::Unknown { kind: "list target", name: t.to_string() });
                }
            }
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return Err(Error::BadArgument(format!("bad tolerance {}", self.tol)));
        }
        Ok(())
    }

    fn exponent(&self) -> Result<Option<Exponent>> {
        self.flags.p.as_deref().map(str::parse).transpose()
    }

    fn suite_params(&self) -> Result<SuiteParams> {
        let f = &self.flags;
        let params = SuiteParams {
            trials: self.trials,
            seed: self.seed,
            dim: f.n,
            count: f.m,
            p: self.exponent()?,
            norm: f.norm.as_deref().map(str::parse::<NormMode>).transpose()?,
            tol: self.tol,
        };
        if params.trials == 0 || params.dim == Some(0) || params.count == Some(0) {
            return Err(Error::BadArgument("trials, dim and count must be positive".into()));
        }
        Ok(params)
    }

    fn example(&self) -> Result<&str> {
        self.flags.example.as_deref().ok_or_else(|| Error::BadArgument("reproduce needs --example".into()))
    }

    fn problem(&self) -> Result<ProblemSpec> {
        let f = &self.flags;
        let id = f.problem.as_deref().ok_or_else(|| Error::BadArgument("search needs --problem".into()))?;
        let norm = match (&f.norm, self.exponent()?) {
            (Some(s), _) => Some(s.parse::<NormSpec>()?),
            (None, Some(p)) => Some(NormSpec::Schatten(p)),
            (None, None) => None,
        };
        ProblemSpec::new(id, f.m.unwrap_or(2), f.n.unwrap_or(2), norm)
    }

    fn budget(&self) -> Result<Budget> {
        let b = Budget { restarts: self.flags.restarts.unwrap_or(50), iters: self.flags.iters.unwrap_or(1000) };
        if b.restarts == 0 || b.iters == 0 {
            return Err(Error::BadArgument("restarts and iters must be positive".into()));
        }
        Ok(b)
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Unknown { .. }
            | Error::BadArgument(_)
            | Error::BadNormParam(_)
            | Error::BadIndex(_)
            | Error::ShapeMismatch(_)
    )
}

fn exit_code(e: &Error) -> i32 {
    if is_usage(e) {
        EXIT_USAGE
    } else {
        EXIT_FAILURE
    }
}

/// A finished run: exit code and the report text.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |v| format!("{v:.12}"))
}

fn verify(cfg: &RunConfig) -> Result<Outcome> {
    let reports = suites::run(cfg.flags.suite.as_deref().unwrap_or("all"), &cfg.suite_params()?)?;
    let ok = reports.iter().all(SuiteReport::passed);
    let report = match cfg.format {
        Format::Json => json(&reports),
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let verdict = if r.passed() { "ok" } else { "FAIL" };
                let _ = writeln!(s, "{} [{verdict}] trials={} seed={} tol={:e}", r.suite, r.trials, r.seed, r.tol);
                for c in &r.checks {
                    let _ = writeln!(
                        s,
                        "  {:<32} {:>6}/{:<6} worst_margin={:+.3e} worst_ratio={} digest={}",
                        c.check_id,
                        c.passed,
                        c.runs,
                        c.worst_margin,
                        fmt_opt(c.worst_ratio),
                        c.worst_digest
                    );
                }
                for e in &r.errors {
                    let _ = writeln!(s, "  error: {e}");
                }
            }
            s
        }
    };
    Ok(Outcome { code: if ok { EXIT_OK } else { EXIT_FAILURE }, report })
}

fn reproduce(cfg: &RunConfig) -> Result<Outcome> {
    let reps: Vec<Reproduction> = catalog::reproduce(cfg.example()?)?;
    let ok = reps.iter().all(|r| r.ok);
    let report = match cfg.format {
        Format::Json => json(&reps),
        Format::Text => {
            let mut s = String::new();
            for r in &reps {
                let _ = writeln!(s, "{} [{}]", r.label, if r.ok { "ok" } else { "FAIL" });
                for q in &r.quantities {
                    let rel = match q.relation {
                        catalog::Relation::Eq => format!("= {} ± {:e}", q.expected, q.tol),
                        catalog::Relation::Lt => format!("< {}", q.expected),
                        catalog::Relation::Gt => format!("> {}", q.expected),
                    };
                    let _ = writeln!(s, "  {:<44} {:.12}  {rel}  {}", q.quantity.to_string(), q.computed, ok_str(q.ok));
                }
                for t in &r.tight {
                    let _ = writeln!(s, "  tight {:<38} ratio={}  {}", t.check_id, fmt_opt(t.ratio), ok_str(t.ok));
                }
            }
            s
        }
    };
    Ok(Outcome { code: if ok { EXIT_OK } else { EXIT_FAILURE }, report })
}

fn ok_str(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn search(cfg: &RunConfig) -> Result<Outcome> {
    let problem = cfg.problem()?;
    let budget = cfg.budget()?;
    let result: SearchResult = match &cfg.flags.warm {
        Some(ids) => {
            let mut entries = Vec::new();
            for id in ids.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                entries.extend(catalog::entries(id)?);
            }
            let fits = |e: &catalog::CatalogEntry| {
                e.matrices.len() == problem.m
                    && e.matrices.iter().all(|a| a.rows() == problem.n && a.cols() == problem.n)
            };
            if !entries.iter().any(fits) {
                return Err(Error::ShapeMismatch(format!(
                    "no warm-start entry has {} matrices of size {}x{}",
                    problem.m, problem.n, problem.n
                )));
            }
            entries.retain(fits);
            search::warm_start(&problem, &entries, budget, cfg.seed)?
        }
        None => search::optimize(&problem, budget, cfg.seed)?,
    };
    let bound = match result.proven_bound {
        Some(c) => format!("proven bound {c:.12}"),
        None => "heuristic objective, no proven bound".into(),
    };
    let summary = format!(
        "{} m={} n={} norm={}: best_ratio {:.12} ({bound}); restarts={} iters={} seed={} wall_time={:.2}s\n",
        problem.objective_id,
        problem.m,
        problem.n,
        problem.norm,
        result.best_ratio,
        result.restarts,
        result.iters,
        result.seed,
        result.wall_time_s
    );
    let report = match (cfg.format, &cfg.flags.out) {
        (_, Some(_)) | (Format::Json, None) => json(&result),
        (Format::Text, None) => summary.clone(),
    };
    if cfg.flags.out.is_some() {
        eprint!("{summary}");
    }
    let code = if result.exceeds_bound() { EXIT_FAILURE } else { EXIT_OK };
    Ok(Outcome { code, report })
}

#[derive(Serialize)]
struct Listing {
    #[serde(skip_serializing_if = "Option::is_none")]
    suites: Option<Vec<(String, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    groups: Option<Vec<(String, Vec<String>)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    examples: Option<Vec<(String, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    problems: Option<Vec<(String, String)>>,
}

fn list(cfg: &RunConfig) -> Outcome {
    let t = cfg.target.as_deref().unwrap_or("all");
    let want = |k: &str| t == "all" || t == k;
    let pairs = |xs: &[(&str, &str)]| xs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect::<Vec<_>>();
    let listing = Listing {
        suites: want("suites").then(|| SUITES.iter().map(|s| (s.name.to_string(), s.statement.to_string())).collect()),
        groups: want("suites")
            .then(|| GROUPS.iter().map(|(g, m)| (g.to_string(), m.iter().map(|s| s.to_string()).collect())).collect()),
        examples: want("examples").then(|| pairs(EXAMPLES)),
        problems: want("problems").then(|| pairs(PROBLEMS)),
    };
    let report = match cfg.format {
        Format::Json => json(&listing),
        Format::Text => {
            let mut s = String::new();
            let mut section = |title: &str, rows: &Option<Vec<(String, String)>>| {
                if let Some(rows) = rows {
                    let _ = writeln!(s, "{title}:");
                    for (k, v) in rows {
                        let _ = writeln!(s, "  {k:<26} {v}");
                    }
                }
            };
            section("suites", &listing.suites);
            section("examples", &listing.examples);
            section("problems", &listing.problems);
            if let Some(groups) = &listing.groups {
                let _ = writeln!(s, "groups:");
                for (g, m) in groups {
                    let _ = writeln!(s, "  {g:<26} {}", m.join(", "));
                }
            }
            s
        }
    };
    Outcome { code: EXIT_OK, report }
}

fn thread_count() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::BadArgument(format!("{THREADS_ENV} must be a positive integer, got '{v}'"))),
        },
        Err(_) => Ok(None),
    }
}

/// Execute a resolved configuration.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count()? {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Error::BadArgument(format!("thread pool: {e}")))?;
    pool.install(|| match cfg.command {
        Command::Verify => verify(cfg),
        Command::Reproduce => reproduce(cfg),
        Command::Search => search(cfg),
        Command::List => Ok(list(cfg)),
    })
}

/// Parse `args` (including the program name), run, and write the report to
/// `--out` or `stdout`. Diagnostics go to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    let outcome = RunConfig::from_cli(cli).and_then(|cfg| {
        let out = execute(&cfg)?;
        Ok((cfg, out))
    });
    match outcome {
        Ok((cfg, out)) => {
            let written = match &cfg.flags.out {
                Some(path) => std::fs::write(path, &out.report),
                None => stdout.write_all(out.report.as_bytes()),
            };
            match written {
                Ok(()) => out.code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: cannot write report: {e}");
                    EXIT_USAGE
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["modulus-lab"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(go(&["verify", "--suite", "nosuch"]).0, EXIT_USAGE);
        assert_eq!(go(&["reproduce", "--example", "nosuch"]).0, EXIT_USAGE);
        assert_eq!(go(&["reproduce"]).0, EXIT_USAGE);
        assert_eq!(go(&["search", "--problem", "c_sym_op", "--restarts", "0"]).0, EXIT_USAGE);
        assert_eq!(go(&["search", "--problem", "nosuch"]).0, EXIT_USAGE);
        assert_eq!(go(&["list", "widgets"]).0, EXIT_USAGE);
        assert_eq!(go(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(go(&["verify", "--trials", "-3"]).0, EXIT_USAGE);
        assert_eq!(go(&["verify", "--suite", "lee", "--p", "0.5"]).0, EXIT_USAGE);
    }

    #[test]
    fn list_contents() {
        let (code, out, _) = go(&["list", "examples"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("sharp3x3"));
        assert!(go(&["list", "problems"]).1.contains("c_p_sym"));
        let (_, out, _) = go(&["list", "suites", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["suites"].as_array().unwrap().len(), SUITES.len());
        assert!(v.get("examples").is_none());
    }

    #[test]
    fn reproduce_sharp_pair() {
        let (code, out, _) = go(&["reproduce", "--example", "sharp3x3"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("1.414213562373"));
    }

    #[test]
    fn verify_json_is_reproducible() {
        let args =
            ["verify", "--suite", "equivalence", "--dim", "4", "--trials", "30", "--seed", "7", "--format", "json"];
        let (code, a, _) = go(&args);
        assert_eq!(code, EXIT_OK);
        assert_eq!(a, go(&args).1);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 3);
    }

    #[test]
    fn config_file_and_flag_precedence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        std::fs::write(&path, r#"{"suite": "lee", "trials": 5, "seed": 3, "format": "json"}"#).unwrap();
        let p = path.to_str().unwrap();
        let (code, out, _) = go(&["verify", "--config", p, "--trials", "7"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[0]["suite"], "lee");
        assert_eq!(v[0]["trials"], 7);
        assert_eq!(v[0]["seed"], 3);
        std::fs::write(&path, r#"{"bogus": 1}"#).unwrap();
        assert_eq!(go(&["verify", "--config", p]).0, EXIT_USAGE);
    }

    #[test]
    fn search_writes_result_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        let p = path.to_str().unwrap();
        let args = [
            "search",
            "--problem",
            "c_sym_op",
            "--m",
            "2",
            "--n",
            "3",
            "--restarts",
            "2",
            "--iters",
            "30",
            "--warm",
            "sharp3x3",
            "--out",
            p,
        ];
        assert_eq!(go(&args).0, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        for k in ["problem", "best_ratio", "witness", "seed", "restarts", "iters", "history", "wall_time_s"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        assert!(v["best_ratio"].as_f64().unwrap() >= std::f64::consts::SQRT_2 - 1e-6);
        let bad =
            ["search", "--problem", "c_sym_op", "--n", "2", "--warm", "sharp3x3", "--restarts", "1", "--iters", "1"];
        assert_eq!(go(&bad).0, EXIT_USAGE);
    }
}
