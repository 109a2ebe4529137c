//! Explicit matrix instances with their expected quantities.
//!
//! Each constructor returns a [`CatalogEntry`]; [`reproduce`] recomputes every
//! expected quantity and reruns the checks the entry is declared tight for.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::inequalities::{check_by_id, sym_lower_bound_curve};
use crate::linalg::{hermitian_eig, psd_sqrt, ComplexMatrix, C64};
use crate::moduli::{qsym_modulus, sum_of_moduli, sym_modulus, usual_modulus, ModulusKind};
use crate::norms::{norm, Exponent, NormSpec};

/// Matrix built from the tuple `A_1, …, A_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obj {
    Sum,
    SumAbs,
    SumSym,
    SumQsym,
    AbsOfSum,
    SymOfSum,
    QsymOfSum,
}

impl Obj {
    const ALL: [(Obj, &'static str); 7] = [
        (Obj::Sum, "sum"),
        (Obj::SumAbs, "sum_abs"),
        (Obj::SumSym, "sum_sym"),
        (Obj::SumQsym, "sum_qsym"),
        (Obj::AbsOfSum, "abs_of_sum"),
        (Obj::SymOfSum, "sym_of_sum"),
        (Obj::QsymOfSum, "qsym_of_sum"),
    ];

    fn name(self) -> &'static str {
        Obj::ALL.iter().find(|(o, _)| *o == self).map(|(_, n)| *n).expect("listed")
    }

    pub fn build(self, mats: &[ComplexMatrix]) -> Result<ComplexMatrix> {
        let total = || ComplexMatrix::sum(mats).ok_or_else(|| Error::BadArgument("empty matrix tuple".into()));
        match self {
            Obj::Sum => total(),
            Obj::SumAbs => sum_of_moduli(ModulusKind::Usual, mats),
            Obj::SumSym => sum_of_moduli(ModulusKind::ArithmeticSym, mats),
            Obj::SumQsym => sum_of_moduli(ModulusKind::QuadraticSym, mats),
            Obj::AbsOfSum => usual_modulus(&total()?),
            Obj::SymOfSum => sym_modulus(&total()?),
            Obj::QsymOfSum => qsym_modulus(&total()?),
        }
    }
}

impl FromStr for Obj {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Obj::ALL
            .iter()
            .find(|(_, n)| *n == s.trim())
            .map(|(o, _)| *o)
            .ok_or_else(|| Error::Unknown { kind: "matrix expression", name: s.to_string() })
    }
}

/// A scalar computed from a matrix tuple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    Norm(Obj, NormSpec),
    /// `k`-th largest eigenvalue, zero-based.
    Eig(Obj, usize),
    Ratio(Obj, Obj, NormSpec),
    /// `max |X − c I|` entrywise.
    IdentityDefect(Obj, f64),
    /// `‖X‖_1‖X‖_∞ / (((1+√n)/2)‖X‖_2²)` of the first matrix.
    OneInfTwoRatio,
}

impl Quantity {
    pub fn compute(&self, mats: &[ComplexMatrix]) -> Result<f64> {
        match *self {
            Quantity::Norm(o, spec) => norm(&o.build(mats)?, spec),
            Quantity::Eig(o, k) => {
                let e = hermitian_eig(&o.build(mats)?)?;
                e.values.get(k).copied().ok_or_else(|| Error::BadIndex(format!("eigenvalue {k}")))
            }
            Quantity::Ratio(a, b, spec) => {
                let den = norm(&b.build(mats)?, spec)?;
                if den == 0.0 {
                    return Err(Error::Degenerate("zero denominator".into()));
                }
                Ok(norm(&a.build(mats)?, spec)? / den)
            }
            Quantity::IdentityDefect(o, c) => {
                let x = o.build(mats)?;
                let n = x.ensure_square()?;
                Ok(x.max_diff(&ComplexMatrix::identity(n).scale(c)))
            }
            Quantity::OneInfTwoRatio => {
                let x = mats.first().ok_or_else(|| Error::BadArgument("empty matrix tuple".into()))?;
                let n = x.ensure_square()? as f64;
                let (t, o, f) =
                    (norm(x, NormSpec::Trace)?, norm(x, NormSpec::Operator)?, norm(x, NormSpec::Frobenius)?);
                Ok(t * o / ((1.0 + n.sqrt()) / 2.0 * f * f))
            }
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Norm(o, s) => write!(f, "norm({},{s})", o.name()),
            Quantity::Eig(o, k) => write!(f, "eig({},{k})", o.name()),
            Quantity::Ratio(a, b, s) => write!(f, "ratio({}/{},{s})", a.name(), b.name()),
            Quantity::IdentityDefect(o, c) => write!(f, "dev({},{c:e})", o.name()),
            Quantity::OneInfTwoRatio => write!(f, "one_inf_two_ratio"),
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Unknown { kind: "quantity", name: s.to_string() };
        if s == "one_inf_two_ratio" {
            return Ok(Quantity::OneInfTwoRatio);
        }
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        let (first, second) = body.split_once(',').ok_or_else(bad)?;
        Ok(match head {
            "norm" => Quantity::Norm(first.parse()?, second.parse()?),
            "eig" => Quantity::Eig(first.parse()?, second.parse().map_err(|_| bad())?),
            "dev" => Quantity::IdentityDefect(first.parse()?, second.parse().map_err(|_| bad())?),
            "ratio" => {
                let (a, b) = first.split_once('/').ok_or_else(bad)?;
                Quantity::Ratio(a.parse()?, b.parse()?, second.parse()?)
            }
            _ => return Err(bad()),
        })
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `|computed − value| ≤ tol`
    Eq,
    /// `computed < value`
    Lt,
    /// `computed > value`
    Gt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub quantity: Quantity,
    pub relation: Relation,
    pub value: f64,
    pub tol: f64,
}

impl Expected {
    fn eq(quantity: Quantity, value: f64, tol: f64) -> Self {
        Expected { quantity, relation: Relation::Eq, value, tol }
    }

    fn lt(quantity: Quantity, value: f64) -> Self {
        Expected { quantity, relation: Relation::Lt, value, tol: 0.0 }
    }

    fn gt(quantity: Quantity, value: f64) -> Self {
        Expected { quantity, relation: Relation::Gt, value, tol: 0.0 }
    }

    pub fn holds(&self, computed: f64) -> bool {
        match self.relation {
            Relation::Eq => (computed - self.value).abs() <= self.tol,
            Relation::Lt => computed < self.value,
            Relation::Gt => computed > self.value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    /// `id` with its parameters, e.g. `lee_sharp_family[m=3,n=5]`.
    pub label: String,
    pub matrices: Vec<ComplexMatrix>,
    pub expected: Vec<Expected>,
    pub tight_checks: Vec<String>,
    /// Allowed `|ratio − 1|` on the tight checks.
    pub tight_tol: f64,
    pub provenance: String,
}

impl CatalogEntry {
    pub fn dim(&self) -> usize {
        self.matrices.first().map_or(0, |a| a.rows())
    }
}

const OP: NormSpec = NormSpec::Operator;

fn entry(
    id: &str,
    label: String,
    matrices: Vec<ComplexMatrix>,
    expected: Vec<Expected>,
    tight_checks: &[&str],
    provenance: &str,
) -> CatalogEntry {
    CatalogEntry {
        id: id.into(),
        label,
        matrices,
        expected,
        tight_checks: tight_checks.iter().map(|s| s.to_string()).collect(),
        tight_tol: 1e-9,
        provenance: provenance.into(),
    }
}

fn real_vec(xs: &[f64], s: f64) -> Vec<C64> {
    xs.iter().map(|&x| C64::new(x * s, 0.0)).collect()
}

/// The matrix unit `E_12` padded into `M_n`.
pub fn e12(n: usize) -> Result<CatalogEntry> {
    if n < 2 {
        return Err(Error::BadArgument(format!("e12 needs n ≥ 2, got {n}")));
    }
    let h = SQRT_2 / 2.0;
    let mut expected = vec![
        Expected::eq(Quantity::Norm(Obj::SumSym, OP), 0.5, 1e-12),
        Expected::eq(Quantity::Norm(Obj::SumQsym, NormSpec::Trace), SQRT_2, 1e-12),
    ];
    for k in 0..n {
        let (s, q) = if k < 2 { (0.5, h) } else { (0.0, 0.0) };
        expected.push(Expected::eq(Quantity::Eig(Obj::SumSym, k), s, 1e-12));
        expected.push(Expected::eq(Quantity::Eig(Obj::SumQsym, k), q, 1e-12));
    }
    Ok(entry(
        "e12",
        format!("e12[n={n}]"),
        vec![ComplexMatrix::unit(n, 0, 1)],
        expected,
        &[
            "equiv_sym_lower@op",
            "equiv_qsym_lower@op",
            "equiv_qsym_upper@tr",
            "sym_vs_qsym_upper@op",
            "sum_vs_sym@op",
            "sum_vs_qsym@op",
            "schatten_sym@schatten:1",
            "schatten_sym@schatten:2",
            "schatten_sym@schatten:3",
            "schatten_sym@schatten:inf",
            "schatten_qsym@schatten:2",
            "schatten_qsym@schatten:3",
            "schatten_qsym@schatten:inf",
        ],
        "nilpotent matrix unit; extremal for the one-matrix equivalences",
    ))
}

/// Rank-one pair in `M_3` for which `‖|A+B|_sym‖_∞ = √2‖|A|_sym + |B|_sym‖_∞`.
pub fn sharp3x3() -> CatalogEntry {
    let s = 1.0 / 3f64.sqrt();
    let u = real_vec(&[1.0, 1.0, 1.0], s);
    let v = real_vec(&[1.0, -1.0, -1.0], s);
    let x = real_vec(&[-1.0, 1.0, -1.0], s);
    let y = real_vec(&[1.0, 1.0, -1.0], s);
    let a = ComplexMatrix::outer(&u, &v);
    let b = ComplexMatrix::outer(&x, &y);
    let top = 2.0 * SQRT_2 / 3.0;
    let mut expected = vec![
        Expected::eq(Quantity::Norm(Obj::SumSym, OP), 2.0 / 3.0, 1e-10),
        Expected::eq(Quantity::Norm(Obj::SymOfSum, OP), top, 1e-10),
        Expected::eq(Quantity::IdentityDefect(Obj::SumSym, 2.0 / 3.0), 0.0, 1e-12),
        Expected::eq(Quantity::Eig(Obj::SymOfSum, 0), top, 1e-10),
        Expected::eq(Quantity::Eig(Obj::SymOfSum, 1), top / 2.0, 1e-10),
        Expected::eq(Quantity::Eig(Obj::SymOfSum, 2), top / 2.0, 1e-10),
        Expected::eq(Quantity::Ratio(Obj::SymOfSum, Obj::SumSym, OP), SQRT_2, 1e-10),
    ];
    for p in [1.0, 1.5, 2.0, 4.0, 16.0, 256.0] {
        let p = Exponent::Finite(p);
        expected.push(Expected::eq(
            Quantity::Ratio(Obj::SymOfSum, Obj::SumSym, NormSpec::Schatten(p)),
            sym_lower_bound_curve(p),
            1e-9,
        ));
    }
    entry(
        "sharp3x3",
        "sharp3x3".into(),
        vec![a, b],
        expected,
        &["bourin_lee@op", "sym_endpoints@schatten:inf", "corollary_24@j=0"],
        "rank-one pair in M_3 showing √2 is optimal for the sym triangle inequality",
    )
}

/// Pair in `M_2` with operator-norm sym triangle ratio ≈ 1.1789471123.
pub fn example_114() -> CatalogEntry {
    let a = ComplexMatrix::from_pairs(
        2,
        2,
        &[(-0.773354, -3.706913), (-0.605203, -0.251180), (0.302923, 1.869626), (0.296552, 0.139226)],
    )
    .expect("finite");
    let b = ComplexMatrix::from_pairs(
        2,
        2,
        &[(-0.614194, 0.304837), (-0.919027, 0.530163), (2.687653, 0.304749), (4.176505, 0.211368)],
    )
    .expect("finite");
    let ratio = Quantity::Ratio(Obj::SymOfSum, Obj::SumSym, OP);
    entry(
        "example_114",
        "example_114".into(),
        vec![a, b],
        vec![Expected::eq(ratio, 1.1789471123, 1e-6), Expected::lt(ratio, SQRT_2)],
        &[],
        "2×2 complex pair giving a lower bound for the optimal constant c(m,2)",
    )
}

/// `X_1 + X_2 = I` with `λ_2(|X_1| + |X_2|) < 1`.
pub fn expansive_counterexample() -> CatalogEntry {
    let x1 = ComplexMatrix::from_real(3, 3, &[-1.0, -1.0, 0.0, 1.0, 1.0, 0.0, -1.0, -1.0, 1.0]).expect("finite");
    let x2 = &ComplexMatrix::identity(3) - &x1;
    let mut expected: Vec<Expected> = [5.11522680, 0.88353915, 0.70372677]
        .iter()
        .enumerate()
        .map(|(k, &v)| Expected::eq(Quantity::Eig(Obj::SumAbs, k), v, 1e-6))
        .collect();
    expected.push(Expected::lt(Quantity::Eig(Obj::SumAbs, 1), 1.0));
    expected.push(Expected::eq(Quantity::IdentityDefect(Obj::Sum, 1.0), 0.0, 0.0));
    entry(
        "expansive_counterexample",
        "expansive_counterexample".into(),
        vec![x1, x2],
        expected,
        &[],
        "integer decomposition of the identity with λ_2(|X_1|+|X_2|) < 1",
    )
}

/// `A_k = E_{1k}` for `k ≤ min{m,n}`, the rest zero.
pub fn lee_sharp_family(m: usize, n: usize) -> Result<CatalogEntry> {
    if m == 0 || n == 0 {
        return Err(Error::BadArgument("m and n must be positive".into()));
    }
    let l = m.min(n);
    let mats = (0..m).map(|k| if k < l { ComplexMatrix::unit(n, 0, k) } else { ComplexMatrix::zeros(n, n) }).collect();
    let r = (l as f64).sqrt();
    Ok(entry(
        "lee_sharp_family",
        format!("lee_sharp_family[m={m},n={n}]"),
        mats,
        vec![
            Expected::eq(Quantity::Norm(Obj::Sum, OP), r, 1e-9),
            Expected::eq(Quantity::Norm(Obj::SumAbs, OP), 1.0, 1e-9),
            Expected::eq(Quantity::Ratio(Obj::Sum, Obj::SumAbs, OP), r, 1e-9),
        ],
        &["lee@op"],
        "first-row matrix units; extremal for the √min{m,n} Lee bound",
    ))
}

/// Rank-one `A_k = e_1 v_k^*` with Gram matrix `(1−t)I_d + tJ_d`, `t = 1/(√d+1)`.
pub fn frobenius_sharp_family(m: usize, n: usize) -> Result<CatalogEntry> {
    if m == 0 || n == 0 {
        return Err(Error::BadArgument("m and n must be positive".into()));
    }
    let d = m.min(n);
    let t = 1.0 / ((d as f64).sqrt() + 1.0);
    let g = ComplexMatrix::from_fn(d, d, |i, j| C64::new(if i == j { 1.0 } else { t }, 0.0));
    let v = psd_sqrt(&g)?;
    let mats = (0..m)
        .map(|k| {
            let mut a = ComplexMatrix::zeros(n, n);
            if k < d {
                for j in 0..d {
                    a[(0, j)] = v[(j, k)].conj();
                }
            }
            a
        })
        .collect();
    let c2 = (1.0 + (d as f64).sqrt()) / 2.0;
    Ok(entry(
        "frobenius_sharp_family",
        format!("frobenius_sharp_family[m={m},n={n}]"),
        mats,
        vec![Expected::eq(Quantity::Ratio(Obj::Sum, Obj::SumAbs, NormSpec::Frobenius), c2.sqrt(), 1e-9)],
        &["frob_c2@fro"],
        "rank-one tuple with equiangular Gram matrix; extremal for the Frobenius Lee bound",
    ))
}

/// Real pair in `M_2` whose Frobenius sym triangle ratio exceeds 1.
pub fn c2_counterexample() -> CatalogEntry {
    let a = ComplexMatrix::from_real(2, 2, &[0.0, -1.0, 1.0, -4.0]).expect("finite");
    let b = ComplexMatrix::from_real(2, 2, &[-16.0, -7.0, 9.0, 4.0]).expect("finite");
    let ratio = Quantity::Ratio(Obj::SymOfSum, Obj::SumSym, NormSpec::Frobenius);
    entry(
        "c2_counterexample",
        "c2_counterexample".into(),
        vec![a, b],
        vec![Expected::eq(ratio, 1.0144, 5e-4), Expected::gt(ratio, 1.0)],
        &[],
        "real 2×2 pair showing the Frobenius sym triangle constant exceeds 1",
    )
}

/// `X_θ = [[cos θ, 0], [sin θ, 0]]`.
pub fn x_theta(theta: f64) -> Result<CatalogEntry> {
    if !(theta > 0.0 && theta <= std::f64::consts::FRAC_PI_2) {
        return Err(Error::BadArgument(format!("theta {theta} outside (0, π/2]")));
    }
    let c = theta.cos();
    let sym = [(1.0 + c) / 2.0, (1.0 - c) / 2.0];
    let mut expected = Vec::new();
    for (k, s) in sym.into_iter().enumerate() {
        expected.push(Expected::eq(Quantity::Eig(Obj::SumSym, k), s, 1e-10));
        expected.push(Expected::eq(Quantity::Eig(Obj::SumQsym, k), s.sqrt(), 1e-10));
    }
    Ok(entry(
        "x_theta",
        format!("x_theta[theta={theta}]"),
        vec![crate::inequalities::x_theta_matrix(theta)],
        expected,
        &[],
        "2×2 family with no eigenvalue-wise constant between the symmetric moduli",
    ))
}

/// `diag(a, b, …, b)` with `b = a/(√n+1)`.
pub fn lemma61_extremizer(n: usize, a: f64) -> Result<CatalogEntry> {
    if n == 0 || !(a.is_finite() && a > 0.0) {
        return Err(Error::BadArgument(format!("need n ≥ 1 and a > 0, got n={n}, a={a}")));
    }
    let mut d = vec![a / ((n as f64).sqrt() + 1.0); n];
    d[0] = a;
    Ok(entry(
        "lemma61_extremizer",
        format!("lemma61_extremizer[n={n},a={a}]"),
        vec![ComplexMatrix::diag(&d)],
        vec![Expected::eq(Quantity::OneInfTwoRatio, 1.0, 1e-10)],
        &["one_inf_two"],
        "diagonal extremizer for ‖X‖_1‖X‖_∞ ≤ ((1+√n)/2)‖X‖_2²",
    ))
}

/// Catalog ids with a one-line description.
pub const EXAMPLES: &[(&str, &str)] = &[
    ("e12", "matrix unit E_12 in M_n, n ∈ {2, 5}"),
    ("sharp3x3", "rank-one pair attaining √2 in the sym triangle inequality"),
    ("example_114", "2×2 pair with sym triangle ratio ≈ 1.1789471123"),
    ("expansive_counterexample", "X_1 + X_2 = I with λ_2(|X_1|+|X_2|) < 1"),
    ("lee_sharp_family", "E_{1k} tuples, (m,n) ∈ {(3,5), (5,3), (4,4)}"),
    ("frobenius_sharp_family", "equiangular rank-one tuples, d ∈ {2,…,6}"),
    ("c2_counterexample", "real 2×2 pair with Frobenius sym ratio ≈ 1.0144"),
    ("x_theta", "X_θ on a grid of angles"),
    ("lemma61_extremizer", "diagonal extremizers, n ∈ {2,…,8}"),
];

/// The entries reproduced for `id`, over its default parameter grid.
pub fn entries(id: &str) -> Result<Vec<CatalogEntry>> {
    Ok(match id {
        "e12" => vec![e12(2)?, e12(5)?],
        "sharp3x3" => vec![sharp3x3()],
        "example_114" => vec![example_114()],
        "expansive_counterexample" => vec![expansive_counterexample()],
        "lee_sharp_family" => {
            [(3, 5), (5, 3), (4, 4)].iter().map(|&(m, n)| lee_sharp_family(m, n)).collect::<Result<_>>()?
        }
        "frobenius_sharp_family" => (2..=6).map(|d| frobenius_sharp_family(d, d)).collect::<Result<_>>()?,
        "c2_counterexample" => vec![c2_counterexample()],
        "x_theta" => {
            let grid = [std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_3, 1.0, 0.3, 0.1, 0.01];
            grid.iter().map(|&t| x_theta(t)).collect::<Result<_>>()?
        }
        "lemma61_extremizer" => (2..=8).map(|n| lemma61_extremizer(n, 1.0)).collect::<Result<_>>()?,
        "all" => {
            let mut v = Vec::new();
            for (id, _) in EXAMPLES {
                v.extend(entries(id)?);
            }
            v
        }
        other => return Err(Error::Unknown { kind: "example", name: other.to_string() }),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantityOutcome {
    pub quantity: Quantity,
    pub relation: Relation,
    pub expected: f64,
    pub tol: f64,
    pub computed: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TightOutcome {
    pub check_id: String,
    pub ratio: Option<f64>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reproduction {
    pub label: String,
    pub provenance: String,
    pub quantities: Vec<QuantityOutcome>,
    pub tight: Vec<TightOutcome>,
    pub ok: bool,
}

/// Recompute every expected quantity of `entry` and rerun its tight checks.
pub fn evaluate(entry: &CatalogEntry) -> Result<Reproduction> {
    let mut quantities = Vec::new();
    for e in &entry.expected {
        let computed = e.quantity.compute(&entry.matrices)?;
        quantities.push(QuantityOutcome {
            quantity: e.quantity,
            relation: e.relation,
            expected: e.value,
            tol: e.tol,
            computed,
            ok: e.holds(computed),
        });
    }
    let mut tight = Vec::new();
    for id in &entry.tight_checks {
        let r = check_by_id(id, &entry.matrices)?;
        let ok = r.pass && r.ratio.is_some_and(|q| (q - 1.0).abs() <= entry.tight_tol);
        tight.push(TightOutcome { check_id: r.check_id, ratio: r.ratio, ok });
    }
    let ok = quantities.iter().all(|q| q.ok) && tight.iter().all(|t| t.ok);
    Ok(Reproduction { label: entry.label.clone(), provenance: entry.provenance.clone(), quantities, tight, ok })
}

pub fn reproduce(id: &str) -> Result<Vec<Reproduction>> {
    entries(id)?.iter().map(evaluate).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_reproduces() {
        for r in reproduce("all").unwrap() {
            assert!(r.ok, "{r:#?}");
        }
    }

    #[test]
    fn quantity_grammar_round_trip() {
        let qs = [
            Quantity::Norm(Obj::SumSym, OP),
            Quantity::Eig(Obj::SumAbs, 2),
            Quantity::Ratio(Obj::SymOfSum, Obj::SumSym, NormSpec::Schatten(Exponent::Finite(1.5))),
            Quantity::IdentityDefect(Obj::SumSym, 2.0 / 3.0),
            Quantity::OneInfTwoRatio,
        ];
        for q in qs {
            assert_eq!(q.to_string().parse::<Quantity>().unwrap(), q);
        }
        assert!("eig(nope,1)".parse::<Quantity>().is_err());
    }

    #[test]
    fn sharp_pair_sym_sum_is_scaled_identity() {
        let e = sharp3x3();
        let s = Obj::SumSym.build(&e.matrices).unwrap();
        assert!(s.max_diff(&ComplexMatrix::identity(3).scale(2.0 / 3.0)) < 1e-12);
    }

    #[test]
    fn example_114_scale_invariant() {
        let e = example_114();
        let q = Quantity::Ratio(Obj::SymOfSum, Obj::SumSym, OP);
        let doubled: Vec<_> = e.matrices.iter().map(|a| a.scale(2.0)).collect();
        let (a, b) = (q.compute(&e.matrices).unwrap(), q.compute(&doubled).unwrap());
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn c2_pair_transpose_symmetry() {
        let e = c2_counterexample();
        let q = Quantity::Ratio(Obj::SymOfSum, Obj::SumSym, NormSpec::Frobenius);
        let t: Vec<_> = e.matrices.iter().map(|a| a.transpose()).collect();
        assert!((q.compute(&e.matrices).unwrap() - q.compute(&t).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn expansive_pair_sums_to_identity() {
        let e = expansive_counterexample();
        assert_eq!(ComplexMatrix::sum(&e.matrices).unwrap(), ComplexMatrix::identity(3));
    }

    #[test]
    fn degenerate_single_matrix_families() {
        let e = lee_sharp_family(1, 4).unwrap();
        let r = Quantity::Ratio(Obj::Sum, Obj::SumAbs, OP).compute(&e.matrices).unwrap();
        assert!((r - 1.0).abs() < 1e-14);
        let e = frobenius_sharp_family(1, 3).unwrap();
        let r = Quantity::Ratio(Obj::Sum, Obj::SumAbs, NormSpec::Frobenius).compute(&e.matrices).unwrap();
        assert!((r - 1.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal_extremizer_scale_invariance_and_n2_value() {
        let a = lemma61_extremizer(4, 1.0).unwrap();
        let b = lemma61_extremizer(4, 37.5).unwrap();
        let q = Quantity::OneInfTwoRatio;
        assert!((q.compute(&a.matrices).unwrap() - q.compute(&b.matrices).unwrap()).abs() < 1e-14);
        // n = 2: eigenvalues 1 and r = √2 − 1, plain ratio (1+r)/(1+r²) = (1+√2)/2
        let x = &lemma61_extremizer(2, 1.0).unwrap().matrices[0];
        let r = SQRT_2 - 1.0;
        let plain =
            norm(x, NormSpec::Trace).unwrap() * norm(x, OP).unwrap() / norm(x, NormSpec::Frobenius).unwrap().powi(2);
        assert!((plain - (1.0 + r) / (1.0 + r * r)).abs() < 1e-14);
        assert!((plain - (1.0 + SQRT_2) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn entries_pass_every_applicable_check() {
        for e in entries("all").unwrap() {
            for id in crate::inequalities::applicable_checks(&e.matrices) {
                match check_by_id(&id, &e.matrices) {
                    Ok(r) => assert!(r.pass, "{} {id} {r:?}", e.label),
                    Err(Error::Degenerate(_)) => {}
                    Err(err) => panic!("{} {id}: {err}", e.label),
                }
            }
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        for e in entries("all").unwrap() {
            let s = serde_json::to_string(&e).unwrap();
            let back: CatalogEntry = serde_json::from_str(&s).unwrap();
            assert_eq!(back, e);
        }
    }

    #[test]
    fn unknown_example() {
        assert!(matches!(entries("nosuch"), Err(Error::Unknown { .. })));
    }
}
