//! Unitarily invariant norms from singular values, and Fan dominance.
//!
//! Every "for all unitarily invariant norms" statement reduces, by Fan's
//! dominance theorem, to the finitely many Ky Fan norms; [`weak_major_ratio`]
//! returns the least constant that works for all of them at once.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{svd, ComplexMatrix, RANK_TOL};

/// Above this exponent the Schatten sum is evaluated in the `σ_1`-scaled form.
pub const LARGE_P: f64 = 300.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_infinite() && p > 0.0 {
            Ok(Exponent::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(Exponent::Finite(p))
        } else {
            Err(Error::BadNormParam(format!("Schatten exponent {p} must lie in [1, ∞]")))
        }
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn recip(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// Hölder conjugate `q` with `1/p + 1/q = 1`.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(1.0) => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            t => {
                let p: f64 = t.parse().map_err(|_| Error::BadNormParam(format!("bad exponent '{s}'")))?;
                Exponent::new(p)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormSpec {
    Schatten(Exponent),
    KyFan(usize),
    Operator,
    Trace,
    Frobenius,
}

impl NormSpec {
    pub fn schatten(p: f64) -> Result<Self> {
        Ok(NormSpec::Schatten(Exponent::new(p)?))
    }

    /// The Schatten exponent this norm is an alias of, if any.
    pub fn schatten_exponent(self) -> Option<Exponent> {
        match self {
            NormSpec::Schatten(e) => Some(e),
            NormSpec::Operator => Some(Exponent::Infinity),
            NormSpec::Trace => Some(Exponent::Finite(1.0)),
            NormSpec::Frobenius => Some(Exponent::Finite(2.0)),
            NormSpec::KyFan(_) => None,
        }
    }

    pub fn validate(self) -> Result<Self> {
        match self {
            NormSpec::KyFan(0) => Err(Error::BadNormParam("Ky Fan index must be ≥ 1".into())),
            NormSpec::Schatten(Exponent::Finite(p)) => Exponent::new(p).map(|_| self),
            _ => Ok(self),
        }
    }

    pub fn eval(self, a: &ComplexMatrix) -> Result<f64> {
        norm(a, self)
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::Schatten(e) => write!(f, "schatten:{e}"),
            NormSpec::KyFan(k) => write!(f, "kyfan:{k}"),
            NormSpec::Operator => write!(f, "op"),
            NormSpec::Trace => write!(f, "tr"),
            NormSpec::Frobenius => write!(f, "fro"),
        }
    }
}

impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let spec = match t {
            "op" => NormSpec::Operator,
            "tr" => NormSpec::Trace,
            "fro" => NormSpec::Frobenius,
            _ => match t.split_once(':') {
                Some(("schatten", p)) => NormSpec::Schatten(p.parse()?),
                Some(("kyfan", k)) => NormSpec::KyFan(
                    k.trim().parse().map_err(|_| Error::BadNormParam(format!("bad Ky Fan index '{k}'")))?,
                ),
                _ => return Err(Error::BadNormParam(format!("unknown norm '{s}'"))),
            },
        };
        spec.validate()
    }
}

impl Serialize for NormSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NormSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Singular values, descending.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(svd(a)?.s)
}

pub fn schatten_from_sv(sv: &[f64], p: Exponent) -> f64 {
    let top = sv.first().copied().unwrap_or(0.0);
    match p {
        Exponent::Infinity => top,
        Exponent::Finite(p) => {
            if top == 0.0 {
                return 0.0;
            }
            let overflow_risk = p * top.ln().abs() > 600.0;
            if p > LARGE_P || overflow_risk {
                top * sv.iter().map(|s| (s / top).powf(p)).sum::<f64>().powf(1.0 / p)
            } else if p == 1.0 {
                sv.iter().sum()
            } else if p == 2.0 {
                sv.iter().map(|s| s * s).sum::<f64>().sqrt()
            } else {
                sv.iter().map(|s| s.powf(p)).sum::<f64>().powf(1.0 / p)
            }
        }
    }
}

pub fn norm_from_sv(sv: &[f64], spec: NormSpec) -> Result<f64> {
    match spec.validate()? {
        NormSpec::KyFan(k) => {
            if k > sv.len() {
                return Err(Error::BadNormParam(format!("Ky Fan index {k} exceeds {}", sv.len())));
            }
            Ok(sv[..k].iter().sum())
        }
        other => Ok(schatten_from_sv(sv, other.schatten_exponent().expect("schatten alias"))),
    }
}

pub fn norm(a: &ComplexMatrix, spec: NormSpec) -> Result<f64> {
    norm_from_sv(&singular_values(a)?, spec)
}

/// Ky Fan partial sums `Σ_{j≤k} σ_j` for `k = 1..=len`.
pub fn ky_fan_sums(sv: &[f64]) -> Vec<f64> {
    sv.iter()
        .scan(0.0, |acc, s| {
            *acc += s;
            Some(*acc)
        })
        .collect()
}

/// Least `c` with `‖A‖ ≤ c‖B‖` for every unitarily invariant norm, i.e.
/// `max_k ‖A‖_(k)/‖B‖_(k)`. Returns `+∞` when some Ky Fan norm of `B` vanishes
/// while that of `A` does not.
pub fn weak_major_ratio(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", a.shape(), b.shape())));
    }
    weak_major_ratio_sv(&singular_values(a)?, &singular_values(b)?)
}

pub fn weak_major_ratio_sv(sa: &[f64], sb: &[f64]) -> Result<f64> {
    let top = sa.first().copied().unwrap_or(0.0).max(sb.first().copied().unwrap_or(0.0));
    let tol = RANK_TOL * top;
    if top == 0.0 {
        return Err(Error::Degenerate("both matrices vanish".into()));
    }
    let clean = |s: &[f64]| s.iter().map(|&x| if x <= tol { 0.0 } else { x }).collect::<Vec<_>>();
    let ka = ky_fan_sums(&clean(sa));
    let kb = ky_fan_sums(&clean(sb));
    let mut worst: f64 = 0.0;
    for (x, y) in ka.iter().zip(&kb) {
        if *y <= tol {
            if *x > tol {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        worst = worst.max(x / y);
    }
    Ok(worst)
}

/// A matrix `X` with `‖X‖_q = 1` and `tr(A^*X) = ‖A‖_p`, built from the SVD of `A`.
pub fn dual_witness(a: &ComplexMatrix, p: Exponent) -> Result<ComplexMatrix> {
    let d = svd(a)?;
    let np = schatten_from_sv(&d.s, p);
    if np == 0.0 {
        return Err(Error::Degenerate("zero matrix has no dual witness".into()));
    }
    let weights: Vec<f64> = match p {
        Exponent::Infinity => (0..d.s.len()).map(|j| if j == 0 { 1.0 } else { 0.0 }).collect(),
        Exponent::Finite(1.0) => d.s.iter().map(|&s| if s > 0.0 { 1.0 } else { 0.0 }).collect(),
        Exponent::Finite(p) => d.s.iter().map(|&s| (s / np).powf(p - 1.0)).collect(),
    };
    let (r, c) = a.shape();
    let mut uw = ComplexMatrix::zeros(r, c);
    for (j, &w) in weights.iter().enumerate() {
        for i in 0..r {
            uw[(i, j)] = d.u[(i, j)] * w;
        }
    }
    Ok(&uw * &d.v.adjoint())
}
