//! Checkers for the norm and trace inequalities relating the three moduli.
//!
//! Every checker reduces its statement to `lhs ≤ constant · rhs` and returns a
//! [`CheckReport`]; suites in [`suites`] run the checkers on seeded random inputs.

mod checks;
mod dispatch;
pub mod suites;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{psd_function, ComplexMatrix};
use crate::norms::{norm, weak_major_ratio, NormSpec};

pub use checks::*;
pub use dispatch::{applicable_checks, check_by_id};

/// Default pass tolerance, relative to `scale = max(1, |lhs|, |rhs|)`.
pub const CHECK_TOL: f64 = 1e-9;
/// `rhs` at or below this multiple of `scale` makes the ratio undefined.
pub const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    /// `lhs / (constant · rhs)`; `None` when `rhs` is degenerate.
    pub ratio: Option<f64>,
    pub margin: f64,
    pub pass: bool,
    pub scale: f64,
    pub inputs_digest: String,
}

impl CheckReport {
    pub fn new(check_id: impl Into<String>, lhs: f64, rhs: f64, constant: f64, inputs_digest: String) -> Self {
        let scale = 1f64.max(lhs.abs()).max(rhs.abs());
        Self::with_scale(check_id, lhs, rhs, constant, scale, inputs_digest)
    }

    /// Like [`CheckReport::new`] but with an explicit tolerance scale.
    pub fn with_scale(
        check_id: impl Into<String>,
        lhs: f64,
        rhs: f64,
        constant: f64,
        scale: f64,
        inputs_digest: String,
    ) -> Self {
        let ratio =
            if rhs.abs() <= DEGENERACY_TOL * scale || constant == 0.0 { None } else { Some(lhs / (constant * rhs)) };
        let margin = constant * rhs - lhs;
        let mut r = CheckReport {
            check_id: check_id.into(),
            lhs,
            rhs,
            constant,
            ratio,
            margin,
            pass: false,
            scale,
            inputs_digest,
        };
        r.pass = r.passes(CHECK_TOL);
        r
    }

    /// `λ_min ≥ −tol · scale`, encoded as `0 ≤ 1 · λ_min`.
    pub fn positivity(check_id: impl Into<String>, min_eig: f64, scale: f64, inputs_digest: String) -> Self {
        Self::with_scale(check_id, 0.0, min_eig, 1.0, scale.max(1.0), inputs_digest)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.margin >= -tol * self.scale
    }

    /// Re-judge the verdict at a different tolerance.
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.pass = self.passes(tol);
        self
    }

    /// `lhs / rhs` without the constant.
    pub fn raw_ratio(&self) -> Option<f64> {
        self.ratio.map(|r| r * self.constant)
    }
}

/// First 16 hex digits of the SHA-256 of the shapes and entries.
pub fn digest(mats: &[&ComplexMatrix]) -> String {
    let mut h = Sha256::new();
    for m in mats {
        h.update((m.rows() as u64).to_le_bytes());
        h.update((m.cols() as u64).to_le_bytes());
        for z in m.data() {
            h.update(z.re.to_le_bytes());
            h.update(z.im.to_le_bytes());
        }
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// A single norm, or every unitarily invariant norm at once via Fan dominance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormMode {
    Single(NormSpec),
    AllUin,
}

impl NormMode {
    /// `(lhs, rhs)` for `‖L‖ ≤ c‖R‖`. In all-UIN mode `lhs` is the least
    /// constant over all unitarily invariant norms and `rhs = 1`.
    pub fn sides(self, l: &ComplexMatrix, r: &ComplexMatrix) -> Result<(f64, f64)> {
        match self {
            NormMode::Single(spec) => Ok((norm(l, spec)?, norm(r, spec)?)),
            NormMode::AllUin => Ok((weak_major_ratio(l, r)?, 1.0)),
        }
    }
}

impl From<NormSpec> for NormMode {
    fn from(s: NormSpec) -> Self {
        NormMode::Single(s)
    }
}

impl fmt::Display for NormMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormMode::Single(s) => write!(f, "{s}"),
            NormMode::AllUin => write!(f, "uin"),
        }
    }
}

impl FromStr for NormMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "uin" {
            Ok(NormMode::AllUin)
        } else {
            s.parse().map(NormMode::Single)
        }
    }
}

/// The registered scalar functions for the concave/convex subadditivity checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarFn {
    Sqrt,
    Power(f64),
    Identity,
    Shift(f64),
}

impl ScalarFn {
    pub fn eval(self, t: f64) -> f64 {
        match self {
            ScalarFn::Sqrt => t.sqrt(),
            ScalarFn::Power(q) => t.powf(q),
            ScalarFn::Identity => t,
            ScalarFn::Shift(c) => t + c,
        }
    }

    fn valid(self) -> bool {
        match self {
            ScalarFn::Power(q) => q.is_finite() && q > 0.0,
            ScalarFn::Shift(c) => c.is_finite() && c >= 0.0,
            _ => true,
        }
    }

    /// Nonnegative and concave on `[0, ∞)`.
    pub fn is_concave(self) -> bool {
        self.valid() && !matches!(self, ScalarFn::Power(q) if q > 1.0)
    }

    /// Nonnegative and convex on `[0, ∞)`.
    pub fn is_convex(self) -> bool {
        self.valid() && !matches!(self, ScalarFn::Sqrt) && !matches!(self, ScalarFn::Power(q) if q < 1.0)
    }

    pub fn apply(self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        psd_function(a, |t| self.eval(t))
    }
}

impl fmt::Display for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarFn::Sqrt => write!(f, "sqrt"),
            ScalarFn::Power(q) => write!(f, "pow:{q}"),
            ScalarFn::Identity => write!(f, "id"),
            ScalarFn::Shift(c) => write!(f, "shift:{c}"),
        }
    }
}

impl FromStr for ScalarFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadArgument(format!("unknown scalar function '{s}'"));
        let f = match s.trim() {
            "sqrt" => ScalarFn::Sqrt,
            "id" => ScalarFn::Identity,
            t => match t.split_once(':') {
                Some(("pow", q)) => ScalarFn::Power(q.parse().map_err(|_| bad())?),
                Some(("shift", c)) => ScalarFn::Shift(c.parse().map_err(|_| bad())?),
                _ => return Err(bad()),
            },
        };
        if f.valid() {
            Ok(f)
        } else {
            Err(bad())
        }
    }
}
