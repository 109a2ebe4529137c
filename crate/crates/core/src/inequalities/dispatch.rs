//! Running a check by its report id on a fixed matrix tuple.

use super::*;
use crate::error::{Error, Result};
use crate::linalg::{psd_eig, ComplexMatrix};
use crate::norms::{Exponent, NormSpec};

/// Report ids of the tuple checks that take a norm mode.
const MODE_CHECKS: &[&str] = &["lee", "sum_vs_sym", "sum_vs_qsym", "bourin_lee", "qsym_lee"];
/// Report ids of the tuple checks that take a Schatten exponent.
const SCHATTEN_CHECKS: &[&str] = &["schatten_sym", "schatten_qsym", "cp_bound", "sym_endpoints", "qsym_endpoints"];
/// Single-matrix pair checks, reported as `<name>_lower` / `<name>_upper`.
const PAIR_CHECKS: &[&str] = &["equiv_sym", "equiv_qsym", "sym_vs_qsym"];

fn single(mats: &[ComplexMatrix]) -> Result<&ComplexMatrix> {
    match mats {
        [a] => Ok(a),
        _ => Err(Error::BadArgument(format!("check needs one matrix, got {}", mats.len()))),
    }
}

fn exponent_of(mode: &str) -> Result<Exponent> {
    let spec: NormSpec = mode.parse()?;
    spec.schatten_exponent().ok_or_else(|| Error::BadNormParam(format!("'{mode}' is not a Schatten norm")))
}

/// Run the check whose report id is `id` (e.g. `bourin_lee@op`,
/// `equiv_qsym_upper@tr`, `corollary_24@j=0`, `one_inf_two`) on `mats`.
pub fn check_by_id(id: &str, mats: &[ComplexMatrix]) -> Result<CheckReport> {
    let unknown = || Error::Unknown { kind: "check", name: id.to_string() };
    let (name, arg) = match id.split_once('@') {
        Some((n, a)) => (n, Some(a)),
        None => (id, None),
    };
    match (name, arg) {
        ("one_inf_two", None) => check_one_inf_two(single(mats)?),
        ("block_positivity", None) => check_block_positivity(single(mats)?),
        ("frob_c2", Some("fro")) => check_frob_c2(mats),
        ("corollary_24", Some(a)) => {
            let j = a.strip_prefix("j=").and_then(|j| j.parse().ok()).ok_or_else(unknown)?;
            check_corollary_24(mats, j)
        }
        (n, Some(mode)) if MODE_CHECKS.contains(&n) => {
            let mode: NormMode = mode.parse()?;
            match n {
                "lee" => check_lee(mats, mode),
                "sum_vs_sym" => check_sum_vs_sym(mats, mode),
                "sum_vs_qsym" => check_sum_vs_qsym(mats, mode),
                "bourin_lee" => check_bourin_lee(mats, mode),
                _ => check_qsym_lee(mats, mode),
            }
        }
        (n, Some(mode)) if SCHATTEN_CHECKS.contains(&n) => {
            let p = exponent_of(mode)?;
            match n {
                "schatten_sym" => check_schatten_sym(mats, p),
                "schatten_qsym" => check_schatten_qsym(mats, p),
                "cp_bound" => check_cp_bound(mats, p),
                "sym_endpoints" => check_sym_endpoints(mats, p),
                _ => check_qsym_endpoints(mats, p),
            }
        }
        (n, Some(mode)) => {
            let (base, upper) = match (n.strip_suffix("_lower"), n.strip_suffix("_upper")) {
                (Some(b), _) => (b, false),
                (_, Some(b)) => (b, true),
                _ => return Err(unknown()),
            };
            let mode: NormMode = mode.parse()?;
            let z = single(mats)?;
            let pair = match base {
                "equiv_sym" => check_equiv_sym(z, mode)?,
                "equiv_qsym" => check_equiv_qsym(z, mode)?,
                "sym_vs_qsym" => check_sym_vs_qsym(z, mode)?,
                _ => return Err(unknown()),
            };
            Ok(if upper { pair.1 } else { pair.0 })
        }
        _ => Err(unknown()),
    }
}

/// Every check id that applies to `mats`, over a small grid of norms.
pub fn applicable_checks(mats: &[ComplexMatrix]) -> Vec<String> {
    const MODES: [&str; 5] = ["op", "tr", "fro", "schatten:3", "uin"];
    const PS: [&str; 5] = ["schatten:1", "schatten:1.5", "schatten:2", "schatten:4", "schatten:inf"];
    let mut ids = Vec::new();
    for n in MODE_CHECKS {
        ids.extend(MODES.iter().map(|m| format!("{n}@{m}")));
    }
    for n in SCHATTEN_CHECKS {
        ids.extend(PS.iter().map(|p| format!("{n}@{p}")));
    }
    ids.push("frob_c2@fro".into());
    let dim = mats.first().map_or(0, |a| a.rows());
    ids.extend((0..).take_while(|j| 3 * j < dim).map(|j| format!("corollary_24@j={j}")));
    if let [a] = mats {
        for n in PAIR_CHECKS {
            for side in ["lower", "upper"] {
                ids.extend(MODES.iter().map(|m| format!("{n}_{side}@{m}")));
            }
        }
        ids.push("block_positivity".into());
        if a.hermitian_defect() == 0.0 && psd_eig(a).is_ok() {
            ids.push("one_inf_two".into());
        }
    }
    ids
}
