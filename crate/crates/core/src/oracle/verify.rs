use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{sample_points, series_kernel, transported_kernel, DomainSpec, Point};
use crate::error::{Error, Result};
use crate::kernel::{eval_kernel, general_kernel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    Series,
    Bell,
}

impl OracleKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            OracleKind::Series => "series",
            OracleKind::Bell => "bell",
        }
    }

    pub fn default_tol(&self) -> f64 {
        match self {
            OracleKind::Series => 1e-6,
            OracleKind::Bell => 1e-9,
        }
    }
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OracleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "series" => Ok(OracleKind::Series),
            "bell" => Ok(OracleKind::Bell),
            other => Err(Error::Parse(format!("unknown oracle '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportEntry {
    pub z: Point,
    pub w: Point,
    pub closed_form: Option<Complex64>,
    pub oracle: Option<Complex64>,
    /// `+inf` when either side failed to evaluate.
    pub rel_err: f64,
    pub truncation: Option<u32>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub domain: DomainSpec,
    pub oracle_kind: OracleKind,
    pub tol: f64,
    pub seed: u64,
    /// In sample order.
    pub entries: Vec<ReportEntry>,
    pub max_rel_err: f64,
    /// Largest series truncation used (series oracle only).
    pub truncation_used: Option<u32>,
    pub passed: bool,
}

fn check_point(
    spec: &DomainSpec,
    kind: OracleKind,
    closed: &crate::kernel::KernelFormula,
    z: Point,
    w: Point,
    tol: f64,
    cap: u32,
) -> ReportEntry {
    let closed_form = eval_kernel(closed, z, w);
    let oracle = match kind {
        OracleKind::Series => series_kernel(spec, z, w, tol, cap).map(|(v, m)| (v, Some(m))),
        OracleKind::Bell => transported_kernel(spec, z, w).map(|v| (v, None)),
    };
    match (closed_form, oracle) {
        (Ok(c), Ok((o, truncation))) => ReportEntry {
            z,
            w,
            closed_form: Some(c),
            oracle: Some(o),
            rel_err: (c - o).norm() / o.norm(),
            truncation,
            error: None,
        },
        (c, o) => {
            let error = [c.as_ref().err().cloned(), o.as_ref().err().cloned()]
                .into_iter()
                .flatten()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("; ");
            ReportEntry {
                z,
                w,
                closed_form: c.ok(),
                oracle: o.ok().map(|(v, _)| v),
                rel_err: f64::INFINITY,
                truncation: None,
                error: Some(error),
            }
        }
    }
}

/// Compare the closed form against `kind` at `n_points` seeded sample pairs.
///
/// Per-point failures (e.g. a series that does not stabilize) are recorded in
/// the entry and fail the report rather than aborting it.
pub fn verify(
    spec: &DomainSpec,
    kind: OracleKind,
    n_points: usize,
    tol: f64,
    seed: u64,
    trunc_cap: u32,
) -> Result<VerificationReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::PreconditionViolated(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let closed = general_kernel(spec.matrix())?;
    let points = sample_points(spec, n_points, seed)?;
    let entries: Vec<ReportEntry> = points
        .par_iter()
        .map(|&(z, w)| check_point(spec, kind, &closed, z, w, tol, trunc_cap))
        .collect();
    let max_rel_err = entries.iter().map(|e| e.rel_err).fold(0.0, f64::max);
    let truncation_used = entries.iter().filter_map(|e| e.truncation).max();
    Ok(VerificationReport {
        domain: spec.clone(),
        oracle_kind: kind,
        tol,
        seed,
        passed: entries.iter().all(|e| e.rel_err <= tol),
        entries,
        max_rel_err,
        truncation_used,
    })
}

fn complex_json(c: Complex64) -> Value {
    json!([finite_or_null(c.re), finite_or_null(c.im)])
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

impl VerificationReport {
    pub fn to_json(&self) -> Value {
        let m = self
            .domain
            .matrix()
            .to_i64()
            .expect("spec entries fit in i64");
        let points: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                let mut v = json!({
                    "z": [complex_json(e.z[0]), complex_json(e.z[1])],
                    "w": [complex_json(e.w[0]), complex_json(e.w[1])],
                    "closed": e.closed_form.map(complex_json),
                    "oracle": e.oracle.map(complex_json),
                    "rel_err": finite_or_null(e.rel_err),
                });
                if let Some(t) = e.truncation {
                    v["truncation"] = json!(t);
                }
                if let Some(err) = &e.error {
                    v["error"] = json!(err);
                }
                v
            })
            .collect();
        let mut out = json!({
            "matrix": m,
            "oracle": self.oracle_kind.as_str(),
            "tol": self.tol,
            "seed": self.seed,
            "points": points,
            "max_rel_err": finite_or_null(self.max_rel_err),
            "passed": self.passed,
        });
        if let Some(t) = self.truncation_used {
            out["truncation_used"] = json!(t);
        }
        out
    }

    pub fn summary(&self) -> String {
        format!(
            "{} oracle on B = {}: {} points, max relative error {:.3e} (tol {:.1e}) => {}",
            self.oracle_kind,
            self.domain.matrix(),
            self.entries.len(),
            self.max_rel_err,
            self.tol,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat::IntMatrix2;
    use crate::oracle::DEFAULT_TRUNC_CAP;

    #[test]
    fn bidisc_both_oracles() {
        let spec = DomainSpec::new(&IntMatrix2::identity()).unwrap();
        for kind in [OracleKind::Series, OracleKind::Bell] {
            let r = verify(&spec, kind, 5, kind.default_tol(), 3, DEFAULT_TRUNC_CAP).unwrap();
            assert!(r.passed, "{}", r.summary());
            assert!(r.max_rel_err <= 1e-12, "{}", r.summary());
        }
    }

    #[test]
    fn failure_is_recorded() {
        let spec = DomainSpec::new(&IntMatrix2::new(4, -1, -1, 3)).unwrap();
        // a cap below the first doubling cannot converge
        let r = verify(&spec, OracleKind::Series, 2, 1e-6, 1, 40).unwrap();
        assert!(!r.passed);
        assert!(r.entries.iter().all(|e| e.error.is_some()));
        let v = r.to_json();
        assert_eq!(v["passed"], false);
        assert!(v["max_rel_err"].is_null());
    }

    #[test]
    fn json_layout() {
        let spec = DomainSpec::new(&IntMatrix2::new(1, -1, 0, 1)).unwrap();
        let r = verify(&spec, OracleKind::Bell, 2, 1e-9, 5, DEFAULT_TRUNC_CAP).unwrap();
        let v = r.to_json();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(
            keys,
            [
                "matrix",
                "oracle",
                "tol",
                "seed",
                "points",
                "max_rel_err",
                "passed"
            ]
        );
        assert_eq!(v["points"].as_array().unwrap().len(), 2);
        assert_eq!(v["matrix"].to_string(), "[[1,-1],[0,1]]");
    }

    #[test]
    fn oracle_names() {
        assert_eq!("series".parse::<OracleKind>().unwrap(), OracleKind::Series);
        assert_eq!("bell".parse::<OracleKind>().unwrap(), OracleKind::Bell);
        assert!("both".parse::<OracleKind>().is_err());
    }
}
