//! JSON and CSV renderings of experiment results.
//!
//! Reports carry no timestamps or timings, so identical inputs give
//! byte-identical files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::equidist::SignDensityReport;
use crate::error::Result;

pub const VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// One pass/fail test of a measured value against a bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub passed: bool,
}

impl Check {
    pub fn within(name: impl Into<String>, value: f64, lower: f64, upper: f64) -> Self {
        let passed = lower <= value && value <= upper;
        Self { name: name.into(), value, lower: Some(lower), upper: Some(upper), passed }
    }

    pub fn at_most(name: impl Into<String>, value: f64, upper: f64) -> Self {
        Self { name: name.into(), value, lower: None, upper: Some(upper), passed: value <= upper }
    }

    pub fn at_least(name: impl Into<String>, value: f64, lower: f64) -> Self {
        Self { name: name.into(), value, lower: Some(lower), upper: None, passed: value >= lower }
    }

    /// `|value − target| ≤ tol`.
    pub fn near(name: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        let passed = (value - target).abs() <= tol;
        Self { name: name.into(), value, lower: Some(target - tol), upper: Some(target + tol), passed }
    }

    /// A count that must be zero.
    pub fn zero(name: impl Into<String>, count: u64) -> Self {
        Self::at_most(name, count as f64, 0.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub experiment: String,
    pub version: String,
    /// The resolved run configuration, as given by the caller.
    pub config: Value,
    pub params: Value,
    pub results: Value,
    pub tolerances: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    pub fn new(experiment: impl Into<String>, params: impl Serialize, results: impl Serialize) -> Result<Self> {
        Ok(Self {
            experiment: experiment.into(),
            version: VERSION.to_string(),
            config: Value::Null,
            params: serde_json::to_value(params)?,
            results: serde_json::to_value(results)?,
            tolerances: BTreeMap::new(),
            checks: Vec::new(),
            passed: true,
        })
    }

    pub fn with_config(mut self, config: impl Serialize) -> Result<Self> {
        self.config = serde_json::to_value(config)?;
        Ok(self)
    }

    pub fn tolerance(&mut self, name: &str, value: f64) -> &mut Self {
        self.tolerances.insert(name.to_string(), value);
        self
    }

    pub fn check(&mut self, check: Check) -> &mut Self {
        self.passed &= check.passed;
        self.checks.push(check);
        self
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        write_file(path, &self.to_json()?)
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, contents)?;
    Ok(())
}

/// `class,count,density,nonzero_density` for the five sign classes.
pub fn sign_density_csv(report: &SignDensityReport) -> String {
    let c = &report.counts;
    let d = &report.densities;
    let nz = report.nonzero_densities.as_ref();
    let rows = [
        ("positive", c.positive, d.positive, nz.map(|n| n.positive)),
        ("negative", c.negative, d.negative, nz.map(|n| n.negative)),
        ("zero", c.zero, d.zero, nz.map(|n| n.zero)),
        ("nonnegative", c.positive + c.zero, d.nonnegative, nz.map(|n| n.nonnegative)),
        ("nonpositive", c.negative + c.zero, d.nonpositive, nz.map(|n| n.nonpositive)),
    ];
    let mut out = String::from("class,count,density,nonzero_density\n");
    for (name, count, density, nonzero) in rows {
        let nonzero = nonzero.map(|v| v.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{name},{count},{density},{nonzero}");
    }
    out
}

/// Fixed-width table of `(name, passed, detail)` rows.
pub fn summary_table(rows: &[(String, bool, String)]) -> String {
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (name, passed, detail) in rows {
        let _ = writeln!(out, "{name:<width$}  {}  {detail}", if *passed { "PASS" } else { "FAIL" });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equidist::SignCounts;

    #[test]
    fn checks_and_pass_flag() {
        let mut r = Report::new("x", serde_json::json!({"a": 1}), serde_json::json!({})).unwrap();
        r.check(Check::within("in", 0.5, 0.4, 0.6));
        assert!(r.passed);
        r.check(Check::zero("none", 1));
        assert!(!r.passed);
        assert_eq!(r.failed_checks().count(), 1);
        assert!(Check::near("n", 1.0 + 1e-13, 1.0, 1e-12).passed);
        assert!(!Check::at_least("l", 0.0, 1.0).passed);
    }

    #[test]
    fn json_is_stable() {
        let mut r = Report::new("x", [1, 2], "ok").unwrap().with_config(serde_json::json!({"b": 2, "a": 1})).unwrap();
        r.tolerance("t", 0.01);
        let a = r.to_json().unwrap();
        assert_eq!(a, r.clone().to_json().unwrap());
        assert!(a.contains("\"version\""));
        assert!(a.ends_with("}\n"));
    }

    #[test]
    fn density_csv() {
        let r = SignDensityReport::new(4, SignCounts { positive: 2, negative: 1, zero: 1 });
        let csv = sign_density_csv(&r);
        assert_eq!(csv.lines().nth(1), Some("positive,2,0.5,0.6666666666666666"));
        assert_eq!(csv.lines().count(), 6);
    }
}
