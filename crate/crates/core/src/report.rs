//! Residual checks shared by the operator-level verification suites.

use serde::Serialize;

/// One pointwise residual compared against a tolerance.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            pass: residual <= tol,
        }
    }

    /// A yes/no check; the residual is `0` on success and `1` otherwise.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Self {
            name: name.into(),
            residual: if ok { 0.0 } else { 1.0 },
            pass: ok,
        }
    }
}

/// A named batch of checks at one parameter point.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    pub q: String,
    pub s: String,
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}
