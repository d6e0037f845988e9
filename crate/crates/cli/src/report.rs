//! Verification reports with a stable layout.

use serde::Serialize;
use serde_json::Value;

/// One verified property.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// What the check is about, in words.
    pub anchor: String,
    pub points_tested: usize,
    /// `"0"` or an exact nonzero value for exact checks; a number for float checks.
    pub max_residual: Value,
    pub exact: bool,
    pub pass: bool,
}

impl Check {
    /// Exact check; `residual` is `None` when every sample vanished.
    pub fn exact(name: &str, anchor: &str, points: usize, residual: Option<String>) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            points_tested: points,
            pass: residual.is_none(),
            max_residual: Value::String(residual.unwrap_or_else(|| "0".into())),
            exact: true,
        }
    }

    /// Float check against `value ≤ tol`.
    pub fn float(name: &str, anchor: &str, points: usize, value: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            points_tested: points,
            max_residual: serde_json::Number::from_f64(value).map(Value::Number).unwrap_or(Value::String(format!("{value}"))),
            exact: false,
            pass: value.is_finite() && value <= tol,
        }
    }

    /// A check that could not run.
    pub fn error(name: &str, anchor: &str, err: impl std::fmt::Display) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            points_tested: 0,
            max_residual: Value::String(format!("error: {err}")),
            exact: true,
            pass: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, suite: &str, seed: u64, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = checks.iter().all(|c| c.pass);
        Report { command: command.into(), suite: suite.into(), seed, passed, checks }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}
