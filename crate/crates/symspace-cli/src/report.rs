//! Machine-readable run reports.

use serde::{Deserialize, Serialize};

/// The residual of one case, or of one named condition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResidual {
    pub case: String,
    /// `None` when the case raised an error instead of producing a residual.
    pub residual: Option<f64>,
}

/// The outcome of one suite of cases sharing a tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub tol: f64,
    pub max_residual: f64,
    pub passed: bool,
    pub residuals: Vec<CaseResidual>,
    /// Labels and messages of the failing cases.
    pub failures: Vec<String>,
    pub wall_time_s: f64,
}

impl SuiteReport {
    /// Summarizes residuals against `tol`; errored cases always fail.
    pub fn new(name: &str, tol: f64, results: Vec<(String, Result<f64, String>)>, wall_time_s: f64) -> Self {
        let mut failures = Vec::new();
        let mut max_residual = 0.0f64;
        let residuals = results
            .into_iter()
            .map(|(case, result)| match result {
                Ok(r) => {
                    // NaN residuals fail.
                    if r.is_nan() || r > tol {
                        failures.push(format!("{case}: residual {r:.3e}"));
                    }
                    max_residual = if r.is_nan() || max_residual.is_nan() { f64::NAN } else { max_residual.max(r) };
                    CaseResidual { case, residual: Some(r) }
                }
                Err(message) => {
                    failures.push(format!("{case}: {message}"));
                    max_residual = f64::INFINITY;
                    CaseResidual { case, residual: None }
                }
            })
            .collect::<Vec<_>>();
        SuiteReport {
            name: name.to_string(),
            cases: residuals.len(),
            tol,
            max_residual,
            passed: failures.is_empty(),
            residuals,
            failures,
            wall_time_s,
        }
    }
}

/// The report printed by every subcommand that evaluates residuals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub seed: Option<u64>,
    pub cases: usize,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn new(command: String, seed: Option<u64>, suites: Vec<SuiteReport>, wall_time_s: f64) -> Self {
        RunReport {
            command,
            seed,
            cases: suites.iter().map(|s| s.cases).sum(),
            passed: suites.iter().all(|s| s.passed),
            suites,
            wall_time_s,
        }
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }

    /// The same report with every wall time zeroed, for comparing runs.
    pub fn without_timing(&self) -> RunReport {
        let mut out = self.clone();
        out.wall_time_s = 0.0;
        for s in &mut out.suites {
            s.wall_time_s = 0.0;
        }
        out
    }
}
