//! Scenario reports: an ordered list of named checks with expected/actual
//! values, phase timings, and free-form notes (retry logs, mode flags).

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub prime: u64,
    pub seed: u64,
    pub mode: String,
    pub checks: Vec<Check>,
    pub timings_ms: BTreeMap<String, f64>,
    pub notes: Vec<String>,
    /// named ideal files (constructed systems and images) for --ideals-dir
    #[serde(skip)]
    pub artifacts: Vec<(String, String)>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.status == CheckStatus::Pass || c.status == CheckStatus::Skipped)
    }

    pub fn counts(&self) -> (usize, usize, usize, usize) {
        let mut pass = 0;
        let mut fail = 0;
        let mut skipped = 0;
        let mut error = 0;
        for c in &self.checks {
            match c.status {
                CheckStatus::Pass => pass += 1,
                CheckStatus::Fail => fail += 1,
                CheckStatus::Skipped => skipped += 1,
                CheckStatus::Error => error += 1,
            }
        }
        (pass, fail, skipped, error)
    }

    pub fn any_engine_error(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Error)
    }
}

/// Collects checks and timings while a scenario runs.
pub struct Runner {
    scenario: String,
    filter: Option<String>,
    report: ScenarioReport,
}

impl Runner {
    pub fn new(scenario: &str, prime: u64, seed: u64, mode: String, filter: Option<String>) -> Runner {
        Runner {
            scenario: scenario.to_string(),
            filter,
            report: ScenarioReport {
                scenario: scenario.to_string(),
                prime,
                seed,
                mode,
                checks: Vec::new(),
                timings_ms: BTreeMap::new(),
                notes: Vec::new(),
                artifacts: Vec::new(),
            },
        }
    }

    pub fn scenario(&self) -> &str {
        &self.scenario
    }

    fn selected(&self, id: &str) -> bool {
        match &self.filter {
            None => true,
            Some(f) => id.contains(f.as_str()),
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.report.notes.push(text.into());
    }

    /// Attach a named ideal artifact in the ideal-file format.
    pub fn artifact(&mut self, name: &str, ideal: &crate::Ideal) {
        if let Ok(text) = crate::parse::write_ideal(ideal) {
            self.report.artifacts.push((name.to_string(), text));
        }
    }

    /// Time a named phase.
    pub fn phase<T>(&mut self, name: &str, f: impl FnOnce(&mut Runner) -> T) -> T {
        let t0 = Instant::now();
        let out = f(self);
        let ms = t0.elapsed().as_secs_f64() * 1e3;
        *self.report.timings_ms.entry(name.to_string()).or_insert(0.0) += ms;
        out
    }

    /// Record an equality check; the closure runs only when the id passes the
    /// filter.
    pub fn check_eq<T: PartialEq + Display>(
        &mut self,
        id: &str,
        description: &str,
        expected: T,
        actual: impl FnOnce() -> crate::Result<T>,
    ) {
        if !self.selected(id) {
            self.push(id, description, expected.to_string(), "-".into(), CheckStatus::Skipped);
            return;
        }
        match actual() {
            Ok(a) => {
                let status = if a == expected {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                };
                self.push(id, description, expected.to_string(), a.to_string(), status);
            }
            Err(e) => self.push(
                id,
                description,
                expected.to_string(),
                format!("error: {e}"),
                CheckStatus::Error,
            ),
        }
    }

    pub fn check_true(
        &mut self,
        id: &str,
        description: &str,
        actual: impl FnOnce() -> crate::Result<bool>,
    ) {
        self.check_eq(id, description, true, actual)
    }

    fn push(
        &mut self,
        id: &str,
        description: &str,
        expected: String,
        actual: String,
        status: CheckStatus,
    ) {
        self.report.checks.push(Check {
            id: id.to_string(),
            description: description.to_string(),
            expected,
            actual,
            status,
        });
    }

    /// Record an unconditional error entry (construction failures).
    pub fn error(&mut self, id: &str, description: &str, message: String) {
        self.push(id, description, "ok".into(), message, CheckStatus::Error);
    }

    pub fn finish(self) -> ScenarioReport {
        self.report
    }
}
