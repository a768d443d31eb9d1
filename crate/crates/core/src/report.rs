//! Pass/fail bookkeeping shared by the verification suites.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One verified statement: how many instances were swept and, on failure,
/// the first counterexample rendered verbatim.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub cases: u64,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>, cases: u64) -> CheckResult {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Pass,
            witness: None,
            cases,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>, cases: u64) -> CheckResult {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Fail,
            witness: Some(witness.into()),
            cases,
        }
    }

    pub fn from_witness(
        name: impl Into<String>,
        witness: Option<String>,
        cases: u64,
    ) -> CheckResult {
        match witness {
            None => CheckResult::pass(name, cases),
            Some(w) => CheckResult::fail(name, w, cases),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

pub fn overall_status(checks: &[CheckResult]) -> CheckStatus {
    if checks.iter().all(CheckResult::passed) {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

/// A named batch of checks over one graph or one parameter set.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    pub checks: Vec<CheckResult>,
    pub status: CheckStatus,
}

impl SuiteReport {
    pub fn new(
        suite: impl Into<String>,
        graph: Option<String>,
        bound: Option<usize>,
        checks: Vec<CheckResult>,
    ) -> SuiteReport {
        let status = overall_status(&checks);
        SuiteReport {
            suite: suite.into(),
            graph,
            bound,
            checks,
            status,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn render_text(&self) -> String {
        let mut out = match (&self.graph, self.bound) {
            (Some(g), Some(b)) => format!("suite {} on {} (bound {})\n", self.suite, g, b),
            (Some(g), None) => format!("suite {} on {}\n", self.suite, g),
            _ => format!("suite {}\n", self.suite),
        };
        for c in &self.checks {
            out.push_str(&render_check(c));
        }
        out.push_str(&format!(
            "status: {}\n",
            if self.passed() { "pass" } else { "fail" }
        ));
        out
    }
}

/// Per-filter report for the topology checks.
#[derive(Debug, Clone, Serialize)]
pub struct TopologyReport {
    pub filter: String,
    pub truncation: usize,
    pub checks: Vec<CheckResult>,
    pub status: CheckStatus,
}

impl TopologyReport {
    pub fn new(filter: impl Into<String>, truncation: usize, checks: Vec<CheckResult>) -> Self {
        let status = overall_status(&checks);
        TopologyReport {
            filter: filter.into(),
            truncation,
            checks,
            status,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("filter {} (truncation {})\n", self.filter, self.truncation);
        for c in &self.checks {
            out.push_str(&render_check(c));
        }
        out.push_str(&format!(
            "status: {}\n",
            if self.passed() { "pass" } else { "fail" }
        ));
        out
    }
}

fn render_check(c: &CheckResult) -> String {
    match &c.witness {
        None => format!("  {}: pass ({} cases)\n", c.name, c.cases),
        Some(w) => format!("  {}: FAIL [{}] ({} cases)\n", c.name, w, c.cases),
    }
}
