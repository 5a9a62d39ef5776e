use lrdesk::Int;
use serde::Serialize;
use serde_json::Value;

use crate::checks;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub paper_anchor: String,
    pub status: Status,
    pub witness: Value,
}

impl Check {
    /// Panics on a name missing from the check table: every check must be explainable.
    pub fn new(name: &str, pass: bool, witness: Value) -> Check {
        let info = checks::lookup(name).unwrap_or_else(|| panic!("check {name} has no table entry"));
        Check {
            name: name.to_string(),
            paper_anchor: info.anchor.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    pub scenario: Value,
    pub checks: Vec<Check>,
    pub data: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub scenarios: usize,
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub scenarios: Vec<ScenarioReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(scenarios: Vec<ScenarioReport>) -> Report {
        let checks: usize = scenarios.iter().map(|s| s.checks.len()).sum();
        let passed = scenarios.iter().flat_map(|s| &s.checks).filter(|c| c.passed()).count();
        Report {
            tool: "lrdesk",
            version: env!("CARGO_PKG_VERSION"),
            summary: Summary { scenarios: scenarios.len(), checks, passed, failed: checks - passed },
            scenarios,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check, then a total.
    pub fn summary_lines(&self) -> String {
        let mut out = String::new();
        for sc in &self.scenarios {
            for c in &sc.checks {
                let tag = if c.passed() { "PASS" } else { "FAIL" };
                out.push_str(&format!("{tag} {}::{}\n", sc.name, c.name));
            }
        }
        out.push_str(&format!(
            "{} scenarios, {} checks, {} passed, {} failed\n",
            self.summary.scenarios, self.summary.checks, self.summary.passed, self.summary.failed
        ));
        out
    }
}

/// Integers as JSON numbers when they fit in `i64`, else as decimal strings.
pub fn int_json(x: &Int) -> Value {
    match i64::try_from(x).ok() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

pub fn ints_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}
