//! Verification reports: the serialized record of every check a suite ran.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::engine::{Comparison, EntryWitness};
use crate::grid::format_complex;

pub const SCHEMA_VERSION: &str = "qdc-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    Exact,
    Float,
    Randomized,
}

impl CheckMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckMode::Exact => "exact",
            CheckMode::Float => "float",
            CheckMode::Randomized => "randomized",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Witness {
    /// Basis tuple(s) or element indices at which the check failed.
    pub tuple: Vec<usize>,
    /// The two disagreeing values, formatted as complex numbers.
    pub values: Vec<String>,
    pub description: String,
}

impl Witness {
    pub fn from_entry(w: &EntryWitness) -> Self {
        Self {
            tuple: w.row.iter().chain(&w.col).copied().collect(),
            values: vec![format_complex(&w.left), format_complex(&w.right)],
            description: format!("entry row {:?} col {:?}", w.row, w.col),
        }
    }

    pub fn message(description: impl Into<String>) -> Self {
        Self {
            tuple: Vec::new(),
            values: Vec::new(),
            description: description.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Check {
    pub identity_name: String,
    pub paper_anchor: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub elapsed_ms: u64,
    pub tolerance: f64,
    pub check_mode: CheckMode,
    pub max_error: f64,
    pub note: Option<String>,
}

impl Check {
    pub fn from_comparison(
        name: &str,
        anchor: &str,
        c: &Comparison,
        mode: CheckMode,
        tolerance: f64,
    ) -> Self {
        Self {
            identity_name: name.into(),
            paper_anchor: anchor.into(),
            status: Status::from_bool(c.equal()),
            witness: c.witness.as_ref().map(Witness::from_entry),
            elapsed_ms: 0,
            tolerance,
            check_mode: mode,
            max_error: c.max_error,
            note: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct SuiteReport {
    pub name: String,
    pub status: Status,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(name: &str, checks: Vec<Check>) -> Self {
        let status = Status::from_bool(checks.iter().all(|c| c.status == Status::Pass));
        Self {
            name: name.into(),
            status,
            checks,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct GroupInfo {
    pub label: String,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Report {
    pub schema_version: String,
    pub group: GroupInfo,
    pub seed: u64,
    pub tolerance: f64,
    pub suites: Vec<SuiteReport>,
    pub status: Status,
}

impl Report {
    pub fn new(group: GroupInfo, seed: u64, tolerance: f64, suites: Vec<SuiteReport>) -> Self {
        let status = Status::from_bool(suites.iter().all(|s| s.status == Status::Pass));
        Self {
            schema_version: SCHEMA_VERSION.into(),
            group,
            seed,
            tolerance,
            suites,
            status,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn check(&self, suite: &str, identity: &str) -> Option<&Check> {
        self.suite(suite)?
            .checks
            .iter()
            .find(|c| c.identity_name == identity)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "group {} (order {})  seed {}  tol {:e}  status {}",
            self.group.label,
            self.group.order,
            self.seed,
            self.tolerance,
            self.status.as_str()
        );
        for s in &self.suites {
            let _ = writeln!(out, "\n[{}] {}", s.name, s.status.as_str());
            for c in &s.checks {
                let _ = writeln!(
                    out,
                    "  {:<4} {:<44} {:<10} err {:<9.2e} {:>6} ms",
                    c.status.as_str(),
                    c.identity_name,
                    c.check_mode.as_str(),
                    c.max_error,
                    c.elapsed_ms
                );
                if let Some(w) = &c.witness {
                    let _ = writeln!(
                        out,
                        "       witness: {} {:?} {:?}",
                        w.description, w.tuple, w.values
                    );
                }
                if let Some(n) = &c.note {
                    let _ = writeln!(out, "       note: {n}");
                }
            }
        }
        out
    }
}

/// Field list of the report format, one per line.
pub fn schema_text() -> String {
    format!(
        "schema-version: {SCHEMA_VERSION}
report:
  schema-version: string
  group: {{ label: string, order: integer }}
  seed: integer
  tolerance: number
  suites: [suite]
  status: pass | fail
suite:
  name: string
  status: pass | fail
  checks: [check]
check:
  identity-name: string
  paper-anchor: string (the identity as a formula)
  status: pass | fail
  witness: null | {{ tuple: [integer], values: [string], description: string }}
  elapsed-ms: integer
  tolerance: number
  check-mode: exact | float | randomized
  max-error: number
  note: null | string
"
    )
}
