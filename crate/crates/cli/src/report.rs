//! Machine-readable run reports: one check per verified statement, stable
//! ordering, and an exit status derived from the worst check.

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub label: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Report of one command run. Serialization is deterministic for identical
/// inputs: field order is fixed and timing is omitted unless requested.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<Table>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.into(),
            checks: Vec::new(),
            tables: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.checks.push(Check {
            name: name.into(),
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            witness: None,
        });
    }

    pub fn check_with_witness(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        self.checks.push(Check {
            name: name.into(),
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            witness: if ok { None } else { Some(witness()) },
        });
    }

    /// A check that does not apply to this input: recorded, never failing.
    pub fn check_skipped(&mut self, name: &str, reason: &str) {
        self.checks.push(Check {
            name: name.into(),
            status: CheckStatus::Skipped,
            witness: Some(reason.into()),
        });
    }

    pub fn table(&mut self, label: &str, columns: &[&str], rows: Vec<Vec<String>>) {
        self.tables.push(Table {
            label: label.into(),
            columns: columns.iter().map(|c| (*c).into()).collect(),
            rows,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }
}
