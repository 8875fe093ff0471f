//! Verification reports: one record per check, with a status and detail.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The printed statement fails, a documented correction of it passes.
    ErratumCorrected,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::ErratumCorrected => "erratum-corrected",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// The mathematical statement this check verifies.
    pub anchor: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, id: impl Into<String>, anchor: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            anchor: anchor.into(),
            status,
            detail: detail.into(),
        });
    }

    /// Records a pass/fail check from a boolean outcome.
    pub fn check(&mut self, id: impl Into<String>, anchor: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(id, anchor, status, detail);
    }

    /// Records a check whose printed form may be wrong: passes outright when
    /// the printed form holds, is flagged when only the corrected form holds,
    /// and fails otherwise.
    pub fn check_erratum(
        &mut self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        printed_ok: bool,
        corrected_ok: bool,
        detail: impl Into<String>,
    ) {
        let status = match (printed_ok, corrected_ok) {
            (true, _) => Status::Pass,
            (false, true) => Status::ErratumCorrected,
            (false, false) => Status::Fail,
        };
        self.push(id, anchor, status, detail);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("[{}] {} :: {} :: {}\n", c.status, c.id, c.anchor, c.detail));
        }
        let fails = self.failures().count();
        let flagged = self.checks.iter().filter(|c| c.status == Status::ErratumCorrected).count();
        out.push_str(&format!(
            "{} checks, {} failed, {} erratum-corrected\n",
            self.checks.len(),
            fails,
            flagged
        ));
        out
    }
}
