//! Per-claim verification results.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::sampling::Region;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
}

impl Tally {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Indeterminate => self.indeterminate += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.indeterminate
    }

    /// Any failure fails; otherwise one pass suffices.
    pub fn status(&self) -> Status {
        if self.fail > 0 {
            Status::Fail
        } else if self.pass > 0 {
            Status::Pass
        } else {
            Status::Indeterminate
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub status: Status,
    pub samples: usize,
    pub seed: u64,
    pub counterexample: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    pub tally: Tally,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub regions: BTreeMap<String, Tally>,
}

impl Claim {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Accumulates trial outcomes for one claim, keeping the first failure.
#[derive(Debug, Clone)]
pub struct ClaimBuilder {
    id: String,
    seed: u64,
    tally: Tally,
    regions: BTreeMap<String, Tally>,
    counterexample: Option<serde_json::Value>,
    detail: Option<String>,
}

impl ClaimBuilder {
    pub fn new(id: impl Into<String>, seed: u64) -> Self {
        ClaimBuilder {
            id: id.into(),
            seed,
            tally: Tally::default(),
            regions: BTreeMap::new(),
            counterexample: None,
            detail: None,
        }
    }

    pub fn record(&mut self, status: Status, counterexample: impl FnOnce() -> serde_json::Value) {
        self.tally.add(status);
        if status == Status::Fail && self.counterexample.is_none() {
            self.counterexample = Some(counterexample());
        }
    }

    pub fn record_in(&mut self, region: Region, status: Status, counterexample: impl FnOnce() -> serde_json::Value) {
        self.regions.entry(region.as_str().to_string()).or_default().add(status);
        self.record(status, counterexample);
    }

    pub fn check(&mut self, ok: bool, counterexample: impl FnOnce() -> serde_json::Value) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.record(status, counterexample);
    }

    pub fn detail(&mut self, text: impl Into<String>) {
        self.detail = Some(text.into());
    }

    pub fn tally(&self) -> Tally {
        self.tally
    }

    pub fn finish(self) -> Claim {
        Claim {
            status: self.tally.status(),
            samples: self.tally.total(),
            id: self.id,
            seed: self.seed,
            counterexample: self.counterexample,
            detail: self.detail,
            tally: self.tally,
            regions: self.regions,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub p: usize,
    pub q: usize,
    pub seed: u64,
    pub samples: usize,
    pub claims: Vec<Claim>,
}

impl VerificationReport {
    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// 0 when every claim passes, 1 when any fails, 2 when nothing fails but
    /// some claim is indeterminate.
    pub fn exit_code(&self) -> i32 {
        if self.claims.iter().any(|c| c.status == Status::Fail) {
            1
        } else if self.claims.iter().any(|c| c.status == Status::Indeterminate) {
            2
        } else {
            0
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per claim: `<status> <id> (<pass>/<total>)`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            out.push_str(&format!("{:<13} {} ({}/{})", c.status.as_str(), c.id, c.tally.pass, c.samples));
            if let Some(d) = &c.detail {
                out.push_str(" - ");
                out.push_str(d);
            }
            out.push('\n');
        }
        out
    }
}
