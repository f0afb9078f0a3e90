//! Pass/fail records for identity checks.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one identity check. A failing report always carries a witness:
/// the first nonzero monomial of a difference, or the first mode where two
/// sides disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub claim: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub witness: Option<String>,
    pub elapsed: Duration,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    claim: String,
    params: BTreeMap<String, String>,
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    elapsed_ms: Option<u64>,
}

impl VerificationReport {
    /// Runs `check`, which returns `Some(witness)` on failure, and times it.
    pub fn run<I, K, V>(
        claim: &str,
        params: I,
        check: impl FnOnce() -> Result<Option<String>>,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: ToString,
    {
        let params = params
            .into_iter()
            .map(|(k, v)| (k.into(), v.to_string()))
            .collect();
        let start = Instant::now();
        let witness = check()?;
        let elapsed = start.elapsed();
        let status = if witness.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        Ok(VerificationReport {
            claim: claim.to_string(),
            params,
            status,
            witness,
            elapsed,
        })
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// `{claim, params, status, witness?, elapsed_ms}`.
    pub fn to_json(&self) -> serde_json::Value {
        self.json(true)
    }

    /// The same object without `elapsed_ms`, so that repeated runs serialize
    /// identically.
    pub fn to_data_json(&self) -> serde_json::Value {
        self.json(false)
    }

    fn json(&self, timing: bool) -> serde_json::Value {
        let r = ReportJson {
            claim: self.claim.clone(),
            params: self.params.clone(),
            status: self.status,
            witness: self.witness.clone(),
            elapsed_ms: timing.then_some(self.elapsed.as_millis() as u64),
        };
        serde_json::to_value(r).expect("report serializes")
    }

    /// Inverse of [`Self::to_json`]; a missing `elapsed_ms` reads as zero.
    pub fn from_json(v: &serde_json::Value) -> serde_json::Result<Self> {
        let r: ReportJson = serde_json::from_value(v.clone())?;
        Ok(VerificationReport {
            claim: r.claim,
            params: r.params,
            status: r.status,
            witness: r.witness,
            elapsed: Duration::from_millis(r.elapsed_ms.unwrap_or(0)),
        })
    }

    /// One line: `PASS claim k=v ...` or `FAIL claim k=v ... witness: ...`.
    pub fn summary_line(&self) -> String {
        let mut s = format!(
            "{} {}",
            match self.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            },
            self.claim
        );
        for (k, v) in &self.params {
            s.push_str(&format!(" {k}={v}"));
        }
        if let Some(w) = &self.witness {
            s.push_str(&format!(" witness: {w}"));
        }
        s
    }
}
