//! Structured pass/fail records tying a computation to a claim tag.

use serde::{Deserialize, Serialize};

/// Outcome of a single check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    /// The claim was verified at this size.
    #[serde(rename = "PASS")]
    Pass,
    /// The claim was refuted; the record carries a concrete witness.
    #[serde(rename = "FAIL")]
    Fail,
    /// A resource cap was exhausted before a verdict.
    #[serde(rename = "BUDGET")]
    Budget,
    /// The toolkit has no complete certificate for this claim; only
    /// consistency evidence is recorded.
    #[serde(rename = "UNDETERMINED")]
    Undetermined,
}

/// How a numerical claim was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certification {
    /// Follows from an exact computation or a deterministic certificate.
    #[serde(rename = "exact")]
    Exact,
    /// Established by the two-trial random-evaluation protocol.
    #[serde(rename = "probabilistic")]
    Probabilistic,
}

/// One check record. `anchor` names the claim in the fixed registry; FAIL
/// records always carry a concrete witness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    /// Registry tag of the check.
    pub tag: String,
    /// Claim anchor the check certifies or refutes.
    pub anchor: String,
    /// Outcome.
    pub status: Status,
    /// Evidence quality.
    pub certification: Certification,
    /// Structured witness data (ranks, residuals, offending generators, ...).
    pub witness: serde_json::Value,
    /// Wall time in milliseconds.
    pub ms: u64,
}

impl CheckRecord {
    /// Builds a record with zero timing; callers stamp `ms`.
    pub fn new(tag: &str, anchor: &str, status: Status, certification: Certification) -> Self {
        CheckRecord {
            tag: tag.to_string(),
            anchor: anchor.to_string(),
            status,
            certification,
            witness: serde_json::Value::Null,
            ms: 0,
        }
    }

    /// Attaches witness data.
    pub fn with_witness(mut self, witness: serde_json::Value) -> Self {
        self.witness = witness;
        self
    }
}
