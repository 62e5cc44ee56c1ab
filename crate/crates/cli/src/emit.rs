//! Report assembly and emission.
//!
//! Reports serialize to a stable, versioned JSON schema. Identical config
//! and seed produce byte-identical JSON up to the timing fields, which are
//! excluded from the determinism hash.

use serde::{Deserialize, Serialize};

use detlab_core::{CheckRecord, Status};

/// FNV-1a 64-bit hash.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// A full scenario report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    /// Schema version tag.
    pub schema: String,
    /// Echo of the scenario configuration.
    pub scenario: serde_json::Value,
    /// Per-check records in execution order.
    pub checks: Vec<CheckRecord>,
    /// FNV-1a hash of the report with timings zeroed.
    pub determinism_hash: String,
}

impl Report {
    /// Assembles a report and stamps its determinism hash.
    pub fn new(schema: &str, scenario: serde_json::Value, checks: Vec<CheckRecord>) -> Self {
        let mut report = Report {
            schema: schema.to_string(),
            scenario,
            checks,
            determinism_hash: String::new(),
        };
        let mut stripped = report.clone();
        for c in stripped.checks.iter_mut() {
            c.ms = 0;
        }
        stripped.determinism_hash.clear();
        let bytes = serde_json::to_vec(&stripped).expect("serializable");
        report.determinism_hash = format!("{:016x}", fnv1a(&bytes));
        report
    }

    /// Suggested process exit code: 0 all PASS, 1 any FAIL, 3 only
    /// BUDGET/UNDETERMINED deviations.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else if self
            .checks
            .iter()
            .any(|c| matches!(c.status, Status::Budget | Status::Undetermined))
        {
            3
        } else {
            0
        }
    }
}

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// Stable JSON.
    Json,
    /// Aligned text table.
    Table,
}

#[cfg(test)]
mod tests {
    use super::*;
    use detlab_core::{Certification, CheckRecord};

    #[test]
    fn empty_report_is_valid_json() {
        let report = Report::new("detlab.report/v1", serde_json::json!({}), vec![]);
        let bytes = emit(&report, Format::Json);
        let back: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(back["checks"].as_array().unwrap().len(), 0);
        assert_eq!(back["schema"], "detlab.report/v1");
        assert!(!report.determinism_hash.is_empty());
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn table_truncates_long_witnesses() {
        let long = "x".repeat(600);
        let rec = CheckRecord::new("t", "a", Status::Pass, Certification::Exact)
            .with_witness(serde_json::json!({ "blob": long }));
        let report = Report::new("detlab.report/v1", serde_json::json!({}), vec![rec]);
        let text = String::from_utf8(emit(&report, Format::Table)).unwrap();
        let row = text.lines().nth(1).unwrap();
        assert!(row.contains("[fnv1a "));
        assert!(row.len() < 700);
    }

    #[test]
    fn exit_codes_by_status() {
        let mk = |status| {
            Report::new(
                "detlab.report/v1",
                serde_json::json!({}),
                vec![CheckRecord::new("t", "a", status, Certification::Exact)],
            )
        };
        assert_eq!(mk(Status::Pass).exit_code(), 0);
        assert_eq!(mk(Status::Fail).exit_code(), 1);
        assert_eq!(mk(Status::Budget).exit_code(), 3);
        assert_eq!(mk(Status::Undetermined).exit_code(), 3);
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Budget => "BUDGET",
        Status::Undetermined => "UNDETERMINED",
    }
}

/// Serializes a report. Table rows truncate witnesses over 500 characters,
/// replacing the tail with their hash.
pub fn emit(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("serializable");
            out.push(b'\n');
            out
        }
        Format::Table => {
            let mut out = String::new();
            out.push_str(&format!(
                "{:<22} {:<34} {:<12} {:<14} {:>8}  WITNESS\n",
                "TAG", "ANCHOR", "STATUS", "CERTIFICATION", "MS"
            ));
            for c in &report.checks {
                let mut witness = c.witness.to_string();
                if witness.len() > 500 {
                    let h = fnv1a(witness.as_bytes());
                    witness.truncate(500);
                    witness.push_str(&format!("... [fnv1a {h:016x}]"));
                }
                let cert = match c.certification {
                    detlab_core::Certification::Exact => "exact",
                    detlab_core::Certification::Probabilistic => "probabilistic",
                };
                out.push_str(&format!(
                    "{:<22} {:<34} {:<12} {:<14} {:>8}  {}\n",
                    c.tag,
                    c.anchor,
                    status_str(c.status),
                    cert,
                    c.ms,
                    witness
                ));
            }
            out.push_str(&format!("determinism_hash: {}\n", report.determinism_hash));
            out.into_bytes()
        }
    }
}
