//! The JSON-lines report schema. Field names and order are fixed; one object
//! per line.

use serde::{Deserialize, Serialize};
use zerosum_core::constructions::{Claim, ClaimStatus};
use zerosum_core::invariant::InvariantReport;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportLine {
    pub spec: String,
    pub order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claim: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    pub certificate: serde_json::Value,
    pub method: String,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub budget_exhausted: bool,
}

pub fn status_str(s: ClaimStatus) -> &'static str {
    match s {
        ClaimStatus::Pass => "pass",
        ClaimStatus::Fail => "fail",
        ClaimStatus::Undetermined => "undetermined",
        ClaimStatus::Skipped => "skipped",
        ClaimStatus::Info => "info",
    }
}

impl ReportLine {
    pub fn from_invariant(r: &InvariantReport) -> Self {
        ReportLine {
            spec: r.spec.clone(),
            order: r.order as u64,
            invariant: Some(r.invariant.name().to_string()),
            claim: None,
            value: Some(match r.value {
                Some(v) => serde_json::json!(v),
                None => serde_json::json!("undetermined"),
            }),
            status: None,
            certificate: serde_json::to_value(&r.certificate).expect("serializable"),
            method: r.method.clone(),
            nodes: r.nodes,
            elapsed_ms: r.elapsed_ms,
            budget_exhausted: r.budget_exhausted,
        }
    }

    pub fn from_claim(spec: &str, order: u64, tag: &str, c: &Claim) -> Self {
        ReportLine {
            spec: spec.to_string(),
            order,
            invariant: None,
            claim: Some(format!("{tag}/{}", c.name)),
            value: None,
            status: Some(status_str(c.status).to_string()),
            certificate: serde_json::json!({ "detail": c.detail }),
            method: "verify".to_string(),
            nodes: 0,
            elapsed_ms: 0,
            budget_exhausted: false,
        }
    }
}

/// Print one line per report to stdout and optionally append to a file.
pub struct Emitter {
    out_file: Option<std::fs::File>,
}

impl Emitter {
    pub fn new(path: Option<&std::path::Path>) -> std::io::Result<Self> {
        let out_file = match path {
            Some(p) => Some(
                std::fs::OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(p)?,
            ),
            None => None,
        };
        Ok(Emitter { out_file })
    }

    pub fn emit(&mut self, line: &ReportLine) -> std::io::Result<()> {
        use std::io::Write;
        let json = serde_json::to_string(line).expect("serializable");
        println!("{json}");
        if let Some(f) = &mut self.out_file {
            writeln!(f, "{json}")?;
        }
        Ok(())
    }
}
