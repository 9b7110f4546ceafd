//! Result cache: JSON lines keyed by (canonical spec, invariant, budget
//! class). Replayed entries have their witnesses re-verified through the
//! sequence engine; an entry whose certificate no longer verifies is
//! rejected loudly.

use std::collections::HashMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use zerosum_core::constructions::reverify_witness;
use zerosum_core::invariant::{Certificate, Invariant};
use zerosum_core::GroupTable;

use crate::report::ReportLine;

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    spec: String,
    invariant: String,
    budget_class: String,
    line: ReportLine,
}

pub struct Cache {
    path: PathBuf,
    entries: HashMap<(String, String, String), ReportLine>,
}

impl Cache {
    pub fn load(path: PathBuf) -> Self {
        let mut entries = HashMap::new();
        if let Ok(text) = std::fs::read_to_string(&path) {
            for line in text.lines() {
                if line.trim().is_empty() {
                    continue;
                }
                if let Ok(e) = serde_json::from_str::<CacheEntry>(line) {
                    entries.insert((e.spec, e.invariant, e.budget_class), e.line);
                }
            }
        }
        Cache { path, entries }
    }

    pub fn get(&self, spec: &str, invariant: &str, class: &str) -> Option<&ReportLine> {
        self.entries
            .get(&(spec.to_string(), invariant.to_string(), class.to_string()))
    }

    pub fn put(&mut self, spec: &str, invariant: &str, class: &str, line: ReportLine) {
        self.entries
            .insert((spec.into(), invariant.into(), class.into()), line);
    }

    pub fn save(&self) -> std::io::Result<()> {
        use std::io::Write;
        let mut f = std::fs::File::create(&self.path)?;
        let mut keys: Vec<_> = self.entries.keys().cloned().collect();
        keys.sort();
        for k in keys {
            let line = &self.entries[&k];
            let e = CacheEntry {
                spec: k.0.clone(),
                invariant: k.1.clone(),
                budget_class: k.2.clone(),
                line: line.clone(),
            };
            writeln!(f, "{}", serde_json::to_string(&e).expect("serializable"))?;
        }
        Ok(())
    }
}

/// Re-check a cached line's certificate against a freshly built table.
/// Returns Err with a description when the certificate fails to verify.
pub fn verify_cached_line(t: &GroupTable, invariant: Invariant, line: &ReportLine) -> Result<(), String> {
    let cert: Certificate = serde_json::from_value(line.certificate.clone())
        .map_err(|e| format!("unreadable certificate: {e}"))?;
    let witness = match &cert {
        Certificate::WitnessExhaustion { witness, .. } => Some(witness),
        Certificate::LowerBound { witness } => Some(witness),
        Certificate::Sandwich { lower, .. } => Some(lower),
        _ => None,
    };
    if let Some(w) = witness {
        match reverify_witness(t, invariant, w) {
            Ok(true) => Ok(()),
            Ok(false) => Err(format!(
                "cached witness for {} / {} failed re-verification",
                line.spec,
                invariant.name()
            )),
            Err(e) => Err(format!("witness re-verification errored: {e}")),
        }
    } else {
        Ok(())
    }
}
