//! Zero-sum invariants d(G), D_o(G), E(G) by certified exhaustive search,
//! closed forms for abelian p-groups, and the named bound checks.

mod bounds;
mod closed;
mod search;

pub use bounds::{bound_check, CheckOutcome, CheckStatus, DeterminedValues};
pub use closed::{abelian_closed_forms, ClosedForms};
pub use search::{gao_constant, ordered_davenport, small_davenport, SearchArgs};

use serde::{Deserialize, Serialize};

use crate::group::GroupTable;
use crate::seq::{SeqMulti, SeqOrdered};

/// Which invariant a report is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Invariant {
    D,
    Do,
    E,
    LoewyJennings,
    LoewyDirect,
}

impl Invariant {
    pub fn name(&self) -> &'static str {
        match self {
            Invariant::D => "d",
            Invariant::Do => "do",
            Invariant::E => "e",
            Invariant::LoewyJennings => "loewy-jennings",
            Invariant::LoewyDirect => "loewy-direct",
        }
    }

    pub fn parse(s: &str) -> Option<Invariant> {
        match s.to_ascii_lowercase().as_str() {
            "d" => Some(Invariant::D),
            "do" | "d_o" => Some(Invariant::Do),
            "e" => Some(Invariant::E),
            "loewy-jennings" | "lj" => Some(Invariant::LoewyJennings),
            "loewy-direct" | "ld" => Some(Invariant::LoewyDirect),
            _ => None,
        }
    }
}

/// Search limits. The node budget is divided evenly over the root subtrees so
/// that results do not depend on the worker count; the wall clock is a last
/// resort and is checked per subtree.
#[derive(Clone, Debug)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_wall_ms: Option<u64>,
    pub workers: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 50_000_000,
            max_wall_ms: None,
            workers: 1,
        }
    }
}

impl Budget {
    pub fn with_nodes(nodes: u64) -> Self {
        Budget {
            max_nodes: nodes,
            ..Budget::default()
        }
    }
}

/// A witness sequence, serialized with both indices and labels so it can be
/// re-verified after a reload.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSeq {
    pub ordered: bool,
    pub len: usize,
    /// (element index, label, multiplicity); ordered witnesses list terms in
    /// sequence order with multiplicity 1.
    pub elems: Vec<(usize, String, u32)>,
}

impl WitnessSeq {
    pub fn from_multiset(t: &GroupTable, s: &SeqMulti) -> Self {
        WitnessSeq {
            ordered: false,
            len: s.len(),
            elems: s
                .pairs()
                .map(|(e, m)| (e, t.label(e).to_string(), m))
                .collect(),
        }
    }

    pub fn from_ordered(t: &GroupTable, s: &SeqOrdered) -> Self {
        WitnessSeq {
            ordered: true,
            len: s.len(),
            elems: s
                .elems()
                .iter()
                .map(|&e| (e, t.label(e).to_string(), 1))
                .collect(),
        }
    }

    pub fn to_multiset(&self, n: usize) -> SeqMulti {
        let pairs: Vec<(usize, u32)> = self.elems.iter().map(|&(e, _, m)| (e, m)).collect();
        SeqMulti::from_pairs(n, &pairs)
    }

    pub fn to_ordered(&self) -> SeqOrdered {
        let mut elems = Vec::with_capacity(self.len);
        for &(e, _, m) in &self.elems {
            for _ in 0..m {
                elems.push(e);
            }
        }
        SeqOrdered::new(elems)
    }
}

/// How a reported value is certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// Extremal witness plus exhaustion of all longer candidates up to the
    /// stated depth cap.
    WitnessExhaustion {
        witness: WitnessSeq,
        exhausted_len: u64,
        depth_cap: u64,
        cap_reason: String,
    },
    /// Budget ran out: only a lower-bound witness is known.
    LowerBound { witness: WitnessSeq },
    /// Lower-bound witness plus an independent upper bound that meet.
    Sandwich {
        lower: WitnessSeq,
        upper_method: String,
        upper_value: u64,
    },
    /// Value given by a closed-form formula.
    ClosedForm { formula: String },
    /// Value computed by a non-search derivation (e.g. linear algebra).
    Derived { detail: String },
}

/// A computed invariant with its certificate and method metadata.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub spec: String,
    pub order: usize,
    pub invariant: Invariant,
    /// None means "undetermined" (budget exhausted before certification).
    pub value: Option<u64>,
    pub certificate: Certificate,
    pub method: String,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub budget_exhausted: bool,
}

impl InvariantReport {
    pub fn witness(&self) -> Option<&WitnessSeq> {
        match &self.certificate {
            Certificate::WitnessExhaustion { witness, .. } => Some(witness),
            Certificate::LowerBound { witness } => Some(witness),
            Certificate::Sandwich { lower, .. } => Some(lower),
            _ => None,
        }
    }
}
