//! Machine-readable summary of one input.

use serde::{Deserialize, Serialize};

use crate::bridge::PairSummary;
use crate::diagram::{DiagramReport, HmResult};
use crate::gem::GemInvariants;
use crate::gm::ComplexityWitness;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputIdentity {
    pub name: String,
    /// `gem` or `hdg`.
    pub format: String,
    /// Hex SHA-256 of the file contents.
    pub digest: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexityReport {
    pub input: InputIdentity,
    /// Set by validation; `problems` lists what failed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valid: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub problems: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<GemInvariants>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<DiagramReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gm_value: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gm_witness: Option<ComplexityWitness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<PairSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hm_value: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hm_witness: Option<HmResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1: Option<String>,
    /// Why processing stopped, when it did.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: f64,
}

impl ComplexityReport {
    pub fn new(input: InputIdentity) -> Self {
        ComplexityReport {
            input,
            valid: None,
            problems: Vec::new(),
            invariants: None,
            diagram: None,
            gm_value: None,
            gm_witness: None,
            pairs: Vec::new(),
            hm_value: None,
            hm_witness: None,
            equal: None,
            h1: None,
            error: None,
            elapsed_ms: 0.0,
        }
    }

    /// A positive cross-check flag must agree with the two values.
    pub fn is_consistent(&self) -> bool {
        match self.equal {
            Some(true) => self.gm_value.is_some() && self.gm_value == self.hm_value,
            Some(false) => self.gm_value != self.hm_value,
            None => true,
        }
    }
}
