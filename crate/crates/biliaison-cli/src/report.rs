//! Machine-readable reports. The layout is documented in
//! `docs/report-schema.md`; bump [`REPORT_SCHEMA`] on any change.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const REPORT_SCHEMA: &str = "biliaison-report/1";
pub const CHAIN_SCHEMA: &str = "biliaison-chain/1";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(name: &str, normalized: &str) -> InputDigest {
        let hash = Sha256::digest(normalized.as_bytes());
        InputDigest { name: name.to_string(), sha256: hash.iter().map(|b| format!("{b:02x}")).collect() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub schema: String,
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub seed: u64,
    pub trials: usize,
    pub status: String,
    pub exit_code: i32,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// One recorded elementary biliaison.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StepRecord {
    pub surface: String,
    pub height: i32,
    pub source: Vec<String>,
    pub images: Vec<String>,
}

/// A chain written by `connect` and read back by `replay`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ChainFile {
    pub schema: String,
    pub ring: String,
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub shift: i32,
    pub steps: Vec<StepRecord>,
}
