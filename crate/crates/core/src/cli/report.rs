//! The structured report emitted by every command.
//!
//! ```text
//! {
//!   "schema_version": "1",
//!   "command": "eval" | "check" | "detect" | "sharpness",
//!   "spec": normalized norm spec, or "" for sharpness,
//!   "inputs": { echo of parsed arguments },
//!   "results": { "<command>": payload }
//! }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::detector::{Classification, SearchConfig};
use crate::functionals::PairReport;
use crate::norm::Vector;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: String,
    pub command: String,
    pub spec: String,
    pub inputs: Inputs,
    pub results: Results,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<SearchConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Results {
    Eval(EvalResults),
    Check(CheckResults),
    Detect(DetectResults),
    Sharpness(SharpnessResults),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalResults {
    #[serde(flatten)]
    pub pair: PairReport,
    /// True when the norm is not an inner-product norm, so a failing
    /// `dunkl_williams_2` does not affect the exit code.
    pub dunkl_williams_2_advisory: bool,
    pub all_required_hold: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResults {
    pub pairs: usize,
    /// Failure count per inequality or invariant name; every checked name is present.
    pub failures: BTreeMap<String, u64>,
    pub total_failures: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectResults {
    /// "certified" when a violation was found and re-checked,
    /// "no violation found at budget" otherwise.
    pub status: String,
    #[serde(flatten)]
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessRow {
    pub eps: f64,
    pub ratio: f64,
    pub closed_form: f64,
    pub abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessResults {
    pub rows: Vec<SharpnessRow>,
    pub tolerance: f64,
    pub all_within_tolerance: bool,
    /// Whether `1 − ratio` strictly decreases as `eps` decreases.
    pub gap_monotone: bool,
}
