//! Serializable reports of harness runs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::quadrature::QuadratureRule;
use super::variation::{ActionEvaluation, Variation};
use crate::lagrangian::LagrangianKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintEntry {
    pub name: String,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMeta {
    pub seed: Option<u64>,
    pub resolution: usize,
    pub quadrature: QuadratureRule,
    pub tolerances: BTreeMap<String, f64>,
}

/// {problem, action, variations, constraints, meta}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionReport {
    pub problem: String,
    pub action: f64,
    pub variations: Vec<Variation>,
    pub constraints: Vec<ConstraintEntry>,
    pub meta: ReportMeta,
}

impl ActionReport {
    pub fn new(kind: LagrangianKind, eval: &ActionEvaluation, variations: Vec<Variation>, meta: ReportMeta) -> Self {
        let constraints = eval
            .constraints
            .iter()
            .map(|(l, v)| ConstraintEntry {
                name: serde_json::to_value(l).ok().and_then(|j| j.as_str().map(String::from)).unwrap_or_default(),
                max_residual: *v,
            })
            .collect();
        ActionReport { problem: kind.name().to_string(), action: eval.value, variations, constraints, meta }
    }
}
