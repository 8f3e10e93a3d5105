//! Scenario files: JSON descriptions of a suite run, validated against each
//! suite's parameter schema.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("schema violation: {0}")]
    SchemaViolation(String),
    #[error("cannot read scenario: {0}")]
    Io(#[from] std::io::Error),
    #[error("scenario is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scenario {
    pub suite: String,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub output: Option<String>,
}

fn default_seed() -> u64 {
    42
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    Number,
    Integer,
    NumberList,
    /// A list of equal-length numeric rows.
    Table,
    Matrices,
}

impl fmt::Display for ParamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParamKind::Number => "number",
            ParamKind::Integer => "integer",
            ParamKind::NumberList => "number list",
            ParamKind::Table => "list of number rows",
            ParamKind::Matrices => "list of matrices",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    pub required: bool,
    pub default: &'static str,
    pub description: &'static str,
}

impl Scenario {
    pub fn parse_json(text: &str) -> Result<Self, ScenarioError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self, ScenarioError> {
        Self::parse_json(&std::fs::read_to_string(path)?)
    }

    pub fn echo(&self) -> Value {
        serde_json::to_value(self).expect("scenario serializes")
    }

    pub fn validate(&self, schema: &[ParamSpec]) -> Result<(), ScenarioError> {
        for spec in schema {
            match self.params.get(spec.name) {
                None if spec.required => {
                    return Err(ScenarioError::SchemaViolation(format!(
                        "missing required parameter `{}` ({})",
                        spec.name, spec.kind
                    )));
                }
                None => {}
                Some(v) => check_kind(spec, v)?,
            }
        }
        for key in self.params.keys() {
            if !schema.iter().any(|s| s.name == key) {
                return Err(ScenarioError::SchemaViolation(format!(
                    "unknown parameter `{key}` for suite `{}`",
                    self.suite
                )));
            }
        }
        Ok(())
    }

    pub fn number(&self, name: &str, default: f64) -> f64 {
        self.params
            .get(name)
            .and_then(Value::as_f64)
            .unwrap_or(default)
    }

    pub fn integer(&self, name: &str, default: usize) -> usize {
        self.params
            .get(name)
            .and_then(Value::as_u64)
            .map(|v| v as usize)
            .unwrap_or(default)
    }

    pub fn number_list(&self, name: &str, default: &[f64]) -> Vec<f64> {
        self.params
            .get(name)
            .and_then(Value::as_array)
            .map(|a| a.iter().filter_map(Value::as_f64).collect())
            .unwrap_or_else(|| default.to_vec())
    }
}

fn check_kind(spec: &ParamSpec, v: &Value) -> Result<(), ScenarioError> {
    let ok = match spec.kind {
        ParamKind::Number => v.is_number(),
        ParamKind::Integer => v.as_u64().is_some(),
        ParamKind::NumberList => v
            .as_array()
            .map(|a| !a.is_empty() && a.iter().all(Value::is_number))
            .unwrap_or(false),
        ParamKind::Table => v
            .as_array()
            .map(|rows| {
                !rows.is_empty()
                    && rows.iter().all(|r| {
                        r.as_array()
                            .map(|cells| cells.iter().all(Value::is_number))
                            .unwrap_or(false)
                    })
            })
            .unwrap_or(false),
        ParamKind::Matrices => v
            .as_array()
            .map(|mats| {
                mats.iter().all(|m| {
                    m.as_array()
                        .map(|rows| {
                            rows.iter().all(|r| {
                                r.as_array()
                                    .map(|cells| cells.iter().all(Value::is_number))
                                    .unwrap_or(false)
                            })
                        })
                        .unwrap_or(false)
                })
            })
            .unwrap_or(false),
    };
    if ok {
        Ok(())
    } else {
        Err(ScenarioError::SchemaViolation(format!(
            "parameter `{}` must be a {}",
            spec.name, spec.kind
        )))
    }
}
