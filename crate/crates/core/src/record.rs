//! Flat result rows shared by grid sweeps and the CLI writers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Real(f64),
    Text(String),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Real(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_owned())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Skipped,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Skipped => "skipped",
            Status::Error => "error",
        }
    }
}

/// One grid point: its inputs, the extracted concurrence and diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub inputs: BTreeMap<String, Value>,
    pub concurrence: Option<f64>,
    pub auxiliary: BTreeMap<String, Value>,
    pub status: Status,
    pub message: Option<String>,
}

impl SweepRecord {
    pub fn new() -> Self {
        SweepRecord {
            inputs: BTreeMap::new(),
            concurrence: None,
            auxiliary: BTreeMap::new(),
            status: Status::Ok,
            message: None,
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_owned(), value.into());
        self
    }

    pub fn aux(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.auxiliary.insert(key.to_owned(), value.into());
        self
    }

    pub fn with_concurrence(mut self, c: f64) -> Self {
        self.concurrence = Some(c);
        self
    }

    pub fn with_status(mut self, status: Status, message: impl Into<String>) -> Self {
        self.status = status;
        self.message = Some(message.into());
        self
    }
}

impl Default for SweepRecord {
    fn default() -> Self {
        Self::new()
    }
}
