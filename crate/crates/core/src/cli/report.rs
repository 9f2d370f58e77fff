use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::hyperpolygon::{Failure, StageResult};
use crate::ideal::Budget;

use super::Command;

pub const SCHEMA_ID: &str = "hyperkirwan-report/1";

/// The JSON schema every report validates against.
pub const SCHEMA: &str = include_str!("../../schema/report.schema.json");

/// Keys holding wall-clock measurements; removed by [`canonical_json`].
pub const TIMING_FIELDS: [&str; 2] = ["elapsed_ms", "total_ms"];

/// The length vector a run was given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceEcho {
    pub n: usize,
    pub xi: Vec<String>,
    /// Number of short subsets, including the empty one. Absent when the
    /// lengths are not generic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shorts: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub version: String,
    pub command: Command,
    pub budget: Budget,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    pub stages: Vec<StageResult>,
    /// Command-specific results.
    pub result: Value,
    pub total_ms: f64,
}

impl Report {
    pub(crate) fn new(command: Command, budget: Budget) -> Self {
        Report {
            schema: SCHEMA_ID.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command,
            budget,
            instance: None,
            fixture: None,
            passed: false,
            failure: None,
            stages: Vec::new(),
            result: Value::Null,
            total_ms: 0.0,
        }
    }

    /// Sets `passed` and `failure` from the stages.
    pub(crate) fn settle(&mut self) {
        if self.failure.is_none() {
            self.failure = self.stages.iter().find_map(|s| s.failure.clone());
        }
        self.passed = self.failure.is_none() && self.stages.iter().all(|s| s.passed);
    }

    pub fn exit_code(&self) -> i32 {
        match &self.failure {
            None if self.passed => 0,
            None => 1,
            Some(f) => f.kind.exit_code(),
        }
    }

    pub fn stage(&self, name: &str) -> Option<&StageResult> {
        self.stages.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn strip(v: &mut Value) {
    match v {
        Value::Object(m) => {
            for k in TIMING_FIELDS {
                m.remove(k);
            }
            m.values_mut().for_each(strip);
        }
        Value::Array(a) => a.iter_mut().for_each(strip),
        _ => {}
    }
}

/// Pretty JSON with every timing field removed: the form compared against
/// golden files.
pub fn canonical_json(report: &Value) -> String {
    let mut v = report.clone();
    strip(&mut v);
    serde_json::to_string_pretty(&v).expect("value serializes") + "\n"
}
