//! Machine-readable run reports emitted by the command-line front end.

use serde::Serialize;

/// One CLI invocation's outcome, serialized as JSON on stdout. The
/// `perturbations` field lists every delta that was actually decided when it
/// differs from the requested one, making the general-position workaround
/// auditable.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<String>,
    pub answer: serde_json::Value,
    pub tolerances: serde_json::Value,
    pub perturbations: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cells_touched: Option<usize>,
    pub wall_ms: f64,
}

impl RunReport {
    pub fn new(command: &str, inputs: &[String]) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: inputs.to_vec(),
            answer: serde_json::Value::Null,
            tolerances: serde_json::Value::Null,
            perturbations: Vec::new(),
            cells_touched: None,
            wall_ms: 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
