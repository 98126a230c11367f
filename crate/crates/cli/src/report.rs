use std::time::Instant;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Deterministic summary of one invocation. Timings are kept out of the
/// canonical section and only emitted on request.
pub struct Report {
    command: String,
    digest: String,
    verdicts: Map<String, Value>,
    witnesses: Vec<Value>,
    details: Map<String, Value>,
    started: Instant,
}

impl Report {
    pub fn new(command: &str, input: &[u8]) -> Self {
        Report {
            command: command.to_string(),
            digest: sha256_hex(input),
            verdicts: Map::new(),
            witnesses: Vec::new(),
            details: Map::new(),
            started: Instant::now(),
        }
    }

    pub fn verdict(&mut self, key: &str, value: impl Into<Value>) {
        self.verdicts.insert(key.to_string(), value.into());
    }

    pub fn witness(&mut self, value: Value) {
        self.witnesses.push(value);
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    pub fn to_value(&self, timings: bool) -> Value {
        let mut v = json!({
            "command": self.command,
            "input_sha256": self.digest,
            "verdicts": self.verdicts,
            "witnesses": self.witnesses,
        });
        if !self.details.is_empty() {
            v["details"] = Value::Object(self.details.clone());
        }
        if timings {
            v["timings"] = json!({ "elapsed_us": self.started.elapsed().as_micros() as u64 });
        }
        v
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
