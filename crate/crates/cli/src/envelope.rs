//! The JSON wrapper every subcommand except `export-dot` and CSV tables
//! writes to stdout.

use std::collections::BTreeSet;

use atomdec::Engine;
use serde::Serialize;
use serde_json::Value;

/// Version of the envelope layout; see `schema/envelope.schema.json`.
pub const SCHEMA_VERSION: &str = "atomdec.envelope.v1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputEnvelope {
    pub schema_version: String,
    pub command: String,
    /// Parsed inputs, echoed back.
    pub inputs: Value,
    pub result: Value,
    /// Every engine that produced a number in `result`, sorted.
    pub provenance: Vec<Engine>,
}

impl OutputEnvelope {
    pub fn new(
        command: &str,
        inputs: impl Serialize,
        result: impl Serialize,
        engines: BTreeSet<Engine>,
    ) -> Self {
        OutputEnvelope {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs: serde_json::to_value(inputs).expect("inputs serialize"),
            result: serde_json::to_value(result).expect("result serializes"),
            provenance: engines.into_iter().collect(),
        }
    }

    /// Pretty JSON with a trailing newline. Object keys come out sorted, so
    /// equal envelopes render to equal bytes.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
        s.push('\n');
        s
    }
}
