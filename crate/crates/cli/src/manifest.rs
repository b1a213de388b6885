//! Run manifests: a flat, stringified parameter map with an ISO-8601
//! timestamp, written next to every emitted data file.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

pub struct Manifest {
    fields: BTreeMap<String, String>,
}

impl Manifest {
    pub fn new(command: &str) -> Self {
        let mut fields = BTreeMap::new();
        fields.insert("command".into(), command.to_string());
        fields.insert(
            "artifact_version".into(),
            env!("CARGO_PKG_VERSION").to_string(),
        );
        fields.insert(
            "timestamp".into(),
            chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
        );
        Self { fields }
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.fields.insert(key.to_string(), value.to_string());
    }

    pub fn finish(
        mut self,
        data_file: &str,
        rows: usize,
        flagged: usize,
        max_tail: f64,
        duration: std::time::Duration,
    ) -> Self {
        self.set("data_file", data_file);
        self.set("rows", rows);
        self.set("truncation_flagged_records", flagged);
        self.set("truncation_max_tail_fraction", format!("{max_tail:e}"));
        self.set("duration_ms", duration.as_millis());
        self
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let json = serde_json::to_string_pretty(&self.fields).expect("string map serializes");
        fs::write(path, json + "\n")
    }
}
