use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// One JSON document per invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    /// argv without the program name
    pub command: Vec<String>,
    pub seed: u64,
    pub parameters: Value,
    pub results: Value,
    pub warnings: Vec<String>,
    pub timing_seconds: f64,
    pub artifacts: Vec<PathBuf>,
}

impl RunReport {
    pub fn new(command: Vec<String>, seed: u64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            seed,
            parameters: Value::Null,
            results: Value::Null,
            warnings: Vec::new(),
            timing_seconds: 0.0,
            artifacts: Vec::new(),
        }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    #[cfg(test)]
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, self.to_json()? + "\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut r = RunReport::new(vec!["neuron".into(), "exc".into()], 7);
        r.parameters = serde_json::json!({"k": 8.0, "l": 17.0});
        r.results = serde_json::json!({"f_avg": 0.999_809_090_703_068_2});
        r.timing_seconds = 0.1 + 0.2;
        r.artifacts.push("out/phi_plus.csv".into());
        let back = RunReport::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
