use std::path::{Path, PathBuf};
use std::time::Duration;

use ifs_cavity::sweep::SweepConfig;
use ifs_cavity::INDEX_CONVENTION;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliResult;
use crate::fsio::write_atomic;

/// Everything needed to reproduce a run, written next to its outputs.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    /// Resolved configuration; a map of panel name to config for `figures`.
    pub config: Value,
    pub index_convention: &'static str,
    pub modes: ModeFlags,
    pub outputs: Vec<String>,
    pub duration_seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModeFlags {
    pub requested: Vec<String>,
    /// The closed form behind the paper mode.
    pub paper_closed_form: String,
    pub moment_source: Value,
    pub coherent_style: Value,
    pub field_alignment: Value,
    pub independent_oracle: bool,
}

impl ModeFlags {
    pub fn of(config: &SweepConfig) -> Self {
        Self {
            requested: config.modes.iter().map(|m| m.label().to_owned()).collect(),
            paper_closed_form: config.paper_mode().label().to_owned(),
            moment_source: serde_json::to_value(config.moments).unwrap_or(Value::Null),
            coherent_style: serde_json::to_value(config.coherent_style).unwrap_or(Value::Null),
            field_alignment: serde_json::to_value(config.alignment).unwrap_or(Value::Null),
            independent_oracle: config.independent_oracle,
        }
    }
}

impl RunManifest {
    pub fn new(command: &str, config: Value, modes: ModeFlags) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_owned(),
            config,
            index_convention: INDEX_CONVENTION,
            modes,
            outputs: Vec::new(),
            duration_seconds: 0.0,
        }
    }

    pub fn record_output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    pub fn finish(&mut self, elapsed: Duration) {
        self.duration_seconds = elapsed.as_secs_f64();
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("manifest serializes")
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        write_atomic(path, text.as_bytes())
    }
}

/// `out.csv` gets `out.csv.manifest.json`.
pub fn manifest_path_for(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    out.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_echoes_config_and_convention() {
        let config = SweepConfig::default();
        let mut m = RunManifest::new("mandel", serde_json::to_value(&config).unwrap(), ModeFlags::of(&config));
        m.record_output(Path::new("q.csv"));
        m.finish(Duration::from_millis(1500));
        let v = m.to_value();
        assert_eq!(v["index_convention"], INDEX_CONVENTION);
        assert_eq!(v["outputs"][0], "q.csv");
        assert_eq!(v["duration_seconds"], 1.5);
        let echoed: SweepConfig = serde_json::from_value(v["config"].clone()).unwrap();
        assert_eq!(echoed, config);
        assert_eq!(v["modes"]["paper_closed_form"], "paper-closed-form");
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(
            manifest_path_for(Path::new("a/b.csv")),
            PathBuf::from("a/b.csv.manifest.json")
        );
    }
}
