//! Report/manifest writing: every command prints its report JSON to stdout
//! and mirrors it into the output directory together with any CSV series
//! and a run manifest.
//!
//! Reports are deterministic byte-for-byte for identical inputs; the only
//! timestamp lives in `manifest.json`.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub command: String,
    pub config_digest: String,
    pub outputs: Vec<String>,
    pub timestamp: String,
}

pub struct RunWriter {
    out_dir: PathBuf,
    command: String,
    settings_json: String,
    outputs: Vec<String>,
}

impl RunWriter {
    pub fn new(out_dir: &Path, settings: &Value) -> Result<Self> {
        fs::create_dir_all(out_dir)
            .with_context(|| format!("creating output directory {}", out_dir.display()))?;
        let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
        Ok(Self {
            out_dir: out_dir.to_path_buf(),
            command,
            settings_json: serde_json::to_string(settings)?,
            outputs: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = self.out_dir.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        self.outputs.push(name.to_string());
        Ok(())
    }

    /// Print the report to stdout and mirror it to `report.json`.
    pub fn emit_report(&mut self, report: &Value) -> Result<()> {
        let text = format!("{}\n", serde_json::to_string_pretty(report)?);
        print!("{text}");
        self.write("report.json", &text)
    }

    /// Write a `(T, value)` series as CSV.
    pub fn emit_samples(&mut self, name: &str, header: &str, rows: &[(f64, f64)]) -> Result<()> {
        let mut text = String::from(header);
        text.push('\n');
        for (t, v) in rows {
            text.push_str(&format!("{t},{v}\n"));
        }
        self.write(name, &text)
    }

    pub fn emit_csv(&mut self, name: &str, contents: &str) -> Result<()> {
        self.write(name, contents)
    }

    /// Write `manifest.json` last so it can list every emitted file.
    pub fn finish(mut self) -> Result<()> {
        let digest = Sha256::digest(self.settings_json.as_bytes());
        let digest_hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        let mut outputs = self.outputs.clone();
        outputs.push("manifest.json".to_string());
        let manifest = Manifest {
            command: self.command.clone(),
            config_digest: digest_hex,
            outputs,
            timestamp: chrono::Utc::now().to_rfc3339(),
        };
        let text = format!("{}\n", serde_json::to_string_pretty(&manifest)?);
        self.write("manifest.json", &text)
    }
}
