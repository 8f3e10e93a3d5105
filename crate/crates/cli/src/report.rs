//! Machine-readable suite reports: versioned JSON plus per-suite CSV.
//!
//! Reports must be byte-identical across repeated runs of the same scenario
//! and seed, so provenance carries the git and config hashes but no wall
//! clock.

use std::fs;
use std::path::Path;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub tolerance: f64,
}

impl Verdict {
    pub fn new(name: impl Into<String>, pass: bool, measured: f64, tolerance: f64) -> Self {
        Verdict {
            name: name.into(),
            pass,
            measured,
            tolerance,
        }
    }

    /// `measured ≤ tolerance` verdicts, the common case.
    pub fn le(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Verdict::new(name, measured <= tolerance, measured, tolerance)
    }

    /// `measured ≥ threshold` verdicts.
    pub fn ge(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Verdict::new(name, measured >= threshold, measured, threshold)
    }

    pub fn flag(name: impl Into<String>, pass: bool) -> Self {
        Verdict::new(name, pass, if pass { 1.0 } else { 0.0 }, 1.0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub git_hash: String,
    pub config_hash: String,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub scenario: serde_json::Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
    pub provenance: Provenance,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write_to(&self, dir: &Path) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("report.json"), self.to_json())?;
        fs::write(dir.join(format!("{}.csv", self.suite)), self.to_csv())?;
        Ok(())
    }
}

pub fn git_hash() -> String {
    std::process::Command::new("git")
        .args(["rev-parse", "--short", "HEAD"])
        .output()
        .ok()
        .filter(|o| o.status.success())
        .map(|o| String::from_utf8_lossy(&o.stdout).trim().to_string())
        .unwrap_or_else(|| "unknown".to_string())
}

/// FNV-1a over the canonical scenario serialization.
pub fn config_hash(value: &serde_json::Value) -> String {
    let canonical = serde_json::to_string(value).expect("scenario serializes");
    let mut hash: u64 = 0xcbf29ce484222325;
    for b in canonical.as_bytes() {
        hash ^= *b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}
