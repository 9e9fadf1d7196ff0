//! CSV data files and the JSON run manifest.
//!
//! Numbers are written with 17 significant digits in scientific notation
//! (`{:.16e}`), `.` as decimal separator and `\n` line endings, so identical
//! runs produce byte-identical files.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::experiments::{SweepResult, TraceResult};

pub const FIG1_HEADER: &str = "w,delta,mean_concurrence,std_error,n";
pub const FIG2_HEADER: &str = "t_over_tau,w,mean_p_minus,mean_p_plus,std_error,n";
pub const MANIFEST_NAME: &str = "manifest.json";

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// One row per `(Δ, W)`, grouped by `Δ` in input order.
pub fn write_fig1_csv<W: Write>(result: &SweepResult, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{FIG1_HEADER}")?;
    for series in &result.series {
        for (w, stats) in result.axis.iter().zip(&series.points) {
            writeln!(
                out,
                "{},{},{},{},{}",
                fmt_f64(*w),
                fmt_f64(series.delta),
                fmt_f64(stats.mean),
                fmt_f64(stats.std_error),
                stats.n
            )?;
        }
    }
    Ok(())
}

/// Per-realization concurrences, present only when raw values were retained.
pub fn write_fig1_raw_csv<W: Write>(result: &SweepResult, mut out: W) -> std::io::Result<()> {
    writeln!(out, "w,delta,realization,concurrence")?;
    for series in &result.series {
        for (w, stats) in result.axis.iter().zip(&series.points) {
            for (i, v) in stats.per_realization.iter().flatten().enumerate() {
                writeln!(out, "{},{},{},{}", fmt_f64(*w), fmt_f64(series.delta), i, fmt_f64(*v))?;
            }
        }
    }
    Ok(())
}

/// One row per `(W, t)`, grouped by `W`. `std_error` refers to `P⁻`.
pub fn write_fig2_csv<W: Write>(result: &TraceResult, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{FIG2_HEADER}")?;
    for series in &result.series {
        for (k, x) in result.t_over_tau.iter().enumerate() {
            let minus = &series.p_minus[k];
            let plus = &series.p_plus[k];
            writeln!(
                out,
                "{},{},{},{},{},{}",
                fmt_f64(*x),
                fmt_f64(series.w),
                fmt_f64(minus.mean),
                fmt_f64(plus.mean),
                fmt_f64(minus.std_error),
                minus.n
            )?;
        }
    }
    Ok(())
}

pub fn write_fig2_raw_csv<W: Write>(result: &TraceResult, mut out: W) -> std::io::Result<()> {
    writeln!(out, "t_over_tau,w,realization,p_minus,p_plus")?;
    for series in &result.series {
        for (k, x) in result.t_over_tau.iter().enumerate() {
            let minus = series.p_minus[k].per_realization.iter().flatten();
            let plus = series.p_plus[k].per_realization.iter().flatten();
            for (i, (m, p)) in minus.zip(plus).enumerate() {
                writeln!(out, "{},{},{},{},{}", fmt_f64(*x), fmt_f64(series.w), i, fmt_f64(*m), fmt_f64(*p))?;
            }
        }
    }
    Ok(())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Provenance record written next to the data files.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub artifact_version: String,
    pub command: String,
    pub config: serde_json::Value,
    pub master_seed: u64,
    pub threads: usize,
    pub timestamp: String,
    /// File name to SHA-256 of its contents.
    pub files: BTreeMap<String, String>,
}

/// Collects data files for one output directory and writes the manifest.
#[derive(Debug)]
pub struct OutputDir {
    root: PathBuf,
    files: BTreeMap<String, String>,
}

impl OutputDir {
    pub fn create(root: impl AsRef<Path>) -> Result<Self> {
        let root = root.as_ref().to_path_buf();
        fs::create_dir_all(&root)?;
        Ok(OutputDir {
            root,
            files: BTreeMap::new(),
        })
    }

    pub fn path(&self) -> &Path {
        &self.root
    }

    /// Renders a file in memory, writes it and records its digest.
    pub fn write_file<F>(&mut self, name: &str, render: F) -> Result<PathBuf>
    where
        F: FnOnce(&mut Vec<u8>) -> std::io::Result<()>,
    {
        let mut buf = Vec::new();
        render(&mut buf)?;
        let path = self.root.join(name);
        fs::write(&path, &buf)?;
        self.files.insert(name.to_string(), sha256_hex(&buf));
        Ok(path)
    }

    pub fn finish<C: Serialize>(
        self,
        command: &str,
        config: &C,
        master_seed: u64,
        threads: usize,
    ) -> Result<RunManifest> {
        let config = serde_json::to_value(config).map_err(|e| Error::Serialization(e.to_string()))?;
        let manifest = RunManifest {
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config,
            master_seed,
            threads,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            files: self.files,
        };
        // round-trip through Value so every object has sorted keys
        let value = serde_json::to_value(&manifest).map_err(|e| Error::Serialization(e.to_string()))?;
        let mut text = serde_json::to_string_pretty(&value).map_err(|e| Error::Serialization(e.to_string()))?;
        text.push('\n');
        fs::write(self.root.join(MANIFEST_NAME), text)?;
        Ok(manifest)
    }
}
