use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::args::Format;

/// Everything that determines a run's output, echoed into that output.
///
/// The destination path and thread count are left out: they do not change
/// the bytes written.
#[derive(Debug, Default, Serialize)]
pub struct RunConfig {
    pub subcommand: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<[f64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub burn_in: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<(u32, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbits: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub queries: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub queries_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", rename = "override")]
    pub override_dim: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<crate::sweep::Grid>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn new(subcommand: &'static str) -> Self {
        RunConfig {
            subcommand,
            ..Default::default()
        }
    }

    /// The `# config: {...}` line that opens every CSV artifact.
    pub fn csv_comment(&self) -> String {
        format!("# config: {}", serde_json::to_string(self).expect("config serializes"))
    }
}

pub fn open(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot write {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Writes `{"config": ..., <body fields>}` as pretty JSON.
pub fn write_json<T: Serialize>(path: Option<&Path>, config: &RunConfig, body: &T) -> Result<()> {
    let mut value = serde_json::to_value(body)?;
    let map = value.as_object_mut().expect("report bodies are JSON objects");
    map.insert("config".into(), serde_json::to_value(config)?);
    let mut out = open(path)?;
    serde_json::to_writer_pretty(&mut out, &value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

/// Writes the config comment, a header and data rows.
pub fn write_csv(path: Option<&Path>, config: &RunConfig, header: &str, rows: &[String]) -> Result<()> {
    let mut out = open(path)?;
    writeln!(out, "{}", config.csv_comment())?;
    writeln!(out, "{header}")?;
    for row in rows {
        writeln!(out, "{row}")?;
    }
    out.flush()?;
    Ok(())
}
