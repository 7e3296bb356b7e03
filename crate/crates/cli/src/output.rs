use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::commands::CliError;

/// Written next to every set of outputs; enough to rerun the command.
#[derive(Serialize)]
pub struct RunManifest<'a> {
    pub command: &'a str,
    pub argv: Vec<String>,
    pub parameters: serde_json::Value,
    pub seed: u64,
    pub version: &'static str,
    pub duration_seconds: f64,
    pub outputs: Vec<String>,
}

/// Collects output files for one command invocation.
pub struct OutputDir {
    dir: Option<PathBuf>,
    written: Vec<String>,
    started: Instant,
}

impl OutputDir {
    pub fn new(dir: Option<&Path>) -> Result<Self, CliError> {
        if let Some(d) = dir {
            fs::create_dir_all(d).map_err(|e| CliError::usage(format!("{}: {e}", d.display())))?;
        }
        Ok(Self {
            dir: dir.map(Path::to_path_buf),
            written: Vec::new(),
            started: Instant::now(),
        })
    }

    fn path(&mut self, name: &str) -> Option<PathBuf> {
        let p = self.dir.as_ref()?.join(name);
        self.written.push(p.display().to_string());
        Some(p)
    }

    /// Pretty JSON with a trailing newline.
    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), CliError> {
        let Some(p) = self.path(name) else {
            return Ok(());
        };
        let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::usage(e.to_string()))?;
        text.push('\n');
        fs::write(&p, text).map_err(|e| CliError::usage(format!("{}: {e}", p.display())))
    }

    /// CSV with a header row.
    pub fn csv(
        &mut self,
        name: &str,
        header: &[&str],
        rows: impl IntoIterator<Item = Vec<String>>,
    ) -> Result<(), CliError> {
        let Some(p) = self.path(name) else {
            return Ok(());
        };
        let io = |e: csv::Error| CliError::usage(format!("{}: {e}", p.display()));
        let mut w = csv::Writer::from_path(&p).map_err(io)?;
        w.write_record(header).map_err(io)?;
        for r in rows {
            w.write_record(&r).map_err(io)?;
        }
        w.flush().map_err(|e| CliError::usage(format!("{}: {e}", p.display())))
    }

    pub fn manifest<P: Serialize>(mut self, command: &str, parameters: &P, seed: u64) -> Result<(), CliError> {
        if self.dir.is_none() {
            return Ok(());
        }
        let outputs = std::mem::take(&mut self.written);
        let manifest = RunManifest {
            command,
            argv: std::env::args().collect(),
            parameters: serde_json::to_value(parameters).map_err(|e| CliError::usage(e.to_string()))?,
            seed,
            version: env!("CARGO_PKG_VERSION"),
            duration_seconds: self.started.elapsed().as_secs_f64(),
            outputs,
        };
        self.json("manifest.json", &manifest)
    }
}
