//! Data emission: CSV series with a one-line header, and a JSON metadata
//! sidecar next to every data file.
//!
//! Floats are written as `{:.17e}` so that values round-trip exactly and
//! identical runs produce identical bytes.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

pub fn format_float(v: f64) -> String {
    format!("{v:.17e}")
}

/// Writes files under one output directory, created on first use so that
/// a run that fails validation leaves nothing behind.
#[derive(Debug)]
pub struct Emitter {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Emitter {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self {
            dir: dir.into(),
            written: Vec::new(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }

    fn create(&mut self, name: &str) -> Result<BufWriter<File>> {
        fs::create_dir_all(&self.dir).with_context(|| format!("creating {}", self.dir.display()))?;
        let path = self.dir.join(name);
        let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        self.written.push(path);
        Ok(BufWriter::new(file))
    }

    /// `name.csv` with `header` and one row per item, plus `name.json` holding `meta`.
    pub fn series<I>(&mut self, name: &str, header: &[&str], rows: I, meta: &Value) -> Result<()>
    where
        I: IntoIterator<Item = Vec<f64>>,
    {
        let mut out = csv::Writer::from_writer(self.create(&format!("{name}.csv"))?);
        out.write_record(header)?;
        for row in rows {
            debug_assert_eq!(row.len(), header.len());
            out.write_record(row.iter().map(|&v| format_float(v)))?;
        }
        out.flush()?;
        self.json(&format!("{name}.json"), meta)
    }

    pub fn json<T: Serialize>(&mut self, file_name: &str, value: &T) -> Result<()> {
        let mut out = self.create(file_name)?;
        serde_json::to_writer_pretty(&mut out, value)?;
        out.write_all(b"\n")?;
        out.flush()?;
        Ok(())
    }
}

/// `1e-3` → `"1e-3"`, `0.25` → `"0.25"`; for file names.
pub fn tag(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-2 || v.abs() >= 1e4) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}
