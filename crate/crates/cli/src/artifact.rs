//! Deferred output writing. Commands stage every artifact in memory and
//! flush once at the end, so a failure can never leave a half-written run
//! behind: on any write error the files already flushed are removed again.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use spotcheck_core::{Error, Result};

pub struct Artifacts {
    out_dir: PathBuf,
    files: Vec<(String, Vec<u8>)>,
}

impl Artifacts {
    pub fn new(out_dir: &Path) -> Self {
        Artifacts {
            out_dir: out_dir.to_path_buf(),
            files: Vec::new(),
        }
    }

    pub fn push(&mut self, name: &str, bytes: Vec<u8>) {
        self.files.push((name.to_owned(), bytes));
    }

    /// Stages one compact JSON object per line.
    pub fn push_jsonl<T: Serialize>(&mut self, name: &str, items: &[T]) -> Result<()> {
        let mut bytes = Vec::new();
        for item in items {
            let line = serde_json::to_string(item)
                .map_err(|e| Error::invalid(format!("cannot serialize {name}: {e}")))?;
            bytes.extend_from_slice(line.as_bytes());
            bytes.push(b'\n');
        }
        self.push(name, bytes);
        Ok(())
    }

    /// Stages a pretty-printed JSON document.
    pub fn push_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)
            .map_err(|e| Error::invalid(format!("cannot serialize {name}: {e}")))?;
        text.push('\n');
        self.push(name, text.into_bytes());
        Ok(())
    }

    /// Writes everything; removes any file of this batch on failure.
    pub fn write_all(self) -> Result<Vec<PathBuf>> {
        let io_err = |path: &Path, source: std::io::Error| Error::Io {
            path: path.to_path_buf(),
            source,
        };
        fs::create_dir_all(&self.out_dir).map_err(|e| io_err(&self.out_dir, e))?;
        let mut written = Vec::new();
        for (name, bytes) in &self.files {
            let path = self.out_dir.join(name);
            if let Err(e) = fs::write(&path, bytes) {
                for done in &written {
                    let _ = fs::remove_file(done);
                }
                return Err(io_err(&path, e));
            }
            written.push(path);
        }
        Ok(written)
    }
}

/// Minimal CSV staging: plain comma joins, values are known not to contain
/// commas or quotes.
pub struct Csv {
    bytes: Vec<u8>,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut csv = Csv { bytes: Vec::new() };
        csv.row(header);
        csv
    }

    pub fn row<S: AsRef<str>>(&mut self, fields: &[S]) {
        let line = fields
            .iter()
            .map(|f| f.as_ref())
            .collect::<Vec<_>>()
            .join(",");
        self.bytes.extend_from_slice(line.as_bytes());
        self.bytes.push(b'\n');
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }
}

/// Formats a rate or mean with two decimals, the table convention.
pub fn fixed2(value: f64) -> String {
    format!("{value:.2}")
}

/// Formats an agreement coefficient with four decimals.
pub fn fixed4(value: f64) -> String {
    format!("{value:.4}")
}
