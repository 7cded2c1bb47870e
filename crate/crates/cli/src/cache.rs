//! Append-only result cache: one JSON record per line.
//!
//! Lookups return the newest record for an `(op, params)` key whose
//! version shares major and minor numbers with this build. Unreadable lines
//! are skipped with a warning.

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub op: String,
    pub params: String,
    pub payload: serde_json::Value,
    pub version: String,
    pub timestamp: u64,
}

impl CacheRecord {
    pub fn new(op: &str, params: &str, payload: serde_json::Value) -> Self {
        CacheRecord {
            op: op.to_string(),
            params: params.to_string(),
            payload,
            version: VERSION.to_string(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }
}

fn major_minor(v: &str) -> Option<(&str, &str)> {
    let mut it = v.split('.');
    Some((it.next()?, it.next()?))
}

pub fn compatible(version: &str) -> bool {
    major_minor(version).is_some() && major_minor(version) == major_minor(VERSION)
}

#[derive(Debug, Clone)]
pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Cache { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn lookup(&self, op: &str, params: &str, warn: &mut dyn Write) -> Option<CacheRecord> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return None,
            Err(e) => {
                let _ = writeln!(warn, "warning: cannot read cache {}: {e}", self.path.display());
                return None;
            }
        };
        let mut newest = None;
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = match line {
                Ok(l) => l,
                Err(e) => {
                    let _ = writeln!(warn, "warning: cache line {}: {e}", i + 1);
                    continue;
                }
            };
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CacheRecord>(&line) {
                Ok(rec) => {
                    if rec.op == op && rec.params == params && compatible(&rec.version) {
                        newest = Some(rec);
                    }
                }
                Err(e) => {
                    let _ = writeln!(warn, "warning: skipping corrupt cache line {}: {e}", i + 1);
                }
            }
        }
        newest
    }

    /// Appends one record as a single write.
    pub fn append(&self, record: &CacheRecord) -> io::Result<()> {
        let mut line = serde_json::to_string(record)?;
        line.push('\n');
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        f.write_all(line.as_bytes())
    }
}
