//! On-disk result cache: one JSON file per (command, parameters, seed).

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::CliError;

pub const TOOL_VERSION: &str = concat!("ltc-", env!("CARGO_PKG_VERSION"));

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct CacheEntry {
    pub version: String,
    pub key: String,
    #[serde(rename = "exitCode")]
    pub exit_code: i32,
    pub output: String,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        let name: String = key
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '=' || c == '-' { c } else { '_' })
            .collect();
        self.dir.join(format!("{name}.json"))
    }

    /// A stored entry for `key`, or `None` if absent or written by another
    /// tool version. Unreadable entries are errors.
    pub fn load(&self, key: &str) -> Result<Option<CacheEntry>, CliError> {
        let path = self.path_for(key);
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
        let entry: CacheEntry = serde_json::from_str(&text)
            .map_err(|e| CliError::Cache(format!("corrupt cache file {}: {e}", path.display())))?;
        if entry.version != TOOL_VERSION {
            return Ok(None);
        }
        if entry.key != key {
            return Err(CliError::Cache(format!("cache file {} holds key {:?}", path.display(), entry.key)));
        }
        Ok(Some(entry))
    }

    pub fn store(&self, key: &str, exit_code: i32, output: &str) -> Result<(), CliError> {
        fs::create_dir_all(&self.dir).map_err(|e| io_err(&self.dir, e))?;
        let entry = CacheEntry { version: TOOL_VERSION.into(), key: key.into(), exit_code, output: output.into() };
        let text = serde_json::to_string_pretty(&entry).map_err(|e| CliError::Io(e.to_string()))?;
        let path = self.path_for(key);
        fs::write(&path, text).map_err(|e| io_err(&path, e))
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}
