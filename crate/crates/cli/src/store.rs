//! On-disk state: the coefficient cache and the append-only run ledger.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use schurforge::symfunc::{global_cache, CacheStats};
use serde_json::{json, Value};

pub const CACHE_FILE: &str = "coefficients.cache";
pub const LEDGER_FILE: &str = "runs.jsonl";

pub struct Store {
    pub dir: PathBuf,
}

impl Store {
    pub fn new(explicit: Option<PathBuf>) -> Self {
        let dir = explicit.unwrap_or_else(|| {
            dirs::config_dir()
                .map(|d| d.join("schurforge"))
                .unwrap_or_else(|| PathBuf::from(".schurforge"))
        });
        Store { dir }
    }

    pub fn cache_path(&self) -> PathBuf {
        self.dir.join(CACHE_FILE)
    }

    pub fn ledger_path(&self) -> PathBuf {
        self.dir.join(LEDGER_FILE)
    }

    /// Loads the cache file if present. A damaged file is reported and
    /// ignored; it is rewritten on the next save.
    pub fn load_cache(&self) -> Option<CacheStats> {
        let path = self.cache_path();
        if !path.exists() {
            return None;
        }
        match global_cache().load(&path) {
            Ok(stats) => Some(stats),
            Err(err) => {
                eprintln!("warning: ignoring cache: {err}");
                global_cache().clear();
                None
            }
        }
    }

    pub fn save_cache(&self) {
        if let Err(err) = global_cache().save(&self.cache_path()) {
            eprintln!("warning: could not save cache: {err}");
        }
    }

    /// Appends one JSON line describing a finished run.
    pub fn record_run(&self, command: &str, report: &Value, exit_code: i32) {
        let stamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let line = json!({
            "command": command,
            "unix_time": stamp.to_string(),
            "exit_code": exit_code.to_string(),
            "report": report,
        });
        if let Err(err) = append_line(&self.ledger_path(), &line.to_string()) {
            eprintln!("warning: could not append to run ledger: {err}");
        }
    }
}

fn append_line(path: &Path, line: &str) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(f, "{line}")
}

/// Number of lines in a file, zero when it is missing.
pub fn line_count(path: &Path) -> usize {
    fs::read_to_string(path)
        .map(|s| s.lines().count())
        .unwrap_or(0)
}
