//! Shared memo tables for LR and Kostka coefficients, plus their on-disk
//! form.
//!
//! File layout, one record per line:
//!
//! ```text
//! SCHURFORGE-CACHE v1
//! LR <λ> <μ> <ν> <value>
//! KOSTKA <λ> <μ> <value>
//! ```
//!
//! Records are written sorted, so two caches with the same contents produce
//! identical files.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use num_bigint::BigInt;

use super::transition::TransitionBlock;
use crate::error::{Error, Result};
use crate::partition::{Partition, Rectangle};

pub const CACHE_HEADER: &str = "SCHURFORGE-CACHE v1";

pub(crate) type ProductKey = (Partition, Partition, Option<Rectangle>);
pub(crate) type ProductTerms = Arc<Vec<(Partition, u64)>>;

/// Concurrent memo tables. Inserts are idempotent: two threads racing on the
/// same key compute the same value.
#[derive(Default)]
pub struct CoefficientCache {
    pub(crate) lr: DashMap<(Partition, Partition, Partition), BigInt>,
    pub(crate) kostka: DashMap<(Partition, Partition), BigInt>,
    pub(crate) products: DashMap<ProductKey, ProductTerms>,
    pub(crate) blocks: DashMap<u32, Arc<TransitionBlock>>,
}

/// Counts of persisted record kinds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub lr: usize,
    pub kostka: usize,
}

static GLOBAL: OnceLock<CoefficientCache> = OnceLock::new();

/// The process-wide cache used by the free functions in [`crate::symfunc`].
pub fn global() -> &'static CoefficientCache {
    GLOBAL.get_or_init(CoefficientCache::default)
}

impl CoefficientCache {
    pub fn stats(&self) -> CacheStats {
        CacheStats {
            lr: self.lr.len(),
            kostka: self.kostka.len(),
        }
    }

    pub fn clear(&self) {
        self.lr.clear();
        self.kostka.clear();
        self.products.clear();
        self.blocks.clear();
    }

    /// Merges records from `path` into memory. Returns how many were read.
    pub fn load(&self, path: &Path) -> Result<CacheStats> {
        let file = fs::File::open(path)?;
        let shown = path.display().to_string();
        let bad = |line_no: usize, reason: &str| Error::CacheFormat {
            path: shown.clone(),
            reason: format!("line {line_no}: {reason}"),
        };
        let mut stats = CacheStats::default();
        let mut lines = BufReader::new(file).lines();
        match lines.next() {
            Some(Ok(h)) if h.trim_end() == CACHE_HEADER => {}
            _ => return Err(bad(1, "missing header")),
        }
        for (idx, line) in lines.enumerate() {
            let line = line?;
            let line_no = idx + 2;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let part = |s: &str| {
                s.parse::<Partition>()
                    .map_err(|_| bad(line_no, "bad partition"))
            };
            let value = |s: &str| s.parse::<BigInt>().map_err(|_| bad(line_no, "bad value"));
            match fields.as_slice() {
                ["LR", l, m, n, v] => {
                    self.lr.insert((part(l)?, part(m)?, part(n)?), value(v)?);
                    stats.lr += 1;
                }
                ["KOSTKA", l, m, v] => {
                    self.kostka.insert((part(l)?, part(m)?), value(v)?);
                    stats.kostka += 1;
                }
                _ => return Err(bad(line_no, "unknown record")),
            }
        }
        Ok(stats)
    }

    /// Writes every LR and Kostka record, atomically (temp file + rename).
    pub fn save(&self, path: &Path) -> Result<CacheStats> {
        let mut lr: Vec<_> = self
            .lr
            .iter()
            .map(|e| (e.key().clone(), e.value().clone()))
            .collect();
        lr.sort();
        let mut kostka: Vec<_> = self
            .kostka
            .iter()
            .map(|e| (e.key().clone(), e.value().clone()))
            .collect();
        kostka.sort();

        let dir = path
            .parent()
            .filter(|d| !d.as_os_str().is_empty())
            .unwrap_or(Path::new("."));
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(
            ".{}.tmp{}",
            path.file_name().and_then(|n| n.to_str()).unwrap_or("cache"),
            std::process::id()
        ));
        {
            let mut out = std::io::BufWriter::new(fs::File::create(&tmp)?);
            writeln!(out, "{CACHE_HEADER}")?;
            for ((l, m, n), v) in &lr {
                writeln!(out, "LR {l} {m} {n} {v}")?;
            }
            for ((l, m), v) in &kostka {
                writeln!(out, "KOSTKA {l} {m} {v}")?;
            }
            out.into_inner().map_err(|e| e.into_error())?.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(CacheStats {
            lr: lr.len(),
            kostka: kostka.len(),
        })
    }
}
