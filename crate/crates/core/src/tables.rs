use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use crate::cells::{CellDecomposition, RskConvention};
use crate::error::{Error, Result};
use crate::hecke::{cache, KlTable};

/// Largest `n` for which a full KL table is built.
pub const MAX_TABLE_N: usize = 7;

/// Shared per-`n` store of KL tables and cell decompositions.
///
/// With a cache directory, tables are read from and written to
/// `klcache-{n}.jsonl` files there.
#[derive(Debug, Default)]
pub struct Tables {
    cache_dir: Option<PathBuf>,
    kl: Mutex<BTreeMap<usize, Arc<KlTable>>>,
    cells: Mutex<BTreeMap<usize, Arc<CellDecomposition>>>,
    convention: Mutex<Option<RskConvention>>,
}

impl Tables {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cache_dir(dir: impl Into<PathBuf>) -> Self {
        Tables {
            cache_dir: Some(dir.into()),
            ..Self::default()
        }
    }

    pub fn cache_dir(&self) -> Option<&PathBuf> {
        self.cache_dir.as_ref()
    }

    pub fn kl(&self, n: usize) -> Result<Arc<KlTable>> {
        if n == 0 || n > MAX_TABLE_N {
            return Err(Error::invalid(format!(
                "KL tables are supported for 1 <= n <= {MAX_TABLE_N}"
            )));
        }
        if let Some(t) = self.kl.lock().expect("table lock").get(&n) {
            return Ok(t.clone());
        }
        let table = Arc::new(match &self.cache_dir {
            Some(dir) => cache::load_or_compute(dir, n)?,
            None => KlTable::compute(n),
        });
        Ok(self
            .kl
            .lock()
            .expect("table lock")
            .entry(n)
            .or_insert(table)
            .clone())
    }

    pub fn cells(&self, n: usize) -> Result<Arc<CellDecomposition>> {
        if let Some(c) = self.cells.lock().expect("cell lock").get(&n) {
            return Ok(c.clone());
        }
        let c = Arc::new(CellDecomposition::compute(self.kl(n)?));
        Ok(self
            .cells
            .lock()
            .expect("cell lock")
            .entry(n)
            .or_insert(c)
            .clone())
    }

    /// The RSK tableau constant on right cells, determined by comparing both
    /// groupings with the `mu`-graph cells for `n <= 5`.
    pub fn rsk_convention(&self) -> Result<RskConvention> {
        if let Some(c) = *self.convention.lock().expect("convention lock") {
            return Ok(c);
        }
        let mut found = None;
        for n in 2..=5 {
            let c = self.cells(n)?.detect_rsk_convention()?;
            if found.is_some_and(|f| f != c) {
                return Err(Error::ConventionMismatch { n });
            }
            found = Some(c);
        }
        let c = found.expect("checked at least one n");
        *self.convention.lock().expect("convention lock") = Some(c);
        Ok(c)
    }
}
