//! In-memory cache of ψ tables, shared across threads.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use dequiv::{CellMatching, DescentAscentBijection, PsiTable, Word, DESK_TABLE_LIMIT};

/// Largest `q^n` for which the cache builds a table; beyond it ψ is
/// evaluated cell by cell.
pub const LIMIT_VAR: &str = "DEQUIV_PSI_TABLE_LIMIT";

pub const DEFAULT_LIMIT: u64 = 1_000_000;

type Slot = Arc<OnceLock<Option<Arc<PsiTable>>>>;

/// Tables are built once per `(n, q)`: concurrent callers asking for the
/// same key wait on one construction.
#[derive(Debug)]
pub struct PsiCache {
    limit: u64,
    slots: Mutex<HashMap<(usize, u32), Slot>>,
}

impl PsiCache {
    pub fn new(limit: u64) -> Self {
        PsiCache {
            limit: limit.min(DESK_TABLE_LIMIT),
            slots: Mutex::new(HashMap::new()),
        }
    }

    /// Reads the limit from the environment, falling back to [`DEFAULT_LIMIT`].
    pub fn from_env() -> Self {
        let limit = std::env::var(LIMIT_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_LIMIT);
        Self::new(limit)
    }

    /// Process-wide instance configured from the environment.
    pub fn global() -> &'static PsiCache {
        static CACHE: OnceLock<PsiCache> = OnceLock::new();
        CACHE.get_or_init(PsiCache::from_env)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// The table for `[q]^n`, or `None` when it exceeds the limit.
    pub fn table(&self, n: usize, q: u32) -> Option<Arc<PsiTable>> {
        let slot = {
            let mut slots = self.slots.lock().unwrap();
            slots.entry((n, q)).or_default().clone()
        };
        slot.get_or_init(|| {
            PsiTable::build_with_limit(n, q, self.limit)
                .ok()
                .map(Arc::new)
        })
        .clone()
    }

    /// Number of `(n, q)` keys requested so far.
    pub fn len(&self) -> usize {
        self.slots.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl DescentAscentBijection for PsiCache {
    fn psi(&self, w: &Word, q: u32) -> dequiv::Result<Word> {
        match self.table(w.len(), q) {
            Some(table) => table.psi(w, q),
            None => CellMatching.psi(w, q),
        }
    }

    fn psi_inverse(&self, w: &Word, q: u32) -> dequiv::Result<Word> {
        match self.table(w.len(), q) {
            Some(table) => table.psi_inverse(w, q),
            None => CellMatching.psi_inverse(w, q),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cached_and_direct_agree() {
        let cache = PsiCache::new(100);
        for w in dequiv::all_words(4, 3) {
            assert_eq!(cache.psi(&w, 3).unwrap(), dequiv::psi(&w, 3).unwrap());
        }
        // 4^4 = 256 exceeds the limit, so this goes cell by cell
        let w: Word = "4132".parse().unwrap();
        assert!(cache.table(4, 4).is_none());
        assert_eq!(cache.psi(&w, 4).unwrap(), dequiv::psi(&w, 4).unwrap());
    }

    #[test]
    fn one_build_per_key() {
        let cache = Arc::new(PsiCache::new(10_000));
        let tables: Vec<Arc<PsiTable>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..8)
                .map(|_| {
                    let cache = cache.clone();
                    s.spawn(move || cache.table(5, 4).unwrap())
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert!(tables.windows(2).all(|p| Arc::ptr_eq(&p[0], &p[1])));
        assert_eq!(cache.len(), 1);
    }
}
