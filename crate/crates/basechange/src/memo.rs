//! Read-mostly caches for derived structures that law checking rebuilds many
//! times over (pushforwards, tensor products of enriched categories, and
//! self-enrichments). Keys are the full input tables plus the active size
//! bound, so a cached value is exactly the value the constructor would
//! return — mutated inputs miss the cache and are recomputed from scratch.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Mutex;

pub struct Memo<K, V> {
    table: Mutex<HashMap<K, V>>,
}

impl<K, V> Default for Memo<K, V> {
    fn default() -> Self {
        Memo {
            table: Mutex::new(HashMap::new()),
        }
    }
}

impl<K: Hash + Eq, V: Clone> Memo<K, V> {
    /// Look the key up; on a miss, run the constructor and remember a
    /// successful result. Errors are never cached.
    pub fn get_or_try_insert<E>(&self, key: K, f: impl FnOnce() -> Result<V, E>) -> Result<V, E> {
        if let Some(v) = self.table.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = f()?;
        self.table.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// Infallible variant for checkers: the remembered value is exactly
    /// what the check would report for these tables.
    pub fn get_or_insert(&self, key: K, f: impl FnOnce() -> V) -> V {
        if let Some(v) = self.table.lock().unwrap().get(&key) {
            return v.clone();
        }
        let v = f();
        self.table.lock().unwrap().insert(key, v.clone());
        v
    }
}
