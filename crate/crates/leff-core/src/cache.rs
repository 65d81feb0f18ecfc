//! Matrix-element cache abstraction. Core stays IO-free: callers supply any
//! implementation (the CLI persists one to disk as JSON). Values are
//! deterministic, so last-writer-wins semantics are safe.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::cell::RefCell;
use serde::{Deserialize, Serialize};

/// A single cached complex matrix element with its estimated quadrature error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CachedValue {
    pub re: f64,
    pub im: f64,
    pub est_error: f64,
}

/// Key format: "op|B=1|m=(…)|m'=(…)|arg=…".
pub trait ElementCache {
    fn get(&self, key: &str) -> Option<CachedValue>;
    fn put(&self, key: &str, value: CachedValue);
}

/// Always-miss cache.
pub struct NoCache;

impl ElementCache for NoCache {
    fn get(&self, _key: &str) -> Option<CachedValue> {
        None
    }
    fn put(&self, _key: &str, _value: CachedValue) {}
}

/// In-memory cache (single-threaded; wrap in a lock for sharing).
#[derive(Default)]
pub struct MemCache {
    map: RefCell<BTreeMap<String, CachedValue>>,
}

impl MemCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_map(map: BTreeMap<String, CachedValue>) -> Self {
        MemCache {
            map: RefCell::new(map),
        }
    }

    pub fn into_map(self) -> BTreeMap<String, CachedValue> {
        self.map.into_inner()
    }

    pub fn snapshot(&self) -> BTreeMap<String, CachedValue> {
        self.map.borrow().clone()
    }

    pub fn len(&self) -> usize {
        self.map.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.borrow().is_empty()
    }
}

impl ElementCache for MemCache {
    fn get(&self, key: &str) -> Option<CachedValue> {
        self.map.borrow().get(key).copied()
    }
    fn put(&self, key: &str, value: CachedValue) {
        self.map.borrow_mut().insert(String::from(key), value);
    }
}
