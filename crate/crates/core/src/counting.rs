//! Exact counts of reduced words, memoized on sorted windows.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::splitting::{staircase, SplittingType};
use crate::young::{check_window, window_from_core, CoreStep, Diagram, TVector};

pub const CACHE_VERSION: u32 = 1;

/// Memo table `R(w)` keyed by sorted window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemoCache {
    k: usize,
    entries: HashMap<Vec<i64>, BigUint>,
    inserted: u64,
    state_limit: Option<u64>,
}

impl MemoCache {
    pub fn new(k: usize) -> Self {
        Self { k, entries: HashMap::new(), inserted: 0, state_limit: None }
    }

    /// Fails with a resource-limit error once more than `limit` new states
    /// would be stored.
    pub fn with_state_limit(mut self, limit: u64) -> Self {
        self.state_limit = Some(limit);
        self
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// States inserted since construction or the last [`reset_counter`](Self::reset_counter).
    pub fn new_states(&self) -> u64 {
        self.inserted
    }

    pub fn reset_counter(&mut self) {
        self.inserted = 0;
    }

    pub fn get(&self, t: &TVector) -> Option<&BigUint> {
        self.entries.get(t.values())
    }

    fn insert(&mut self, key: Vec<i64>, value: BigUint) -> Result<()> {
        if let Some(limit) = self.state_limit {
            if self.inserted >= limit {
                return Err(Error::ResourceLimit {
                    what: "memo states",
                    needed: format!("more than {limit}"),
                    limit,
                });
            }
        }
        self.entries.insert(key, value);
        self.inserted += 1;
        Ok(())
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if self.k != k {
            return Err(Error::CacheMismatch { cache: self.k, query: k });
        }
        Ok(())
    }
}

fn descents(t: &TVector) -> impl Iterator<Item = usize> + '_ {
    (1..=t.k()).filter(|&j| t.generator_effect(j) == CoreStep::Removed)
}

/// `R` for the coset element with sorted window `t`.
pub fn count_window(t: &TVector, cache: &mut MemoCache) -> Result<BigUint> {
    cache.check_k(t.k())?;
    if let Some(v) = cache.get(t) {
        return Ok(v.clone());
    }
    // Post-order traversal; a node is summed once all its children are cached.
    let mut stack: Vec<(TVector, bool)> = vec![(t.clone(), false)];
    while let Some((node, expanded)) = stack.pop() {
        if cache.entries.contains_key(node.values()) {
            continue;
        }
        if node.is_identity() {
            cache.insert(node.values().to_vec(), BigUint::one())?;
            continue;
        }
        if expanded {
            let mut total = BigUint::zero();
            for j in descents(&node) {
                total += &cache.entries[node.apply(j).values()];
            }
            cache.insert(node.values().to_vec(), total)?;
        } else {
            let children: Vec<TVector> = descents(&node).map(|j| node.apply(j)).collect();
            stack.push((node, true));
            for child in children {
                if !cache.entries.contains_key(child.values()) {
                    stack.push((child, false));
                }
            }
        }
    }
    Ok(cache.entries[t.values()].clone())
}

/// Number of reduced words (equivalently, efficient fillings) of a k-core.
pub fn count_reduced_words(diagram: &Diagram, k: usize, cache: &mut MemoCache) -> Result<BigUint> {
    if k == 1 {
        return Ok(BigUint::one());
    }
    let t = window_from_core(diagram, k)?;
    count_window(&t, cache)
}

/// `N(ē)`.
pub fn n_of_splitting(e: &SplittingType, cache: &mut MemoCache) -> Result<BigUint> {
    count_reduced_words(&staircase(e), e.k(), cache)
}

/// Every window reachable from `t` by removing descents, `t` included.
pub fn lower_interval(t: &TVector) -> std::collections::HashSet<TVector> {
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![t.clone()];
    seen.insert(t.clone());
    while let Some(node) = stack.pop() {
        for j in descents(&node) {
            let child = node.apply(j);
            if seen.insert(child.clone()) {
                stack.push(child);
            }
        }
    }
    seen
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    k: usize,
    entries: BTreeMap<String, String>,
}

pub fn cache_save(cache: &MemoCache, path: &Path) -> Result<()> {
    let entries = cache
        .entries
        .iter()
        .map(|(key, v)| {
            let key: Vec<String> = key.iter().map(i64::to_string).collect();
            (key.join(","), v.to_str_radix(10))
        })
        .collect();
    let file = CacheFile { version: CACHE_VERSION, k: cache.k, entries };
    let text = serde_json::to_string(&file).expect("cache serializes");
    fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Loads a cache written by [`cache_save`]. When `k` is given, the file
/// must be for that `k`.
pub fn cache_load(path: &Path, k: Option<usize>) -> Result<MemoCache> {
    let bad = |reason: String| Error::Cache { path: path.to_path_buf(), reason };
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let file: CacheFile = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    if file.version != CACHE_VERSION {
        return Err(bad(format!("version {} is not supported (expected {CACHE_VERSION})", file.version)));
    }
    if let Some(k) = k {
        if file.k != k {
            return Err(bad(format!("written for k = {}, requested k = {k}", file.k)));
        }
    }
    let mut cache = MemoCache::new(file.k);
    for (key, value) in file.entries {
        let parts = key
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad(format!("malformed key {key:?}")))?;
        if parts.len() != file.k || check_window(&parts).is_err() || parts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad(format!("key {key:?} is not a sorted window for k = {}", file.k)));
        }
        if value.is_empty() || !value.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad(format!("value for {key:?} is not a decimal integer")));
        }
        let n = BigUint::parse_bytes(value.as_bytes(), 10).expect("digits checked");
        cache.entries.insert(parts, n);
    }
    Ok(cache)
}
