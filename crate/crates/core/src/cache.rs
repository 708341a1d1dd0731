//! Durable, mergeable store of computed invariants.
//!
//! File grammar, one entry per line, UTF-8, LF only:
//!
//! ```text
//! line := key "\t" integer "/" positive-integer "\n"
//! ```
//!
//! Keys follow the canonical key grammar and files are sorted ascending by
//! key bytes on save, so saves are diffable and byte-reproducible.

use crate::key::InvariantKey;
use crate::rational::Rat;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum CacheError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("conflicting values for key `{key}`: {old} vs {new}")]
    Conflict { key: String, old: Rat, new: Rat },
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Idempotent map from canonical key strings to exact values. Inserting an
/// existing key with a different value is a hard error: it means two
/// computations of the same invariant disagreed.
#[derive(Default, Clone, Debug)]
pub struct CacheStore {
    entries: BTreeMap<String, Rat>,
}

impl CacheStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&Rat> {
        self.entries.get(key)
    }

    /// Idempotent insert with the conflict rule.
    pub fn put(&mut self, key: &str, value: Rat) -> Result<(), CacheError> {
        match self.entries.get(key) {
            Some(old) if *old != value => Err(CacheError::Conflict {
                key: key.to_string(),
                old: old.clone(),
                new: value,
            }),
            Some(_) => Ok(()),
            None => {
                self.entries.insert(key.to_string(), value);
                Ok(())
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rat)> {
        self.entries.iter()
    }

    /// Union of two stores; equal duplicates deduplicate, unequal ones are
    /// a conflict error.
    pub fn merge(mut a: CacheStore, b: CacheStore) -> Result<CacheStore, CacheError> {
        for (k, v) in b.entries {
            a.put(&k, v)?;
        }
        Ok(a)
    }

    /// Sorted plain-text image of the store.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for (k, v) in &self.entries {
            out.extend_from_slice(k.as_bytes());
            out.push(b'\t');
            out.extend_from_slice(v.cache_str().as_bytes());
            out.push(b'\n');
        }
        out
    }

    pub fn from_bytes(data: &[u8]) -> Result<Self, CacheError> {
        let text = std::str::from_utf8(data).map_err(|e| CacheError::Malformed {
            line: 0,
            msg: format!("not UTF-8: {e}"),
        })?;
        let mut store = CacheStore::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('\t').ok_or_else(|| CacheError::Malformed {
                line: lineno,
                msg: "missing TAB separator".into(),
            })?;
            let parsed = InvariantKey::parse(key).map_err(|e| CacheError::Malformed {
                line: lineno,
                msg: format!("bad key: {e}"),
            })?;
            // byte-exact canonical rendering, so lookups by serialization hit
            if parsed.canonicalize().serialize() != key {
                return Err(CacheError::Malformed {
                    line: lineno,
                    msg: format!("key is not canonical: {key}"),
                });
            }
            let rat = Rat::parse_cache(value).map_err(|msg| CacheError::Malformed {
                line: lineno,
                msg,
            })?;
            store.put(key, rat)?;
        }
        Ok(store)
    }

    pub fn load(path: &Path) -> Result<Self, CacheError> {
        let data = std::fs::read(path).map_err(|source| CacheError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_bytes(&data)
    }

    /// Atomic save: write a sibling temp file, then rename over the target.
    pub fn save(&self, path: &Path) -> Result<(), CacheError> {
        let io_err = |source| CacheError::Io {
            path: path.display().to_string(),
            source,
        };
        let tmp = path.with_extension("tmp");
        {
            let mut f = std::fs::File::create(&tmp).map_err(io_err)?;
            f.write_all(&self.to_bytes()).map_err(io_err)?;
            f.sync_all().map_err(io_err)?;
        }
        std::fs::rename(&tmp, path).map_err(io_err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_empty_store() {
        let s = CacheStore::from_bytes(b"").unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn single_line() {
        let s = CacheStore::from_bytes(b"A;N=2;d=1;ins=2.0,2.0\t1/1\n").unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.get("A;N=2;d=1;ins=2.0,2.0"), Some(&Rat::one()));
    }

    #[test]
    fn missing_value_is_error() {
        let err = CacheStore::from_bytes(b"A;N=2;d=1\n").unwrap_err();
        match err {
            CacheError::Malformed { line, .. } => assert_eq!(line, 1),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn put_conflict() {
        let mut s = CacheStore::new();
        s.put("A;N=2;d=1;ins=2.0,2.0", Rat::one()).unwrap();
        s.put("A;N=2;d=1;ins=2.0,2.0", Rat::one()).unwrap();
        assert!(s.put("A;N=2;d=1;ins=2.0,2.0", Rat::from(2i64)).is_err());
    }

    #[test]
    fn merge_disjoint_adds_sizes() {
        let mut a = CacheStore::new();
        a.put("A;N=2;d=1;ins=2.0,2.0", Rat::one()).unwrap();
        let mut b = CacheStore::new();
        b.put("A;N=2;d=3;ins=2.0,2.0,2.0,2.0,2.0,2.0,2.0,2.0", Rat::from(12i64))
            .unwrap();
        let m = CacheStore::merge(a, b).unwrap();
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn merge_conflict_detected() {
        let mut a = CacheStore::new();
        a.put("A;N=2;d=1;ins=2.0,2.0", Rat::one()).unwrap();
        let mut b = CacheStore::new();
        b.put("A;N=2;d=1;ins=2.0,2.0", Rat::from(7i64)).unwrap();
        assert!(CacheStore::merge(a, b).is_err());
    }

    #[test]
    fn save_load_round_trip_bytes() {
        let mut s = CacheStore::new();
        s.put("A;N=2;d=1;ins=2.0,2.0", Rat::one()).unwrap();
        s.put("A;N=2;d=1;ins=2.1,1.0", Rat::new(1, 3)).unwrap();
        let bytes = s.to_bytes();
        let back = CacheStore::from_bytes(&bytes).unwrap();
        assert_eq!(back.to_bytes(), bytes);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.tsv");
        s.save(&path).unwrap();
        let loaded = CacheStore::load(&path).unwrap();
        assert_eq!(loaded.to_bytes(), bytes);
    }

    #[test]
    fn rejects_noncanonical_keys() {
        let err = CacheStore::from_bytes(b"A;N=2;d=1;ins=1.0,2.0\t1/1\n").unwrap_err();
        assert!(matches!(err, CacheError::Malformed { line: 1, .. }));
    }
}
