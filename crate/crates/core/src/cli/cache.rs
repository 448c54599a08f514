//! JSON records keyed by a SHA-256 content hash.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone)]
pub struct ResultCache {
    dir: PathBuf,
}

impl ResultCache {
    pub fn new(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(ResultCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Hex digest of the compact JSON of `key`.
    pub fn key<K: Serialize>(key: &K) -> String {
        let bytes = serde_json::to_vec(key).expect("key serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<String> {
        fs::read_to_string(self.path(key)).ok()
    }

    /// Writes to a temporary file in the cache directory, then renames it
    /// over the final name, so readers never see a partial record.
    pub fn put(&self, key: &str, json: &str) -> io::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(json.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_stable_keys() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::new(dir.path().join("c")).unwrap();
        let k = ResultCache::key(&("apoly", "4 6 2"));
        assert_eq!(k, ResultCache::key(&("apoly", "4 6 2")));
        assert_ne!(k, ResultCache::key(&("apoly", "4 6 8 2")));
        assert_eq!(k.len(), 64);
        assert!(cache.get(&k).is_none());
        cache.put(&k, "{\"a\":1}").unwrap();
        assert_eq!(cache.get(&k).as_deref(), Some("{\"a\":1}"));
        let leftovers = fs::read_dir(cache.dir()).unwrap().count();
        assert_eq!(leftovers, 1);
    }
}
