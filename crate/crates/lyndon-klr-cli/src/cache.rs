//! On-disk cache of computed tables, one JSON file per (series, rank, order).
//!
//! Each file holds a payload and the sha256 of its serialization. A file
//! whose stamp does not match is ignored and rewritten. Writes go to a
//! temporary file that is then renamed over the target.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const ENV_VAR: &str = "LYNDON_KLR_CACHE";

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RootVectorEntry {
    pub text: String,
    pub records: Vec<String>,
    pub kappa: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Payload {
    pub key: String,
    /// `LyndonTable::to_lines`, one root and its word per line.
    pub table: Vec<String>,
    pub root_vectors: BTreeMap<String, RootVectorEntry>,
}

#[derive(Serialize, Deserialize)]
struct Stamped {
    sha256: String,
    payload: Payload,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn stamp(p: &Payload) -> String {
    digest(serde_json::to_string(p).expect("payload serializes").as_bytes())
}

/// Where cache files live, or nowhere when caching is off.
#[derive(Clone, Debug)]
pub struct TableCache {
    dir: Option<PathBuf>,
}

impl TableCache {
    pub fn disabled() -> Self {
        TableCache { dir: None }
    }

    /// The flag wins over the environment, which wins over the user cache
    /// directory.
    pub fn locate(flag: Option<PathBuf>) -> Self {
        let dir = flag
            .or_else(|| std::env::var_os(ENV_VAR).map(PathBuf::from))
            .or_else(|| std::env::var_os("XDG_CACHE_HOME").map(|d| PathBuf::from(d).join("lyndon-klr")))
            .or_else(|| std::env::var_os("HOME").map(|d| PathBuf::from(d).join(".cache").join("lyndon-klr")))
            .unwrap_or_else(|| std::env::temp_dir().join("lyndon-klr"));
        TableCache { dir: Some(dir) }
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// The cached payload for `key`, if present and intact.
    pub fn load(&self, key: &str) -> Option<Payload> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        let s: Stamped = serde_json::from_str(&text).ok()?;
        (s.payload.key == key && stamp(&s.payload) == s.sha256).then_some(s.payload)
    }

    pub fn store(&self, p: &Payload) -> std::io::Result<()> {
        let Some(path) = self.path(&p.key) else { return Ok(()) };
        let s = Stamped { sha256: stamp(p), payload: p.clone() };
        let text = serde_json::to_string_pretty(&s).expect("payload serializes");
        write_atomic(&path, text.as_bytes())
    }
}

/// Writes `bytes` to a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache { dir: Some(dir.path().to_path_buf()) };
        let p = Payload { key: "A2-right".into(), table: vec!["1,0 0".into()], root_vectors: BTreeMap::new() };
        cache.store(&p).unwrap();
        assert_eq!(cache.load("A2-right"), Some(p));
        let path = dir.path().join("A2-right.json");
        let text = fs::read_to_string(&path).unwrap().replace("1,0 0", "1,0 1");
        fs::write(&path, text).unwrap();
        assert_eq!(cache.load("A2-right"), None);
        assert!(TableCache::disabled().load("A2-right").is_none());
    }
}
