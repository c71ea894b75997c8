//! Optional persistent memo cache for norm computations, keyed by the
//! canonical params/vector JSON. Version mismatches and corrupt files fall
//! back to cold computation with a warning. A deterministic 1-in-100 slice
//! of cache hits is recomputed and compared as a consistency spot check.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: Vec<CacheEntry>,
}

#[derive(Serialize, Deserialize, Clone)]
struct CacheEntry {
    params: String,
    vector: String,
    norm: String,
    cert_digest: String,
}

pub struct Cache {
    path: PathBuf,
    entries: HashMap<(String, String), (String, String)>,
    dirty: bool,
}

/// Stable 64-bit FNV-1a over a string, hex-encoded.
pub fn digest(s: &str) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

impl Cache {
    pub fn load(path: &Path) -> Cache {
        let entries = match std::fs::read_to_string(path) {
            Err(_) => HashMap::new(),
            Ok(text) => match serde_json::from_str::<CacheFile>(&text) {
                Ok(file) if file.version == CACHE_VERSION => file
                    .entries
                    .into_iter()
                    .map(|e| ((e.params, e.vector), (e.norm, e.cert_digest)))
                    .collect(),
                Ok(file) => {
                    eprintln!(
                        "warning: cache version {} != {}, starting cold",
                        file.version, CACHE_VERSION
                    );
                    HashMap::new()
                }
                Err(e) => {
                    eprintln!("warning: unreadable cache ({e}), starting cold");
                    HashMap::new()
                }
            },
        };
        Cache {
            path: path.to_path_buf(),
            entries,
            dirty: false,
        }
    }

    pub fn lookup(&self, params: &str, vector: &str) -> Option<(String, String)> {
        self.entries
            .get(&(params.to_string(), vector.to_string()))
            .cloned()
    }

    /// Whether this key falls into the deterministic spot-check slice.
    pub fn spot_check(params: &str, vector: &str) -> bool {
        let h = digest(&format!("{params}|{vector}"));
        u64::from_str_radix(&h, 16).unwrap().is_multiple_of(100)
    }

    pub fn insert(&mut self, params: String, vector: String, norm: String, cert_digest: String) {
        let prev = self.entries.insert((params, vector), (norm, cert_digest));
        if prev.is_none() {
            self.dirty = true;
        }
    }

    pub fn save(&self) -> std::io::Result<()> {
        if !self.dirty {
            return Ok(());
        }
        let mut entries: Vec<CacheEntry> = self
            .entries
            .iter()
            .map(|((p, v), (n, d))| CacheEntry {
                params: p.clone(),
                vector: v.clone(),
                norm: n.clone(),
                cert_digest: d.clone(),
            })
            .collect();
        entries.sort_by(|a, b| (&a.params, &a.vector).cmp(&(&b.params, &b.vector)));
        let file = CacheFile {
            version: CACHE_VERSION,
            entries,
        };
        std::fs::write(&self.path, serde_json::to_string_pretty(&file).unwrap())
    }
}
