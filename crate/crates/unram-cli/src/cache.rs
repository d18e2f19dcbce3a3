//! Kostka-Foulkes cache file: the charge enumeration is the cost center
//! of the exact moment routes, and its results depend only on the pair of
//! partitions, never on the prime, so a single cache serves everything.
//!
//! Format: versioned JSON with a checksum over the canonical entry
//! serialization. Corrupted or truncated files are rejected whole, never
//! partially loaded; a version mismatch is a refusal (no migration).

use num::bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use unram::symfunc::{kostka_foulkes, Partition, QPolynomial};

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    sha256: String,
    /// "l1,l2|m1,m2,m3" -> integer coefficients, lowest degree first
    entries: BTreeMap<String, Vec<i64>>,
}

#[derive(Debug)]
pub enum CacheError {
    Io(std::io::Error),
    Parse(String),
    VersionMismatch { found: u32, expected: u32 },
    ChecksumMismatch { found: String, expected: String },
}

impl std::fmt::Display for CacheError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CacheError::Io(e) => write!(f, "cache io: {e}"),
            CacheError::Parse(e) => write!(f, "cache parse: {e}"),
            CacheError::VersionMismatch { found, expected } => {
                write!(f, "cache version {found} unsupported (expected {expected}); refusing")
            }
            CacheError::ChecksumMismatch { found, expected } => {
                write!(f, "cache checksum {found} != {expected}; file rejected")
            }
        }
    }
}

impl std::error::Error for CacheError {}

impl From<std::io::Error> for CacheError {
    fn from(e: std::io::Error) -> Self {
        CacheError::Io(e)
    }
}

/// In-memory cache with dirty tracking.
#[derive(Debug, Default)]
pub struct KfCache {
    entries: BTreeMap<String, Vec<i64>>,
    dirty: bool,
}

fn key_of(lambda: &Partition, mu: &Partition) -> String {
    let fmt = |p: &Partition| {
        p.parts()
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!("{}|{}", fmt(lambda), fmt(mu))
}

fn checksum(entries: &BTreeMap<String, Vec<i64>>) -> String {
    let canonical = serde_json::to_string(entries).expect("serializable");
    let mut h = Sha256::new();
    h.update(canonical.as_bytes());
    format!("{:x}", h.finalize())
}

impl KfCache {
    pub fn empty() -> Self {
        KfCache::default()
    }

    #[allow(dead_code)]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[allow(dead_code)]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Cached Kostka-Foulkes lookup; computes and records on miss.
    pub fn kostka_foulkes(&mut self, lambda: &Partition, mu: &Partition) -> QPolynomial {
        let key = key_of(lambda, mu);
        if let Some(coeffs) = self.entries.get(&key) {
            return QPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect());
        }
        let kf = kostka_foulkes(lambda, mu).polynomial;
        let coeffs: Vec<i64> = kf
            .coeffs()
            .iter()
            .map(|c| {
                use num::traits::ToPrimitive;
                c.to_i64().expect("Kostka-Foulkes coefficient fits i64")
            })
            .collect();
        self.entries.insert(key, coeffs);
        self.dirty = true;
        kf
    }

    pub fn dirty(&self) -> bool {
        self.dirty
    }

    pub fn load(path: &Path) -> Result<Self, CacheError> {
        let text = std::fs::read_to_string(path)?;
        let file: CacheFile =
            serde_json::from_str(&text).map_err(|e| CacheError::Parse(e.to_string()))?;
        if file.version != CACHE_VERSION {
            return Err(CacheError::VersionMismatch {
                found: file.version,
                expected: CACHE_VERSION,
            });
        }
        let expected = checksum(&file.entries);
        if file.sha256 != expected {
            return Err(CacheError::ChecksumMismatch {
                found: file.sha256,
                expected,
            });
        }
        Ok(KfCache {
            entries: file.entries,
            dirty: false,
        })
    }

    /// Atomic save: write to a temporary file in the target directory and
    /// rename over the destination.
    pub fn save(&self, path: &Path) -> Result<(), CacheError> {
        let file = CacheFile {
            version: CACHE_VERSION,
            sha256: checksum(&self.entries),
            entries: self.entries.clone(),
        };
        let text = serde_json::to_string_pretty(&file).expect("serializable");
        let dir = path.parent().unwrap_or_else(|| Path::new("."));
        std::fs::create_dir_all(dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.persist(path).map_err(|e| CacheError::Io(e.error))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("kf.json");
        let mut cache = KfCache::empty();
        let kf = cache.kostka_foulkes(&pt(&[2, 1]), &pt(&[1, 1, 1]));
        assert_eq!(format!("{kf}"), "q + q^2");
        cache.save(&path).unwrap();
        let mut reloaded = KfCache::load(&path).unwrap();
        assert_eq!(reloaded.len(), 1);
        // reloaded entries reproduce the computation exactly
        let kf2 = reloaded.kostka_foulkes(&pt(&[2, 1]), &pt(&[1, 1, 1]));
        assert_eq!(kf, kf2);
        assert!(!reloaded.dirty());
    }

    #[test]
    fn empty_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("kf.json");
        KfCache::empty().save(&path).unwrap();
        let c = KfCache::load(&path).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn truncated_file_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("kf.json");
        let mut cache = KfCache::empty();
        cache.kostka_foulkes(&pt(&[2]), &pt(&[1, 1]));
        cache.save(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, &text[..text.len() - 8]).unwrap();
        assert!(matches!(KfCache::load(&path), Err(CacheError::Parse(_))));
    }

    #[test]
    fn tampered_checksum_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("kf.json");
        let mut cache = KfCache::empty();
        cache.kostka_foulkes(&pt(&[2]), &pt(&[1, 1]));
        cache.save(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        // corrupt one hex digit of the stored checksum
        let tampered = if text.contains("\"sha256\": \"a") {
            text.replacen("\"sha256\": \"a", "\"sha256\": \"b", 1)
        } else {
            text.replacen("\"sha256\": \"", "\"sha256\": \"a", 1)
        };
        std::fs::write(&path, tampered).unwrap();
        assert!(matches!(
            KfCache::load(&path),
            Err(CacheError::ChecksumMismatch { .. })
        ));
    }

    #[test]
    fn version_mismatch_refused() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("kf.json");
        KfCache::empty().save(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, text.replace("\"version\": 1", "\"version\": 2")).unwrap();
        assert!(matches!(
            KfCache::load(&path),
            Err(CacheError::VersionMismatch { .. })
        ));
    }
}
