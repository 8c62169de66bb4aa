//! Append-only on-disk store of evaluated length cells.
//!
//! Each record is one line, `fingerprint \t kind \t coords \t value \t sha256`,
//! the checksum covering the first four fields. Records that fail to parse
//! or whose checksum does not match are skipped and counted. Appends from
//! one process are serialized by a mutex; nothing guards against two
//! processes writing the same file.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, RwLock};

use mixmult_core::graded::CellStore;
use mixmult_core::FunctionKind;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

const HEADER: &str = "# mixmult-cache v1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

type Key = (String, FunctionKind, Vec<u64>);

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoreSummary {
    pub path: String,
    pub loaded: u64,
    pub corrupt: u64,
    pub appended: u64,
}

pub struct DiskCache {
    path: PathBuf,
    entries: RwLock<HashMap<Key, u64>>,
    file: Mutex<File>,
    loaded: u64,
    corrupt: u64,
    appended: AtomicU64,
}

fn kind_from_name(s: &str) -> Option<FunctionKind> {
    [FunctionKind::Mixed, FunctionKind::BuchsbaumRim, FunctionKind::KirbyRees]
        .into_iter()
        .find(|k| k.name() == s)
}

fn checksum(body: &str) -> String {
    format!("{:x}", Sha256::digest(body.as_bytes()))
}

fn body(fingerprint: &str, kind: FunctionKind, coords: &[u64], value: u64) -> String {
    let c: Vec<String> = coords.iter().map(|v| v.to_string()).collect();
    format!("{fingerprint}\t{}\t{}\t{value}", kind.name(), c.join(","))
}

fn parse_record(line: &str) -> Option<(Key, u64)> {
    let (body, sum) = line.rsplit_once('\t')?;
    if checksum(body) != sum {
        return None;
    }
    let mut parts = body.split('\t');
    let fp = parts.next()?.to_string();
    let kind = kind_from_name(parts.next()?)?;
    let coords_text = parts.next()?;
    let coords = if coords_text.is_empty() {
        Vec::new()
    } else {
        coords_text
            .split(',')
            .map(|v| v.parse().ok())
            .collect::<Option<Vec<u64>>>()?
    };
    let value = parts.next()?.parse().ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some(((fp, kind, coords), value))
}

impl DiskCache {
    /// Loads every valid record and opens the file for appending, creating it if needed.
    pub fn open(path: impl AsRef<Path>) -> Result<DiskCache, CacheError> {
        let path = path.as_ref().to_path_buf();
        let io = |source| CacheError::Io {
            path: path.clone(),
            source,
        };
        let mut entries = HashMap::new();
        let (mut loaded, mut corrupt) = (0, 0);
        let exists = path.exists();
        if exists {
            let reader = BufReader::new(File::open(&path).map_err(io)?);
            for line in reader.lines() {
                let line = line.map_err(io)?;
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                match parse_record(&line) {
                    Some((key, v)) => {
                        entries.insert(key, v);
                        loaded += 1;
                    }
                    None => corrupt += 1,
                }
            }
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(io)?;
        if !exists {
            writeln!(file, "{HEADER}").map_err(io)?;
        }
        Ok(DiskCache {
            path,
            entries: RwLock::new(entries),
            file: Mutex::new(file),
            loaded,
            corrupt,
            appended: AtomicU64::new(0),
        })
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn summary(&self) -> StoreSummary {
        StoreSummary {
            path: self.path.display().to_string(),
            loaded: self.loaded,
            corrupt: self.corrupt,
            appended: self.appended.load(Ordering::Relaxed),
        }
    }
}

impl CellStore for DiskCache {
    fn get(&self, fingerprint: &str, kind: FunctionKind, coords: &[u64]) -> Option<u64> {
        self.entries
            .read()
            .unwrap()
            .get(&(fingerprint.to_string(), kind, coords.to_vec()))
            .copied()
    }

    fn put(&self, fingerprint: &str, kind: FunctionKind, coords: &[u64], value: u64) {
        let key = (fingerprint.to_string(), kind, coords.to_vec());
        {
            let mut entries = self.entries.write().unwrap();
            if entries.get(&key) == Some(&value) {
                return;
            }
            entries.insert(key, value);
        }
        let b = body(fingerprint, kind, coords, value);
        let line = format!("{b}\t{}\n", checksum(&b));
        let mut file = self.file.lock().unwrap();
        // A failed append only costs a recomputation next time.
        if file.write_all(line.as_bytes()).is_ok() {
            self.appended.fetch_add(1, Ordering::Relaxed);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_survive_reopen_and_corruption_is_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cells");
        {
            let c = DiskCache::open(&path).unwrap();
            c.put("fp", FunctionKind::Mixed, &[1, 2, 3], 7);
            c.put("fp", FunctionKind::Mixed, &[1, 2, 3], 7);
            c.put("fp", FunctionKind::BuchsbaumRim, &[0, 0], 0);
            assert_eq!(c.summary().appended, 2);
        }
        let mut text = std::fs::read_to_string(&path).unwrap();
        text.push_str("fp\tmixed\t1,1,1\t5\tdeadbeef\n");
        text.push_str("garbage\n");
        std::fs::write(&path, text).unwrap();
        let c = DiskCache::open(&path).unwrap();
        assert_eq!(c.get("fp", FunctionKind::Mixed, &[1, 2, 3]), Some(7));
        assert_eq!(c.get("fp", FunctionKind::Mixed, &[1, 1, 1]), None);
        assert_eq!((c.summary().loaded, c.summary().corrupt), (2, 2));
    }
}
