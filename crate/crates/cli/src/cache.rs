//! On-disk memo of divisor tables.
//!
//! Each table lives in its own file holding one JSON line:
//! `{"version":…,"key":{…},"checksum":"<sha256 of payload>","payload":{…}}`.
//! Entries with another version are recomputed and overwritten; entries that
//! fail to parse or whose checksum or key disagree are moved aside with a
//! `.corrupt` suffix and recomputed.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use taurep::identities::{TableCache, TableProvider};
use taurep::{divisor_table, DirichletCharacter, DivisorTable, ParityMode};

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableKey {
    pub l: u32,
    pub phi: String,
    pub psi: String,
    pub field: u64,
}

impl TableKey {
    fn of(table: &DivisorTable) -> Self {
        TableKey {
            l: table.l,
            phi: table.phi.clone(),
            psi: table.psi.clone(),
            field: table.field,
        }
    }

    fn file_name(&self) -> String {
        format!(
            "sigma_l{}_{}_{}_m{}.jsonl",
            self.l, self.phi, self.psi, self.field
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: u32,
    pub key: TableKey,
    pub checksum: String,
    pub payload: serde_json::Value,
}

fn checksum(payload: &serde_json::Value) -> String {
    hex::encode(Sha256::digest(payload.to_string().as_bytes()))
}

impl CacheEntry {
    pub fn new(table: &DivisorTable) -> Self {
        let payload = serde_json::to_value(table).expect("tables serialize");
        CacheEntry {
            version: CACHE_VERSION,
            key: TableKey::of(table),
            checksum: checksum(&payload),
            payload,
        }
    }

    pub fn to_line(&self) -> String {
        let mut line = serde_json::to_string(self).expect("entries serialize");
        line.push('\n');
        line
    }
}

/// Result of reading one cache file.
#[derive(Debug)]
pub enum Lookup {
    Hit(DivisorTable),
    Missing,
    /// Written by another schema version.
    Stale(u32),
    Corrupt(String),
}

/// Parses and validates the text of a cache file against `key`.
pub fn decode(text: &str, key: &TableKey) -> Lookup {
    let Some(line) = text.lines().find(|l| !l.trim().is_empty()) else {
        return Lookup::Corrupt("empty file".into());
    };
    let value: serde_json::Value = match serde_json::from_str(line) {
        Ok(v) => v,
        Err(e) => return Lookup::Corrupt(format!("unparseable entry: {e}")),
    };
    match value.get("version").and_then(|v| v.as_u64()) {
        Some(v) if v == CACHE_VERSION as u64 => {}
        Some(v) => return Lookup::Stale(v as u32),
        None => return Lookup::Corrupt("missing version".into()),
    }
    let entry: CacheEntry = match serde_json::from_value(value) {
        Ok(e) => e,
        Err(e) => return Lookup::Corrupt(format!("malformed entry: {e}")),
    };
    if &entry.key != key {
        return Lookup::Corrupt("key does not match file".into());
    }
    if checksum(&entry.payload) != entry.checksum {
        return Lookup::Corrupt("checksum mismatch".into());
    }
    let table: DivisorTable = match serde_json::from_value(entry.payload) {
        Ok(t) => t,
        Err(e) => return Lookup::Corrupt(format!("malformed payload: {e}")),
    };
    if TableKey::of(&table) != *key {
        return Lookup::Corrupt("payload does not match key".into());
    }
    Lookup::Hit(table)
}

/// Table provider backed by a directory, with an in-memory layer in front.
/// Any I/O failure disables the directory for the rest of the run.
pub struct DiskCache {
    dir: Mutex<Option<PathBuf>>,
    memory: TableCache,
    log: Mutex<Vec<String>>,
}

impl DiskCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        let cache = DiskCache {
            dir: Mutex::new(None),
            memory: TableCache::new(),
            log: Mutex::new(Vec::new()),
        };
        if let Some(dir) = dir {
            match fs::create_dir_all(&dir) {
                Ok(()) => *cache.dir.lock().unwrap() = Some(dir),
                Err(e) => cache.note(format!(
                    "warning: cache directory {} unusable ({e}); computing in memory",
                    dir.display()
                )),
            }
        }
        cache
    }

    /// Messages about rejected entries and I/O trouble, in order.
    pub fn take_log(&self) -> Vec<String> {
        std::mem::take(&mut *self.log.lock().unwrap())
    }

    fn note(&self, msg: String) {
        self.log.lock().unwrap().push(msg);
    }

    fn disable(&self, err: io::Error) {
        if let Some(dir) = self.dir.lock().unwrap().take() {
            self.note(format!(
                "warning: cache directory {} unusable ({err}); computing in memory",
                dir.display()
            ));
        }
    }

    fn path(&self, key: &TableKey) -> Option<PathBuf> {
        self.dir
            .lock()
            .unwrap()
            .as_ref()
            .map(|d| d.join(key.file_name()))
    }

    fn read(&self, path: &Path, key: &TableKey) -> Lookup {
        match fs::read(path) {
            Ok(bytes) => match String::from_utf8(bytes) {
                Ok(text) => decode(&text, key),
                Err(_) => Lookup::Corrupt("not UTF-8".into()),
            },
            Err(e) if e.kind() == io::ErrorKind::NotFound => Lookup::Missing,
            Err(e) => {
                self.disable(e);
                Lookup::Missing
            }
        }
    }

    fn write(&self, path: &Path, table: &DivisorTable) {
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let result =
            fs::write(&tmp, CacheEntry::new(table).to_line()).and_then(|()| fs::rename(&tmp, path));
        if let Err(e) = result {
            let _ = fs::remove_file(&tmp);
            self.disable(e);
        }
    }

    fn quarantine(&self, path: &Path, reason: &str) {
        let target = path.with_extension("jsonl.corrupt");
        self.note(format!(
            "cache: {} rejected ({reason}); recomputing",
            path.display()
        ));
        if let Err(e) = fs::rename(path, &target) {
            self.disable(e);
        }
    }
}

impl TableProvider for DiskCache {
    fn table(
        &self,
        l: u32,
        phi: &DirichletCharacter,
        psi: &DirichletCharacter,
        nmax: u64,
        field: u64,
    ) -> taurep::Result<DivisorTable> {
        let key = TableKey {
            l,
            phi: phi.label_string(),
            psi: psi.label_string(),
            field,
        };
        if let Some(t) = self.memory.get(l, &key.phi, &key.psi, field) {
            if t.nmax() >= nmax {
                return Ok(t);
            }
        }
        if let Some(path) = self.path(&key) {
            match self.read(&path, &key) {
                Lookup::Hit(t) if t.nmax() >= nmax => {
                    self.memory.insert(t.clone());
                    return Ok(t);
                }
                Lookup::Hit(_) | Lookup::Missing => {}
                Lookup::Stale(v) => self.note(format!(
                    "cache: {} has version {v}, expected {CACHE_VERSION}; recomputing",
                    path.display()
                )),
                Lookup::Corrupt(reason) => self.quarantine(&path, &reason),
            }
        }
        let table = divisor_table(l, phi, psi, nmax, field, ParityMode::Strict)?;
        if let Some(path) = self.path(&key) {
            self.write(&path, &table);
        }
        self.memory.insert(table.clone());
        Ok(table)
    }
}
