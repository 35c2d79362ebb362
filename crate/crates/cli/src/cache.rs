//! On-disk JSON cache of characteristic polynomial tables, one file per type and
//! format version.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use lietype_core::cyclotomic::totient;
use lietype_core::{parse_type, CharPolyTable, CycloProduct, SemisimpleType, WeylError};

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache file {path}: {certificate}")]
    CacheInvalid { path: PathBuf, certificate: String },
    #[error("cache file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    exps: BTreeMap<String, u32>,
    count: String,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    type_label: String,
    group_order: String,
    entries: Vec<CacheEntry>,
}

pub fn cache_path(type_label: &SemisimpleType, dir: &Path) -> PathBuf {
    dir.join(format!("{type_label}.v{CACHE_VERSION}.json"))
}

fn io_error(path: &Path) -> impl FnOnce(io::Error) -> CacheError + '_ {
    move |source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes the table to a temporary file in `dir` and renames it into place.
pub fn cache_store(table: &CharPolyTable, dir: &Path) -> Result<PathBuf, CacheError> {
    fs::create_dir_all(dir).map_err(io_error(dir))?;
    let path = cache_path(table.type_label(), dir);
    let file = CacheFile {
        version: CACHE_VERSION,
        type_label: table.type_label().to_string(),
        group_order: table.group_order().to_string(),
        entries: table
            .entries()
            .iter()
            .map(|(p, c)| CacheEntry {
                exps: p.exponents().iter().map(|(d, t)| (d.to_string(), *t)).collect(),
                count: c.to_string(),
            })
            .collect(),
    };
    let json = serde_json::to_vec(&file).expect("cache file serializes");
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_error(dir))?;
    tmp.write_all(&json).map_err(io_error(&path))?;
    tmp.persist(&path).map_err(|e| CacheError::Io {
        path: path.clone(),
        source: e.error,
    })?;
    Ok(path)
}

/// Reads and re-validates a cached table. `Ok(None)` if no file exists.
pub fn cache_load(type_label: &SemisimpleType, dir: &Path) -> Result<Option<CharPolyTable>, CacheError> {
    let path = cache_path(type_label, dir);
    let bytes = match fs::read(&path) {
        Ok(b) => b,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(io_error(&path)(e)),
    };
    let invalid = |certificate: String| CacheError::CacheInvalid {
        path: path.clone(),
        certificate,
    };
    let file: CacheFile = serde_json::from_slice(&bytes).map_err(|e| invalid(format!("malformed JSON: {e}")))?;
    if file.version != CACHE_VERSION {
        return Err(invalid(format!("version {} (expected {CACHE_VERSION})", file.version)));
    }
    let label = parse_type(&file.type_label).map_err(|e| invalid(format!("type label: {e}")))?;
    if label != *type_label {
        return Err(invalid(format!("type label {label} (expected {type_label})")));
    }
    let group_order: BigUint = file
        .group_order
        .parse()
        .map_err(|_| invalid(format!("group_order {:?} is not a decimal integer", file.group_order)))?;
    let rank = u64::from(label.rank());
    let mut entries = BTreeMap::new();
    for entry in &file.entries {
        let mut pairs = Vec::new();
        for (d, t) in &entry.exps {
            let d: u32 = d
                .parse()
                .ok()
                .filter(|&d| d > 0)
                .ok_or_else(|| invalid(format!("cyclotomic index {d:?}")))?;
            pairs.push((d, *t));
        }
        let degree: u64 = pairs.iter().map(|&(d, t)| u64::from(t) * totient(u64::from(d))).sum();
        if degree != rank {
            return Err(invalid(format!("entry degree: Σ t·φ(d) = {degree}, rank is {rank}")));
        }
        let poly = CycloProduct::from_pairs(pairs).map_err(|e| invalid(e.to_string()))?;
        let count: BigUint = entry
            .count
            .parse()
            .map_err(|_| invalid(format!("count {:?} is not a decimal integer", entry.count)))?;
        if entries.insert(poly, count).is_some() {
            return Err(invalid("duplicate entry".to_string()));
        }
    }
    let sum: BigUint = entries.values().sum();
    if sum != group_order {
        return Err(invalid(format!("count sum: {sum} != group_order {group_order}")));
    }
    CharPolyTable::new(label, entries).map_err(|e| match e {
        WeylError::Certificate(c) => invalid(c),
        other => invalid(other.to_string()),
    })
    .map(Some)
}
