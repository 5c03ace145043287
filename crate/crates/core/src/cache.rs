//! Process-wide memo tables, optionally persisted to `$KTRANS_CACHE_DIR`.
//!
//! The file holds a little-endian `u32` schema version followed by records,
//! each a little-endian `u32` byte length and a JSON payload.

use std::collections::HashMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hecke::{fstanley, Method};
use crate::rings::{parse_poly, TruncPoly};
use crate::weyl::{GroupType, SignedPermutation};

pub const SCHEMA_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "KTRANS_CACHE_DIR";
const FILE_NAME: &str = "ktrans-cache.bin";

type StanleyKey = (GroupType, SignedPermutation, u32, u32);

/// Grassmannian expansion stored as `(element, β-free coefficient, β power)`.
pub type ExpansionTerms = Vec<(SignedPermutation, u64, u32)>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Record {
    Stanley { ty: GroupType, w: SignedPermutation, n: u32, d: u32, poly: String },
    Expansion { ty: GroupType, w: SignedPermutation, terms: ExpansionTerms },
}

#[derive(Default)]
struct Store {
    stanley: HashMap<StanleyKey, TruncPoly>,
    expansions: HashMap<(GroupType, SignedPermutation), ExpansionTerms>,
}

fn store() -> &'static Mutex<Store> {
    static STORE: OnceLock<Mutex<Store>> = OnceLock::new();
    STORE.get_or_init(Default::default)
}

/// `F^X_w(z_1..z_n)` up to degree `d`, memoized.
pub fn stanley(ty: GroupType, w: &SignedPermutation, n: u32, d: u32) -> Result<TruncPoly> {
    let key = (ty, w.clone(), n, d);
    if let Some(p) = store().lock().unwrap().stanley.get(&key) {
        return Ok(p.clone());
    }
    let p = fstanley(ty, w, n, d, Method::Unimodal)?;
    store().lock().unwrap().stanley.insert(key, p.clone());
    Ok(p)
}

pub fn expansion(ty: GroupType, w: &SignedPermutation) -> Option<ExpansionTerms> {
    store().lock().unwrap().expansions.get(&(ty, w.clone())).cloned()
}

pub fn store_expansion(ty: GroupType, w: &SignedPermutation, terms: ExpansionTerms) {
    store().lock().unwrap().expansions.insert((ty, w.clone()), terms);
}

/// Drops every memoized entry.
pub fn clear() {
    let mut s = store().lock().unwrap();
    s.stanley.clear();
    s.expansions.clear();
}

pub fn records() -> Vec<Record> {
    let s = store().lock().unwrap();
    let mut out: Vec<Record> = s
        .stanley
        .iter()
        .map(|((ty, w, n, d), p)| Record::Stanley { ty: *ty, w: w.clone(), n: *n, d: *d, poly: p.to_string() })
        .collect();
    out.extend(
        s.expansions.iter().map(|((ty, w), t)| Record::Expansion { ty: *ty, w: w.clone(), terms: t.clone() }),
    );
    out.sort_by_key(|r| serde_json::to_string(r).unwrap_or_default());
    out
}

pub fn absorb(records: Vec<Record>) -> Result<()> {
    let mut s = store().lock().unwrap();
    for r in records {
        match r {
            Record::Stanley { ty, w, n, d, poly } => {
                let p = parse_poly(&poly)?.bounded(d);
                s.stanley.insert((ty, w, n, d), p);
            }
            Record::Expansion { ty, w, terms } => {
                s.expansions.insert((ty, w), terms);
            }
        }
    }
    Ok(())
}

fn io_err(e: io::Error) -> Error {
    Error::Cache(e.to_string())
}

pub fn write_records(out: &mut impl Write, records: &[Record]) -> Result<()> {
    out.write_all(&SCHEMA_VERSION.to_le_bytes()).map_err(io_err)?;
    for r in records {
        let bytes = serde_json::to_vec(r).map_err(|e| Error::Cache(e.to_string()))?;
        let len = u32::try_from(bytes.len()).map_err(|_| Error::Cache("record too large".into()))?;
        out.write_all(&len.to_le_bytes()).map_err(io_err)?;
        out.write_all(&bytes).map_err(io_err)?;
    }
    Ok(())
}

pub fn read_records(input: &mut impl Read) -> Result<Vec<Record>> {
    let mut word = [0u8; 4];
    input.read_exact(&mut word).map_err(io_err)?;
    let version = u32::from_le_bytes(word);
    if version != SCHEMA_VERSION {
        return Err(Error::Cache(format!("schema version {version}, expected {SCHEMA_VERSION}")));
    }
    let mut out = Vec::new();
    loop {
        match input.read_exact(&mut word) {
            Ok(()) => {}
            Err(e) if e.kind() == io::ErrorKind::UnexpectedEof => break,
            Err(e) => return Err(io_err(e)),
        }
        let mut buf = vec![0u8; u32::from_le_bytes(word) as usize];
        input.read_exact(&mut buf).map_err(io_err)?;
        out.push(serde_json::from_slice(&buf).map_err(|e| Error::Cache(e.to_string()))?);
    }
    Ok(out)
}

pub fn cache_file(dir: &Path) -> PathBuf {
    dir.join(FILE_NAME)
}

/// Loads the cache file in `dir` if present; returns the number of records.
pub fn load(dir: &Path) -> Result<usize> {
    let path = cache_file(dir);
    if !path.exists() {
        return Ok(0);
    }
    let mut f = fs::File::open(&path).map_err(io_err)?;
    let records = read_records(&mut f)?;
    let n = records.len();
    absorb(records)?;
    Ok(n)
}

/// Writes every memoized entry to the cache file in `dir`.
pub fn save(dir: &Path) -> Result<usize> {
    fs::create_dir_all(dir).map_err(io_err)?;
    let records = records();
    let tmp = dir.join(format!("{FILE_NAME}.tmp"));
    {
        let mut f = io::BufWriter::new(fs::File::create(&tmp).map_err(io_err)?);
        write_records(&mut f, &records)?;
        f.flush().map_err(io_err)?;
    }
    fs::rename(&tmp, cache_file(dir)).map_err(io_err)?;
    Ok(records.len())
}

pub fn env_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_round_trip() {
        let w: SignedPermutation = "-2,1".parse().unwrap();
        let recs = vec![
            Record::Stanley { ty: GroupType::B, w: w.clone(), n: 2, d: 3, poly: "2*z1 + b*z1^2".into() },
            Record::Expansion { ty: GroupType::C, w, terms: vec![("-2,1".parse().unwrap(), 1, 0)] },
        ];
        let mut buf = Vec::new();
        write_records(&mut buf, &recs).unwrap();
        assert_eq!(&buf[..4], &SCHEMA_VERSION.to_le_bytes());
        assert_eq!(read_records(&mut buf.as_slice()).unwrap(), recs);
        let mut bad = buf.clone();
        bad[0] = 99;
        assert!(read_records(&mut bad.as_slice()).is_err());
        let truncated = &buf[..buf.len() - 2];
        assert!(read_records(&mut &truncated[..]).is_err());
    }
}
