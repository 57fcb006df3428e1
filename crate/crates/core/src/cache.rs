//! On-disk character table cache.
//!
//! A cached table stores class representatives and character values in the reduced power basis.
//! Loading re-enumerates the group, checks the class data matches, and re-verifies orthogonality
//! before the table is used. Files carry a schema version, a hash of the table engine sources and a
//! sha256 over their own canonical serialization.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::chartab::{CharacterTable, TableError};
use crate::classes::{ClassFunction, Classes};
use crate::cyclo::Cyclo;
use crate::groups::{enumerate, GroupError, GroupSpec};
use crate::Rational;

pub const SCHEMA_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "CCLAB_CACHE_DIR";

static ENGINE_HASH: Lazy<String> = Lazy::new(|| {
    let mut h = Sha256::new();
    for src in [
        include_str!("chartab.rs"),
        include_str!("classes.rs"),
        include_str!("cyclo.rs"),
        include_str!("groups.rs"),
        include_str!("field.rs"),
        include_str!("matrix.rs"),
    ] {
        h.update(src.as_bytes());
    }
    hex::encode(h.finalize())
});

/// sha256 of the sources the table engine is built from.
pub fn engine_hash() -> &'static str {
    &ENGINE_HASH
}

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed cache file: {0}")]
    Format(#[from] serde_json::Error),
    #[error("schema version {found}, expected {SCHEMA_VERSION}")]
    Schema { found: u32 },
    #[error("table engine changed since the cache was written")]
    Engine,
    #[error("content hash mismatch")]
    Hash,
    #[error("cached {0} does not match the enumerated group")]
    Mismatch(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedValue {
    pub e: u32,
    /// (k, numerator, denominator) for the coefficient of zeta_e^k.
    pub terms: Vec<(u32, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedTable {
    pub schema: u32,
    pub engine: String,
    pub spec: String,
    pub order: usize,
    pub reps: Vec<u32>,
    pub sizes: Vec<usize>,
    pub characters: Vec<Vec<CachedValue>>,
    #[serde(default)]
    pub hash: String,
}

fn encode(v: &Cyclo) -> CachedValue {
    let den = v.denominator();
    let terms = v
        .numerators()
        .iter()
        .enumerate()
        .filter(|(_, &n)| n != 0)
        .map(|(k, &n)| {
            let r = Rational::new(n, den);
            (k as u32, r.numer().to_string(), r.denom().to_string())
        })
        .collect();
    CachedValue { e: v.order(), terms }
}

fn decode(v: &CachedValue) -> Result<Cyclo, CacheError> {
    let mut out = Cyclo::zero();
    for (k, n, d) in &v.terms {
        let n: i128 = n.parse().map_err(|_| CacheError::Mismatch(format!("numerator {n}")))?;
        let d: i128 = d.parse().map_err(|_| CacheError::Mismatch(format!("denominator {d}")))?;
        if d == 0 || v.e == 0 {
            return Err(CacheError::Mismatch("zero denominator or order".into()));
        }
        out = &out + &Cyclo::root(v.e, *k as i64).scale(&Rational::new(n, d));
    }
    Ok(out)
}

impl CachedTable {
    pub fn from_table(table: &CharacterTable) -> CachedTable {
        let c = table.classes();
        let spec = table.group().spec().map(|s| s.to_string()).unwrap_or_else(|| table.group().label().to_string());
        let mut out = CachedTable {
            schema: SCHEMA_VERSION,
            engine: engine_hash().to_string(),
            spec,
            order: c.order(),
            reps: (0..c.len()).map(|k| c.rep(k)).collect(),
            sizes: c.sizes().to_vec(),
            characters: table.characters().iter().map(|chi| chi.values.iter().map(encode).collect()).collect(),
            hash: String::new(),
        };
        out.hash = out.content_hash();
        out
    }

    /// sha256 of the canonical JSON with the hash field blank.
    pub fn content_hash(&self) -> String {
        let mut blank = self.clone();
        blank.hash = String::new();
        let bytes = serde_json::to_vec(&blank).expect("serializable");
        hex::encode(Sha256::digest(&bytes))
    }

    /// Rebuild the table, checking class data and orthogonality.
    pub fn into_table(&self) -> Result<CharacterTable, CacheError> {
        if self.schema != SCHEMA_VERSION {
            return Err(CacheError::Schema { found: self.schema });
        }
        if self.engine != engine_hash() {
            return Err(CacheError::Engine);
        }
        if self.hash != self.content_hash() {
            return Err(CacheError::Hash);
        }
        let spec: GroupSpec = self.spec.parse()?;
        let classes = Classes::new(enumerate(&spec)?);
        if classes.order() != self.order {
            return Err(CacheError::Mismatch("group order".into()));
        }
        let reps: Vec<u32> = (0..classes.len()).map(|k| classes.rep(k)).collect();
        if reps != self.reps || classes.sizes() != self.sizes.as_slice() {
            return Err(CacheError::Mismatch("class data".into()));
        }
        let chars = self
            .characters
            .iter()
            .map(|row| {
                if row.len() != reps.len() {
                    return Err(CacheError::Mismatch("row length".into()));
                }
                Ok(ClassFunction::new(row.iter().map(decode).collect::<Result<_, _>>()?))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let table = CharacterTable::from_characters(Arc::new(classes), chars);
        table.verify()?;
        Ok(table)
    }
}

fn file_name(spec: &GroupSpec) -> String {
    let s: String = spec.to_string().chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    format!("{s}.v{SCHEMA_VERSION}.json")
}

/// A directory of cached tables.
#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

/// How a table was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Loaded,
    Built,
    /// Cache entry rejected; the reason is kept for the warning.
    Rebuilt(String),
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> TableCache {
        TableCache { dir: dir.into() }
    }

    /// From CCLAB_CACHE_DIR, if set.
    pub fn from_env() -> Option<TableCache> {
        std::env::var_os(CACHE_ENV).map(TableCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, spec: &GroupSpec) -> PathBuf {
        self.dir.join(file_name(spec))
    }

    pub fn load(&self, spec: &GroupSpec) -> Result<CharacterTable, CacheError> {
        let bytes = fs::read(self.path(spec))?;
        let cached: CachedTable = serde_json::from_slice(&bytes)?;
        if cached.spec != spec.to_string() {
            return Err(CacheError::Mismatch("spec".into()));
        }
        cached.into_table()
    }

    pub fn store(&self, table: &CharacterTable) -> Result<PathBuf, CacheError> {
        let spec = table.group().spec().ok_or_else(|| CacheError::Mismatch("table has no spec".into()))?;
        fs::create_dir_all(&self.dir)?;
        let path = self.path(spec);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec_pretty(&CachedTable::from_table(table))?)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Load a cached table, or build and store it. A missing entry builds silently; a rejected
    /// one is rebuilt and reported through the provenance.
    pub fn load_or_build(&self, spec: &GroupSpec) -> Result<(CharacterTable, Provenance), CacheError> {
        self.load_or_build_with(spec, || Ok(crate::chartab::build_table(enumerate(spec)?)?))
    }

    pub fn load_or_build_with(
        &self,
        spec: &GroupSpec,
        build: impl FnOnce() -> Result<CharacterTable, CacheError>,
    ) -> Result<(CharacterTable, Provenance), CacheError> {
        let prov = match self.load(spec) {
            Ok(t) => return Ok((t, Provenance::Loaded)),
            Err(CacheError::Io(e)) if e.kind() == std::io::ErrorKind::NotFound => Provenance::Built,
            Err(e) => Provenance::Rebuilt(e.to_string()),
        };
        let table = build()?;
        self.store(&table)?;
        Ok((table, prov))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::table_str;

    #[test]
    fn roundtrip_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path());
        let spec: GroupSpec = "SL(2,5)".parse().unwrap();
        let t = table_str("SL(2,5)").unwrap();
        let path = cache.store(&t).unwrap();
        let back = cache.load(&spec).unwrap();
        assert_eq!(CachedTable::from_table(&back), CachedTable::from_table(&t));
        assert_eq!(back.characters(), t.characters());

        let text = fs::read_to_string(&path).unwrap();
        let tampered = text.replacen("\"order\": 120", "\"order\": 121", 1);
        assert_ne!(text, tampered);
        fs::write(&path, tampered).unwrap();
        assert!(matches!(cache.load(&spec), Err(CacheError::Hash)));
        let (_, prov) = cache.load_or_build(&spec).unwrap();
        assert!(matches!(prov, Provenance::Rebuilt(_)));
        assert_eq!(cache.load_or_build(&spec).unwrap().1, Provenance::Loaded);

        let mut stale = CachedTable::from_table(&t);
        stale.schema = SCHEMA_VERSION + 1;
        stale.hash = stale.content_hash();
        assert!(matches!(stale.into_table(), Err(CacheError::Schema { .. })));
    }
}
