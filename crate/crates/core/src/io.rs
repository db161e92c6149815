//! JSON cache files for tables of constants, and shared serialization
//! helpers.
//!
//! Rationals are always written as decimal strings so that no precision is
//! lost. Files are written to a temporary sibling and renamed into place.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::rational::{format_rational, from_decimal_parts};
use crate::algebra::ExactRational;
use crate::error::{Error, Result};
use crate::vsc::{Provenance, VscKey, VscTable};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable naming the default cache file.
pub const CACHE_ENV: &str = "GWMIRROR_CACHE";

pub fn serialize_rational<S: Serializer>(q: &ExactRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: String,
    pub den: String,
}

impl From<&ExactRational> for RationalRepr {
    fn from(q: &ExactRational) -> Self {
        Self { num: q.numer().to_string(), den: q.denom().to_string() }
    }
}

impl RationalRepr {
    pub fn to_rational(&self) -> Option<ExactRational> {
        from_decimal_parts(&self.num, &self.den)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    #[serde(rename = "N")]
    pub big_n: u32,
    pub k: u32,
    pub d: u32,
    pub n: i64,
    pub value: RationalRepr,
    pub provenance: Provenance,
}

impl CacheEntry {
    pub fn new(key: &VscKey, value: &ExactRational, provenance: Provenance) -> Self {
        Self { big_n: key.big_n, k: key.k, d: key.d, n: key.n, value: value.into(), provenance }
    }

    pub fn key(&self) -> VscKey {
        VscKey::new(self.big_n, self.k, self.d, self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub schema_version: u32,
    pub entries: Vec<CacheEntry>,
}

impl CacheFile {
    pub fn from_table(table: &VscTable) -> Self {
        let entries = table.entries().map(|(key, e)| CacheEntry::new(key, &e.value, e.provenance)).collect();
        Self { schema_version: SCHEMA_VERSION, entries }
    }

    pub fn into_table(self) -> Result<VscTable> {
        let mut table = VscTable::new();
        for e in self.entries {
            let value = e
                .value
                .to_rational()
                .ok_or_else(|| Error::CorruptFile(format!("bad rational {}/{}", e.value.num, e.value.den)))?;
            table
                .record(e.key(), value, e.provenance)
                .map_err(|err| Error::CorruptFile(err.to_string()))?;
        }
        Ok(table)
    }
}

pub fn table_to_json(table: &VscTable) -> String {
    let mut s = serde_json::to_string_pretty(&CacheFile::from_table(table)).expect("cache serializes");
    s.push('\n');
    s
}

pub fn table_from_json(text: &str) -> Result<VscTable> {
    let raw: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::CorruptFile(e.to_string()))?;
    let version = raw
        .get("schema_version")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| Error::CorruptFile("missing schema_version".into()))?;
    if version != u64::from(SCHEMA_VERSION) {
        return Err(Error::SchemaMismatch { found: version as u32, expected: SCHEMA_VERSION });
    }
    let file: CacheFile = serde_json::from_value(raw).map_err(|e| Error::CorruptFile(e.to_string()))?;
    file.into_table()
}

pub fn cache_write(table: &VscTable, path: &Path) -> Result<()> {
    write_atomic(path, table_to_json(table).as_bytes())
}

pub fn cache_read(path: &Path) -> Result<VscTable> {
    table_from_json(&fs::read_to_string(path)?)
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vsc::vsc_table;

    #[test]
    fn round_trip_quintic_row() {
        let table = vsc_table(5, 5, 1, false).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        cache_write(&table, &path).unwrap();
        let back = cache_read(&path).unwrap();
        assert_eq!(table_to_json(&back), table_to_json(&table));
        assert_eq!(back.row(5, 5, 1).len(), 5);
    }

    #[test]
    fn truncated_file_is_corrupt() {
        let text = table_to_json(&vsc_table(5, 5, 1, false).unwrap());
        let cut = &text[..text.len() / 2];
        assert!(matches!(table_from_json(cut), Err(Error::CorruptFile(_))));
    }

    #[test]
    fn future_schema_is_rejected() {
        let text = r#"{"schema_version": 2, "entries": []}"#;
        assert!(matches!(table_from_json(text), Err(Error::SchemaMismatch { found: 2, expected: 1 })));
    }

    #[test]
    fn non_canonical_rationals_are_corrupt() {
        let text = r#"{"schema_version": 1, "entries": [
            {"N": 5, "k": 5, "d": 1, "n": 0, "value": {"num": "240", "den": "2"}, "provenance": "recursion"}]}"#;
        assert!(matches!(table_from_json(text), Err(Error::CorruptFile(_))));
    }
}
