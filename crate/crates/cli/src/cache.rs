//! Versioned, checksummed persistence of Φ(x^{2m} y^{2n}) tables.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use markoff_core::certify::canonical_json;
use markoff_core::exact_rings::rational::parse_rational;
use markoff_core::exact_rings::KPoly;
use markoff_core::trired::PhiTable;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const FORMAT: &str = "markoff-phi-table";
pub const VERSION: u32 = 1;
pub const ENV_VAR: &str = "MARKOFF_CACHE";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache version {found} does not match {VERSION}")]
    Version { found: u32 },
    #[error("cache checksum mismatch")]
    Checksum,
    #[error("malformed cache: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    m: u32,
    n: u32,
    /// Coefficient of `x^t`, each a list of ℚ coefficients in κ.
    coeffs: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Body {
    m_max: u32,
    n_max: u32,
    entries: Vec<Entry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct File {
    format: String,
    version: u32,
    sha256: String,
    body: Body,
}

#[derive(Deserialize)]
struct Header {
    version: u32,
}

/// Default path, overridden by `MARKOFF_CACHE`.
pub fn default_path() -> PathBuf {
    std::env::var_os(ENV_VAR).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("markoff-phi-cache.json"))
}

fn body_of(t: &PhiTable) -> Body {
    let entries = t
        .entries
        .iter()
        .map(|(&(m, n), v)| Entry {
            m,
            n,
            coeffs: v.iter().map(|k| k.coeffs().iter().map(|q| q.to_string()).collect()).collect(),
        })
        .collect();
    Body { m_max: t.m_max, n_max: t.n_max, entries }
}

fn checksum(b: &Body) -> String {
    hex::encode(Sha256::digest(canonical_json(b).expect("serializable").as_bytes()))
}

/// Serialized form; identical tables give identical bytes.
pub fn to_string(t: &PhiTable) -> String {
    let body = body_of(t);
    let f = File { format: FORMAT.into(), version: VERSION, sha256: checksum(&body), body };
    canonical_json(&f).expect("serializable")
}

pub fn from_str(s: &str) -> Result<PhiTable, CacheError> {
    let v: serde_json::Value = serde_json::from_str(s).map_err(|e| CacheError::Malformed(e.to_string()))?;
    let v = destringify(v, &["version", "m_max", "n_max", "m", "n"]);
    let h = Header::deserialize(&v).map_err(|e| CacheError::Malformed(e.to_string()))?;
    if h.version != VERSION {
        return Err(CacheError::Version { found: h.version });
    }
    let f: File = serde_json::from_value(v).map_err(|e| CacheError::Malformed(e.to_string()))?;
    if f.format != FORMAT {
        return Err(CacheError::Malformed(format!("unknown format {:?}", f.format)));
    }
    if checksum(&f.body) != f.sha256 {
        return Err(CacheError::Checksum);
    }
    let mut entries = BTreeMap::new();
    for e in f.body.entries {
        let mut v = Vec::with_capacity(e.coeffs.len());
        for c in &e.coeffs {
            let qs = c.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>().map_err(|e| CacheError::Malformed(e.to_string()))?;
            v.push(KPoly::from_coeffs(qs));
        }
        entries.insert((e.m, e.n), v);
    }
    Ok(PhiTable { m_max: f.body.m_max, n_max: f.body.n_max, entries })
}

fn destringify(v: serde_json::Value, keys: &[&str]) -> serde_json::Value {
    use serde_json::Value;
    match v {
        Value::Object(m) => Value::Object(
            m.into_iter()
                .map(|(k, x)| {
                    let x = match (&x, keys.contains(&k.as_str())) {
                        (Value::String(s), true) => s.parse::<u64>().map(Value::from).unwrap_or(x),
                        _ => destringify(x, keys),
                    };
                    (k, x)
                })
                .collect(),
        ),
        Value::Array(a) => Value::Array(a.into_iter().map(|x| destringify(x, keys)).collect()),
        x => x,
    }
}

pub fn save(path: &Path, t: &PhiTable) -> Result<(), CacheError> {
    std::fs::write(path, to_string(t))?;
    Ok(())
}

pub fn load(path: &Path) -> Result<PhiTable, CacheError> {
    from_str(&std::fs::read_to_string(path)?)
}

/// Loads a table covering `(m, n)`, rebuilding and saving it when missing,
/// too small or of another version. Warnings go to `warn`.
pub fn load_or_build(path: &Path, m: u32, n: u32, warn: &mut dyn FnMut(String)) -> Result<PhiTable, CacheError> {
    match load(path) {
        Ok(t) if t.m_max >= m && t.n_max >= n => return Ok(t),
        Ok(t) => warn(format!("cache covers ({}, {}), need ({m}, {n}); rebuilding", t.m_max, t.n_max)),
        Err(CacheError::Version { found }) => warn(format!("cache version {found} is stale; rebuilding")),
        Err(CacheError::Io(e)) if e.kind() == std::io::ErrorKind::NotFound => {}
        Err(e) => return Err(e),
    }
    let t = markoff_core::trired::cache_build(m, n);
    save(path, &t)?;
    Ok(t)
}
