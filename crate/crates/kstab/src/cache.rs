//! Persists the seed basis tables of a [`StableEngine`] as JSON files.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kclass::KClass;
use crate::stable::StableEngine;

fn table_json(t: &[Vec<KClass>]) -> Value {
    Value::Array(
        t.iter()
            .map(|row| Value::Array(row.iter().map(KClass::to_json).collect()))
            .collect(),
    )
}

fn table_from_json(v: &Value, n: usize) -> Result<Vec<Vec<KClass>>> {
    let rows = v
        .as_array()
        .filter(|r| r.len() == n)
        .ok_or_else(|| Error::Parse("cached table has the wrong shape".into()))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .filter(|r| r.len() == n)
                .ok_or_else(|| Error::Parse("cached table row has the wrong shape".into()))?
                .iter()
                .map(KClass::from_json)
                .collect()
        })
        .collect()
}

/// Loads cached tables for the engine's type from `dir`, or builds and stores them.
///
/// Returns whether the tables came from the cache.
pub fn load_or_store(engine: &StableEngine, dir: &Path) -> Result<bool> {
    let rs = engine.root_system();
    let path = dir.join(format!("{}.json", rs.label()));
    let n = rs.weyl.order();
    if let Ok(text) = fs::read_to_string(&path) {
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("cache file {}: {e}", path.display())))?;
        let plus = table_from_json(&v["plus"], n)?;
        let minus = table_from_json(&v["minus"], n)?;
        engine.install_tables(plus, minus);
        return Ok(true);
    }
    let v = json!({
        "type": rs.label(),
        "plus": table_json(engine.plus_table()),
        "minus": table_json(engine.minus_table()),
    });
    fs::create_dir_all(dir)
        .and_then(|_| fs::write(&path, v.to_string()))
        .map_err(|e| Error::Io(format!("cannot write cache file {}: {e}", path.display())))?;
    Ok(false)
}
