//! Report serialization and file output.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;

pub const SCHEMA_VERSION: u64 = 1;

/// Wraps a report body with the schema version. Keys of the resulting JSON
/// object are sorted, so equal inputs serialize to identical bytes.
pub fn report<T: Serialize>(kind: &str, body: &T) -> Result<Value> {
    let mut value = serde_json::to_value(body)?;
    if let Value::Object(map) = &mut value {
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
        map.insert("report".into(), json!(kind));
        return Ok(value);
    }
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "report": kind,
        "body": value,
    }))
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(value: &Value) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, then renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    Ok(result?)
}
