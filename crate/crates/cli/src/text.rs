//! Human-readable rendering of the JSON payloads.
//!
//! Set-system objects print in `([n], {...})` notation, arrays of uniform
//! records print as aligned tables, and everything else becomes indented
//! `key: value` lines.

use serde_json::{Map, Value};
use twuality::SetSystem;

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    block(v, 0, &mut out);
    out
}

fn block(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) if !is_set_system(map) => {
            for (key, value) in map {
                match inline(value) {
                    Some(s) => out.push_str(&format!("{pad}{key}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        block(value, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            if let Some(rows) = table(items) {
                for row in rows {
                    out.push_str(&format!("{pad}{}\n", row.trim_end()));
                }
                return;
            }
            for item in items {
                match inline(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        block(item, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}

fn is_set_system(map: &Map<String, Value>) -> bool {
    map.len() == 2 && map.contains_key("n") && map.contains_key("feasible")
}

/// One-line form of scalars, set systems and arrays without records.
fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::String(s) => Some(s.clone()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        Value::Object(map) if is_set_system(map) => {
            serde_json::from_value::<SetSystem>(v.clone()).ok().map(|d| d.to_string())
        }
        Value::Object(_) => None,
        Value::Array(items) => {
            if items.iter().all(is_plain) {
                Some(v.to_string())
            } else {
                None
            }
        }
    }
}

fn is_plain(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(is_plain),
        _ => true,
    }
}

/// Rows of an aligned table when every item is a record with the same keys and
/// one-line values.
fn table(items: &[Value]) -> Option<Vec<String>> {
    let first = items.first()?.as_object()?;
    if is_set_system(first) {
        return None;
    }
    let keys: Vec<&String> = first.keys().collect();
    let mut cells = vec![keys.iter().map(|k| k.to_string()).collect::<Vec<_>>()];
    for item in items {
        let map = item.as_object()?;
        if map.len() != keys.len() {
            return None;
        }
        let row = keys
            .iter()
            .map(|k| map.get(*k).and_then(inline))
            .collect::<Option<Vec<_>>>()?;
        cells.push(row);
    }
    let widths: Vec<usize> = (0..keys.len())
        .map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    Some(
        cells
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&widths)
                    .map(|(cell, w)| format!("{cell:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            })
            .collect(),
    )
}
