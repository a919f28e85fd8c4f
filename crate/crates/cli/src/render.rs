//! Report formatting. JSON output is pretty-printed with sorted keys; text
//! output flattens the same value into aligned `path  value` lines.

use serde_json::Value;

pub fn to_json(v: &Value) -> String {
    // serde_json's default map is ordered by key
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn is_scalar_array(items: &[Value]) -> bool {
    items
        .iter()
        .all(|x| !x.is_object() && !(x.is_array() && x.as_array().is_some_and(|a| !is_scalar_array(a))))
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(","))
        }
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        Value::Array(items) if !is_scalar_array(items) => {
            if items.is_empty() {
                out.push((prefix.to_string(), "[]".into()));
            }
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => out.push((prefix.to_string(), inline(other))),
    }
}

pub fn to_text(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, x) in rows {
        let pad = width - k.chars().count();
        s.push_str(&k);
        s.push_str(&" ".repeat(pad + 2));
        s.push_str(&x);
        s.push('\n');
    }
    s
}
