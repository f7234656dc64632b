//! Report serialization: UTF-8 JSON with sorted keys and counts as decimal
//! strings.

use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA: &str = "blockcheck-report/1";

/// Rebuilds every object with its keys in sorted order.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, v) in entries {
                out.insert(k, canonical(v));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonical).collect()),
        other => other,
    }
}

pub fn to_value<T: Serialize>(value: &T) -> Value {
    canonical(serde_json::to_value(value).expect("report types serialize"))
}

/// Pretty-printed canonical JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&canonical(v.clone())).expect("JSON values serialize");
    s.push('\n');
    s
}

/// A report envelope: `{"schema", "kind", ...fields}`.
pub fn envelope(kind: &str, fields: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), Value::String(SCHEMA.into()));
    m.insert("kind".into(), Value::String(kind.into()));
    for (k, v) in fields {
        m.insert(k.into(), v);
    }
    canonical(Value::Object(m))
}

/// Follows a dotted path such as `correspondent.k_rv`. Inside arrays a
/// segment is either an index or the `id` of an element, as in
/// `conjectures.C1.holds`.
pub fn lookup<'a>(v: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(v, |cur, key| match cur {
        Value::Object(m) => m.get(key),
        Value::Array(a) => match key.parse::<usize>() {
            Ok(i) => a.get(i),
            Err(_) => a.iter().find(|e| e.get("id").and_then(Value::as_str) == Some(key)),
        },
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_are_sorted_and_stable() {
        let v = json!({"b": 1, "a": {"d": [ {"z": 0, "y": 1} ], "c": "x"}});
        let s = render(&v);
        assert_eq!(s, render(&serde_json::from_str::<Value>(&s).unwrap()));
        let a = s.find("\"a\"").unwrap();
        let b = s.find("\"b\"").unwrap();
        assert!(a < b);
        assert!(s.find("\"y\"").unwrap() < s.find("\"z\"").unwrap());
        assert!(s.ends_with('\n'));
    }

    #[test]
    fn dotted_lookup() {
        let v = json!({"a": {"b": ["x", {"c": "5", "id": "C2"}]}});
        assert_eq!(lookup(&v, "a.b.1.c"), Some(&json!("5")));
        assert_eq!(lookup(&v, "a.b.C2.c"), Some(&json!("5")));
        assert_eq!(lookup(&v, "a.q"), None);
    }
}
