use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

use rootline::rational::{parse, to_decimal};

/// Fractional digits in the human-readable renderings.
const DECIMAL_DIGITS: usize = 12;

fn is_rational_string(s: &str) -> bool {
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.strip_prefix('-').unwrap_or(n);
            !n.is_empty() && !d.is_empty() && n.bytes().all(|b| b.is_ascii_digit()) && d.bytes().all(|b| b.is_ascii_digit())
        }
        None => false,
    }
}

fn decimal_of(v: &Value) -> Option<Value> {
    match v {
        Value::String(s) if is_rational_string(s) => parse(s).ok().map(|r| Value::String(to_decimal(&r, DECIMAL_DIGITS))),
        Value::Array(items) if !items.is_empty() => {
            let out: Option<Vec<Value>> = items.iter().map(decimal_of).collect();
            out.map(Value::Array)
        }
        _ => None,
    }
}

/// Add a `<key>_decimal` sibling next to every rational string (or array of
/// them). The rational strings stay authoritative.
pub fn decorate(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut out = Map::new();
            for (k, v) in map {
                let v = decorate(v);
                if let Some(d) = decimal_of(&v) {
                    out.insert(format!("{k}_decimal"), d);
                }
                out.insert(k, v);
            }
            Value::Object(out)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(decorate).collect()),
        other => other,
    }
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn emit(v: &Value, out: Option<&Path>) -> std::io::Result<()> {
    let text = render(v);
    match out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(path, text)
        }
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn decoration() {
        let v = decorate(json!({"ratio": "4/3", "coeffs": ["1/1", "-1/2"], "name": "C_4", "n": 3}));
        assert_eq!(v["ratio_decimal"], json!("1.333333333333"));
        assert_eq!(v["coeffs_decimal"], json!(["1.000000000000", "-0.500000000000"]));
        assert!(v.get("name_decimal").is_none() && v.get("n_decimal").is_none());
        assert!(!is_rational_string("1/"));
        assert!(!is_rational_string("a/b"));
    }
}
