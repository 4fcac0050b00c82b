//! Deterministic rendering: C-style `%.12e` floats and a JSON printer that
//! uses them. Byte-identical output for identical input is a contract here,
//! so no float ever goes through the default shortest-representation path.

use serde_json::Value;

/// `%.12e` with a sign and at least two exponent digits, C flavor.
pub fn fmt_e(x: f64) -> String {
    if x == 0.0 {
        return "0.000000000000e+00".to_string();
    }
    let s = format!("{x:.12e}");
    let (mant, exp) = s.split_once('e').expect("exponential form");
    let exp: i32 = exp.parse().expect("exponent digits");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mant}e{sign}{:02}", exp.abs())
}

/// One TSV cell. Tabs and newlines may not survive into the output, so
/// embedded ones (multi-line operator dumps) collapse to `; `.
pub fn tsv_text(s: &str) -> String {
    s.replace('\t', " ").replace('\n', "; ")
}

pub fn tsv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join("\t");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

/// Pretty JSON with two-space indent. Floats render via [`fmt_e`]; integers
/// stay integers. Key order is the insertion order of the underlying maps.
pub fn json_doc(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else {
                out.push_str(&fmt_e(n.as_f64().expect("finite number")));
            }
        }
        Value::String(s) => {
            out.push_str(&serde_json::to_string(s).expect("string serializes"));
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                indent(out, depth + 1);
                write_value(out, item, depth + 1);
            }
            out.push('\n');
            indent(out, depth);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            for (i, (key, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                indent(out, depth + 1);
                out.push_str(&serde_json::to_string(key).expect("key serializes"));
                out.push_str(": ");
                write_value(out, item, depth + 1);
            }
            out.push('\n');
            indent(out, depth);
            out.push('}');
        }
    }
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}
