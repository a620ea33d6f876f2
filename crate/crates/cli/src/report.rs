//! Report rendering. Text mode walks the same JSON value as JSON mode, so
//! the two always carry the same fields in the same order.

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(value).expect("reports serialise");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            text(value, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => format!(
            "{{{}}}",
            items.iter().map(scalar).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|i| !i.is_object() && !i.is_array()),
        _ => true,
    }
}

fn text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    let Value::Object(map) = value else {
        out.push_str(&format!("{pad}{}\n", scalar(value)));
        return;
    };
    for (key, v) in map {
        match v {
            _ if is_flat(v) => out.push_str(&format!("{pad}{key}: {}\n", scalar(v))),
            Value::Array(rows) if rows.iter().all(Value::is_object) => {
                out.push_str(&format!("{pad}{key}:\n"));
                table(rows, indent + 1, out);
            }
            Value::Array(rows) => {
                out.push_str(&format!("{pad}{key}:\n"));
                for r in rows {
                    text(r, indent + 1, out);
                }
            }
            _ => {
                out.push_str(&format!("{pad}{key}:\n"));
                text(v, indent + 1, out);
            }
        }
    }
}

/// Rows of flat objects as an aligned table keyed by the first row.
fn table(rows: &[Value], indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    let Some(Value::Object(first)) = rows.first() else {
        out.push_str(&format!("{pad}(none)\n"));
        return;
    };
    let keys: Vec<&String> = first.keys().collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            keys.iter()
                .map(|k| r.get(k.as_str()).map_or_else(|| "-".into(), scalar))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| {
            cells
                .iter()
                .map(|c| c[i].chars().count())
                .chain([k.chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |items: Vec<String>| {
        let joined: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        format!("{pad}{}\n", joined.join("  ").trim_end())
    };
    out.push_str(&line(keys.iter().map(|k| k.to_string()).collect()));
    for c in cells {
        out.push_str(&line(c));
    }
}
