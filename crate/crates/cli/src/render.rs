use serde_json::Value;

use crate::{CliError, Format};

/// A named list of homogeneous records pulled out of a report.
struct Table {
    name: String,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.iter().all(is_scalar) => {
            xs.iter().map(cell).collect::<Vec<_>>().join(" ")
        }
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        _ => v.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn is_record_list(v: &Value) -> bool {
    matches!(v, Value::Array(xs) if !xs.is_empty() && xs.iter().all(Value::is_object))
}

fn flatten(prefix: &str, v: &Value, pairs: &mut Vec<(String, String)>, tables: &mut Vec<Table>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, pairs, tables);
            }
        }
        Value::Array(xs) if is_record_list(v) => {
            let header: Vec<String> = xs[0].as_object().unwrap().keys().cloned().collect();
            let rows = xs
                .iter()
                .map(|x| {
                    header
                        .iter()
                        .map(|h| x.get(h).map(cell).unwrap_or_default())
                        .collect()
                })
                .collect();
            tables.push(Table {
                name: prefix.to_string(),
                header,
                rows,
            });
        }
        _ => pairs.push((prefix.to_string(), cell(v))),
    }
}

fn aligned(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0; width];
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            widths[i] = widths[i].max(c.chars().count());
        }
    }
    let mut out = String::new();
    for r in rows {
        let mut line = String::new();
        for (i, c) in r.iter().enumerate() {
            if i + 1 == r.len() {
                line.push_str(c);
            } else {
                line.push_str(&format!("{c:<w$}  ", w = widths[i]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn csv_text(rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r)
            .map_err(|e| CliError::invalid(format!("csv: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::invalid(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::invalid(format!("csv: {e}")))
}

/// Renders a report. `csv` emits the report's record list when it has
/// exactly one, and `key,value` pairs otherwise.
pub fn render(value: &Value, format: Format) -> Result<String, CliError> {
    if format == Format::Json {
        let mut s = serde_json::to_string_pretty(value)
            .map_err(|e| CliError::invalid(format!("json: {e}")))?;
        s.push('\n');
        return Ok(s);
    }
    let mut pairs = Vec::new();
    let mut tables = Vec::new();
    flatten("", value, &mut pairs, &mut tables);
    match format {
        Format::Csv if tables.len() == 1 => {
            let t = &tables[0];
            let mut rows = vec![t.header.clone()];
            rows.extend(t.rows.iter().cloned());
            csv_text(&rows)
        }
        Format::Csv => {
            let mut rows = vec![vec!["key".to_string(), "value".to_string()]];
            rows.extend(pairs.into_iter().map(|(k, v)| vec![k, v]));
            csv_text(&rows)
        }
        _ => {
            let kv: Vec<Vec<String>> = pairs.into_iter().map(|(k, v)| vec![k, v]).collect();
            let mut out = aligned(&kv);
            for t in tables {
                out.push_str(&format!("\n[{}]\n", t.name));
                let mut rows = vec![t.header];
                rows.extend(t.rows);
                out.push_str(&aligned(&rows));
            }
            Ok(out)
        }
    }
}
