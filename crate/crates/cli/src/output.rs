use serde_json::Value;

use crate::{CliError, Format};

/// Renders a JSON document in the requested format. `dot` is used for
/// `--format dot`; commands without a graph drawing pass `None`.
pub fn render(format: Format, value: &Value, dot: Option<String>) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(json(value)),
        Format::Dot => dot.ok_or_else(|| CliError::Usage("this command has no DOT output".into())),
        Format::Table => Ok(match value {
            Value::Object(_) => key_values(value),
            other => json(other),
        }),
    }
}

pub fn json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn key_values(value: &Value) -> String {
    let Value::Object(map) = value else { unreachable!() };
    let width = map.keys().map(String::len).max().unwrap_or(0);
    map.iter().map(|(k, v)| format!("{k:<width$}  {}\n", cell(v))).collect()
}

/// An aligned plain-text table; numbers are right-aligned.
pub fn columns(headers: &[&str], rows: &[Vec<Value>]) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(cell).collect()).collect();
    let widths: Vec<usize> = (0..headers.len())
        .map(|c| cells.iter().map(|r| r[c].len()).chain([headers[c].len()]).max().unwrap_or(0))
        .collect();
    let line = |items: Vec<String>| {
        let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.iter().map(|h| h.to_string()).collect());
    for r in cells {
        out += &line(r);
    }
    out
}
