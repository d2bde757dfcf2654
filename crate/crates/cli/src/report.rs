//! Reports and their JSON and text renderings.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const REPORT_FORMAT: &str = "sftgroup-report/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

/// A command result with the canonical job that produced it. Object keys
/// serialize in sorted order and integers as exact decimal text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub format: String,
    pub version: String,
    pub command: String,
    pub input: Value,
    pub result: Value,
}

impl Report {
    pub fn new(command: &str, input: Value, result: Map<String, Value>) -> Self {
        Report {
            format: REPORT_FORMAT.into(),
            version: VERSION.into(),
            command: command.into(),
            input,
            result: Value::Object(result),
        }
    }
}

pub fn emit_report(r: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let mut out = format!("{} ({} {})\n", r.command, r.format, r.version);
            render(&mut out, &r.result, 0);
            out
        }
    }
}

/// Parses a JSON report.
pub fn parse_report(text: &str) -> serde_json::Result<Report> {
    serde_json::from_str(text)
}

/// `Z/2 + Z/2`, `Z^2`, or `0` for the trivial group.
pub fn format_abelian(torsion: &[String], free_rank: u64) -> String {
    let mut parts: Vec<String> = torsion.iter().filter(|d| d.as_str() != "1").map(|d| format!("Z/{d}")).collect();
    match free_rank {
        0 => {}
        1 => parts.push("Z".into()),
        r => parts.push(format!("Z^{r}")),
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn is_abelian_group(o: &Map<String, Value>) -> bool {
    o.len() == 2 && o.contains_key("invariant_factors") && o.contains_key("free_rank")
}

fn is_matrix(v: &Value) -> bool {
    match v.as_array() {
        Some(rows) if !rows.is_empty() => {
            rows.iter().all(|r| r.as_array().is_some_and(|r| r.iter().all(Value::is_number)))
        }
        _ => false,
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn render(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    let Some(o) = v.as_object() else {
        out.push_str(&format!("{pad}{}\n", inline(v)));
        return;
    };
    for (k, v) in o {
        match v {
            Value::Object(inner) if is_abelian_group(inner) => {
                out.push_str(&format!("{pad}{k}: BF group: {}\n", abelian_text(inner)));
            }
            Value::Object(_) => {
                out.push_str(&format!("{pad}{k}:\n"));
                render(out, v, depth + 1);
            }
            _ if is_matrix(v) => {
                out.push_str(&format!("{pad}{k}:\n"));
                render_matrix(out, v, depth + 1);
            }
            Value::Array(items) if items.iter().any(Value::is_object) => {
                out.push_str(&format!("{pad}{k}:\n"));
                for (i, item) in items.iter().enumerate() {
                    out.push_str(&format!("{pad}  [{}]\n", i + 1));
                    render(out, item, depth + 2);
                }
            }
            _ => out.push_str(&format!("{pad}{k}: {}\n", inline(v))),
        }
    }
}

fn abelian_text(o: &Map<String, Value>) -> String {
    let torsion: Vec<String> =
        o["invariant_factors"].as_array().map(|a| a.iter().filter_map(scalar).collect()).unwrap_or_default();
    let rank = o["free_rank"].as_u64().unwrap_or(0);
    format_abelian(&torsion, rank)
}

fn inline(v: &Value) -> String {
    if let Some(s) = scalar(v) {
        return s;
    }
    match v {
        Value::Array(items) if items.iter().all(|x| scalar(x).is_some()) => {
            items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        }
        _ => serde_json::to_string(v).expect("value serializes"),
    }
}

/// Row-major, right-aligned columns.
fn render_matrix(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    let rows: Vec<Vec<String>> = v
        .as_array()
        .into_iter()
        .flatten()
        .map(|r| r.as_array().into_iter().flatten().filter_map(scalar).collect())
        .collect();
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|j| rows.iter().filter_map(|r| r.get(j)).map(String::len).max().unwrap_or(0)).collect();
    for r in &rows {
        let cells: Vec<String> = r.iter().enumerate().map(|(j, x)| format!("{x:>w$}", w = widths[j])).collect();
        out.push_str(&format!("{pad}{}\n", cells.join(" ")));
    }
}
