//! Output formats. JSON keys come out sorted because `serde_json::Map` is
//! ordered; CSV and Markdown flatten the row or check list of a report.

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

/// The tabular part of a report: rank rows or checks.
fn table(v: &Value) -> Option<(Vec<&'static str>, &Vec<Value>)> {
    if let Some(rows) = v.get("rows").and_then(Value::as_array) {
        return Some((vec!["g", "k", "rank", "dim_ker", "dim_domain", "rank_formula_ok"], rows));
    }
    if let Some(checks) = v.get("checks").and_then(Value::as_array) {
        return Some((vec!["item", "expected", "got", "ok"], checks));
    }
    None
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

pub fn render(v: &Value, format: Format) -> Result<String, String> {
    match format {
        Format::Json => serde_json::to_string_pretty(v)
            .map(|s| s + "\n")
            .map_err(|e| e.to_string()),
        Format::Csv => {
            let (cols, rows) = table(v).ok_or("this output has no table for CSV")?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&cols).map_err(|e| e.to_string())?;
            for r in rows {
                w.write_record(cols.iter().map(|c| cell(&r[*c])))
                    .map_err(|e| e.to_string())?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
        }
        Format::Md => {
            let mut out = String::new();
            let title = v
                .get("suite")
                .or_else(|| v.get("command"))
                .map(cell)
                .unwrap_or_default();
            out.push_str(&format!("# {title}\n\n"));
            if let Some(t) = v.get("theorem") {
                out.push_str(&format!("{}\n\n", cell(t)));
            }
            if let Some(p) = v.get("pass") {
                out.push_str(&format!("pass: {}\n\n", cell(p)));
            }
            match table(v) {
                Some((cols, rows)) => {
                    out.push_str(&format!("| {} |\n", cols.join(" | ")));
                    out.push_str(&format!("|{}\n", "---|".repeat(cols.len())));
                    for r in rows {
                        let cells: Vec<String> =
                            cols.iter().map(|c| cell(&r[*c]).replace('|', "\\|")).collect();
                        out.push_str(&format!("| {} |\n", cells.join(" | ")));
                    }
                }
                None => {
                    out.push_str("```json\n");
                    out.push_str(&serde_json::to_string_pretty(v).map_err(|e| e.to_string())?);
                    out.push_str("\n```\n");
                }
            }
            Ok(out)
        }
    }
}
