use serde_json::Value;

use crate::commands::{Report, Rows};
use crate::config::Format;
use crate::encode;
use crate::error::CliError;

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => json(&report.value),
        Format::Table => table(report),
        Format::Csv => csv(report),
    }
}

pub fn render_error(err: &CliError, format: Format) -> String {
    match format {
        Format::Json => json(&err.to_json()),
        _ => String::new(),
    }
}

/// Pretty-printed with sorted keys and a trailing newline.
pub fn json(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    out.push('\n');
    out
}

fn summary(report: &Report) -> Vec<(String, String)> {
    let mut value = report.value.clone();
    if let (Some(rows), Value::Object(map)) = (&report.rows, &mut value) {
        map.remove(rows.key);
        map.remove("warnings");
    }
    encode::flatten(&value)
}

fn table(report: &Report) -> String {
    let pairs: Vec<Vec<String>> = summary(report)
        .into_iter()
        .map(|(k, v)| vec![k, v])
        .collect();
    let mut out = aligned(&pairs);
    if let Some(rows) = &report.rows {
        out.push('\n');
        out.push_str(&columns(rows));
    }
    out
}

fn columns(rows: &Rows) -> String {
    let mut all = vec![rows
        .headers
        .iter()
        .map(|h| h.to_string())
        .collect::<Vec<_>>()];
    all.extend(rows.rows.iter().cloned());
    aligned(&all)
}

fn aligned(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, cell)| {
                if i + 1 == row.len() {
                    cell.clone()
                } else {
                    format!("{cell:<w$}", w = widths[i])
                }
            })
            .collect();
        out.push_str(&cells.join("  "));
        out.push('\n');
    }
    out
}

fn csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let write = |w: &mut csv::Writer<Vec<u8>>, rec: &[String]| {
        w.write_record(rec).expect("writing to memory");
    };
    match &report.rows {
        Some(rows) => {
            let header: Vec<String> = rows.headers.iter().map(|h| h.to_string()).collect();
            write(&mut w, &header);
            for r in &rows.rows {
                write(&mut w, r);
            }
        }
        None => {
            write(&mut w, &["field".to_string(), "value".to_string()]);
            for (k, v) in encode::flatten(&report.value) {
                write(&mut w, &[k, v]);
            }
        }
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("CSV of UTF-8 input")
}
