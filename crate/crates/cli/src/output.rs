//! Rendering helpers shared by every subcommand.
//!
//! Three formats: human text, JSON, CSV. Text and CSV open with a version
//! header comment; JSON stays header-free so the output parses as a single
//! document. All rendering is deterministic: identical invocations produce
//! byte-identical bytes.

use std::path::Path;

use qhook_core::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    pub fn pick(json: bool, csv: bool) -> Format {
        if json {
            Format::Json
        } else if csv {
            Format::Csv
        } else {
            Format::Text
        }
    }
}

/// The only place a version string appears in output.
pub fn header() -> String {
    format!("# qhook {}", env!("CARGO_PKG_VERSION"))
}

/// Full-precision float cell: 17 significant digits round-trip through
/// decimal, so downstream comparisons see the exact binary value.
pub fn full_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn print_json<T: serde::Serialize>(payload: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(payload)
        .map_err(|e| Error::Domain(format!("cannot serialize output: {e}")))?;
    println!("{text}");
    Ok(())
}

fn csv_cell(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

/// One header row plus data rows; the text renderer aligns columns, the
/// CSV renderer quotes only cells that need it.
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Table {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn print_text(&self) {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let render = |cells: &[String]| {
            let mut line = String::new();
            for (i, cell) in cells.iter().enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                line.push_str(cell);
                // Pad every column but the last so lines carry no trailing blanks.
                if i + 1 < cells.len() {
                    for _ in cell.len()..widths[i] {
                        line.push(' ');
                    }
                }
            }
            line
        };
        println!("{}", render(&self.columns));
        for row in &self.rows {
            println!("{}", render(row));
        }
    }

    pub fn print_csv(&self) {
        let line = |cells: &[String]| {
            cells
                .iter()
                .map(|c| csv_cell(c))
                .collect::<Vec<_>>()
                .join(",")
        };
        println!("{}", line(&self.columns));
        for row in &self.rows {
            println!("{}", line(row));
        }
    }
}

/// Plot-ready companion file: one "x y" pair per line, full precision.
pub fn write_xy(path: &Path, pairs: &[(f64, f64)]) -> Result<()> {
    let mut text = String::new();
    for (x, y) in pairs {
        text.push_str(&full_float(*x));
        text.push(' ');
        text.push_str(&full_float(*y));
        text.push('\n');
    }
    std::fs::write(path, text)
        .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))
}
