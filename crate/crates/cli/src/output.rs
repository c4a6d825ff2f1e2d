use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// The JSON envelope printed by every command.
#[derive(Serialize)]
struct OutputRecord<'a> {
    command: &'a str,
    parameters: &'a Value,
    result: &'a Value,
}

/// One command's output in all three renderings.
///
/// `result` is the authoritative JSON payload; `columns`/`rows` are the flat
/// view used by table and CSV, and `notes` are table-only summary lines.
pub struct Report {
    pub command: &'static str,
    pub parameters: Value,
    pub result: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
    /// Table output shows only `notes`.
    pub notes_only: bool,
    pub failed: bool,
}

impl Report {
    pub fn new(command: &'static str, parameters: Value, result: impl Serialize) -> Self {
        Report {
            command,
            parameters,
            result: serde_json::to_value(result).expect("results serialize"),
            columns: Vec::new(),
            rows: Vec::new(),
            notes: Vec::new(),
            notes_only: false,
            failed: false,
        }
    }

    pub fn columns(mut self, columns: &[&'static str]) -> Self {
        self.columns = columns.to_vec();
        self
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn render(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                let record = OutputRecord {
                    command: self.command,
                    parameters: &self.parameters,
                    result: &self.result,
                };
                serde_json::to_writer_pretty(&mut *out, &record)?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()
            }
            Format::Table => {
                if !self.notes_only {
                    write_aligned(out, &self.columns, &self.rows)?;
                }
                for n in &self.notes {
                    writeln!(out, "{n}")?;
                }
                Ok(())
            }
        }
    }
}

fn write_aligned(out: &mut impl Write, columns: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| -> String {
        let padded: Vec<String> = cells
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(&mut columns.iter().copied()))?;
    for r in rows {
        writeln!(out, "{}", line(&mut r.iter().map(String::as_str)))?;
    }
    Ok(())
}
