//! Rendering: JSON is canonical, CSV and text are flat projections.

use serde::Serialize;

use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A flat view of a report: one header, zero or more rows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

pub trait Projection {
    fn table(&self) -> Table;
}

pub fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, T::to_string)
}

pub fn render<T: Serialize + Projection>(report: &T, format: Format) -> CliResult<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| CliError::failure(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let table = report.table();
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.header).map_err(|e| CliError::failure(e.to_string()))?;
            for row in &table.rows {
                w.write_record(row).map_err(|e| CliError::failure(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::failure(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::failure(e.to_string()))
        }
        Format::Text => Ok(text(&report.table())),
    }
}

/// `key: value` lines for a single record, aligned columns otherwise.
fn text(table: &Table) -> String {
    let mut out = String::new();
    if table.rows.len() == 1 {
        let width = table.header.iter().map(|h| h.chars().count()).max().unwrap_or(0);
        for (h, v) in table.header.iter().zip(&table.rows[0]) {
            out.push_str(&format!("{h:<width$}  {v}\n"));
        }
        return out;
    }
    let widths: Vec<usize> = (0..table.header.len())
        .map(|i| {
            table
                .rows
                .iter()
                .map(|r| r[i].chars().count())
                .chain([table.header[i].chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    for row in std::iter::once(&table.header).chain(&table.rows) {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}
