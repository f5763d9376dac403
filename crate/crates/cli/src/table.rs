use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Rows of string cells with a header.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }

    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let mut line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&self.header);
        for row in &self.rows {
            line(row);
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }
}

/// A command result in every output format.
pub struct Rendered {
    pub json: String,
    pub table: Table,
    /// Extra lines printed under the table in text format.
    pub notes: Vec<String>,
    pub exceeded: bool,
}

impl Rendered {
    pub fn new<T: Serialize>(doc: &T, table: Table) -> Self {
        let mut json = serde_json::to_string_pretty(doc).expect("documents serialize");
        json.push('\n');
        Self { json, table, notes: Vec::new(), exceeded: false }
    }

    pub fn note(mut self, line: impl Into<String>) -> Self {
        self.notes.push(line.into());
        self
    }

    pub fn exceeded(mut self, exceeded: bool) -> Self {
        self.exceeded = exceeded;
        self
    }

    pub fn output(&self, format: Format) -> String {
        match format {
            Format::Json => self.json.clone(),
            Format::Csv => self.table.to_csv(),
            Format::Text => {
                let mut out = self.table.to_text();
                for n in &self.notes {
                    out.push_str(n);
                    out.push('\n');
                }
                out
            }
        }
    }
}
