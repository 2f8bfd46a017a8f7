use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use tiltchow::{approx_decimal, Rational};

use crate::error::{CliError, CliResult};

/// Digits used for the approximate decimal companions of exact values.
pub const APPROX_DIGITS: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Csv,
    Json,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: IndexMap<String, String>,
    pub outputs: IndexMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.to_string(), value.to_string());
    }

    pub fn output(&mut self, key: &str, value: impl ToString) {
        self.outputs.insert(key.to_string(), value.to_string());
    }

    /// Records `key` exactly and `key_approx` as a decimal.
    pub fn output_with_approx(&mut self, key: &str, value: &Rational) {
        self.output(key, value);
        self.output(&format!("{key}_approx"), approx_decimal(value, APPROX_DIGITS));
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Human => Ok(self.render_human()),
            Format::Csv => self.render_csv(),
            Format::Json => Ok(serde_json::to_string_pretty(self).expect("report serializes") + "\n"),
        }
    }

    fn render_human(&self) -> String {
        let mut out = format!("{}\n", self.command);
        let width = self
            .inputs
            .keys()
            .chain(self.outputs.keys())
            .map(|k| k.chars().count())
            .max()
            .unwrap_or(0);
        for (title, map) in [("inputs", &self.inputs), ("outputs", &self.outputs)] {
            if map.is_empty() {
                continue;
            }
            out.push_str(&format!("\n{title}:\n"));
            for (k, v) in map {
                out.push_str(&format!("  {k:<width$}  {v}\n"));
            }
        }
        for w in &self.warnings {
            out.push_str(&format!("\nwarning: {w}\n"));
        }
        if let Some(table) = &self.table {
            out.push('\n');
            let mut widths: Vec<usize> = table.columns.iter().map(|c| c.chars().count()).collect();
            for row in &table.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(&table.columns));
            for row in &table.rows {
                out.push_str(&line(row));
            }
            if table.rows.is_empty() {
                out.push_str("(no rows)\n");
            }
        }
        out
    }

    fn render_csv(&self) -> CliResult<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let csv_err = |e: csv::Error| CliError::Input(format!("csv output failed: {e}"));
        match &self.table {
            Some(table) => {
                w.write_record(&table.columns).map_err(csv_err)?;
                for row in &table.rows {
                    w.write_record(row).map_err(csv_err)?;
                }
            }
            None => {
                w.write_record(["key", "value"]).map_err(csv_err)?;
                for (k, v) in &self.outputs {
                    w.write_record([k, v]).map_err(csv_err)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| CliError::Input(format!("csv output failed: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}
