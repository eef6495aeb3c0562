//! Format-independent report with table, CSV, JSON and SVG renderers.
//!
//! Only the table renderer rounds; CSV and JSON carry full precision.

use serde_json::Value;

use crate::args::Format;
use crate::error::{CliError, Result};
use crate::svg::Plot;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Style {
    /// Two decimals.
    Db,
    /// Three significant figures.
    Rate,
    Fixed(usize),
    Plain,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64, Style),
    Int(i64),
    Text(String),
}

impl Cell {
    pub fn db(v: f64) -> Self {
        Cell::Num(v, Style::Db)
    }

    pub fn rate(v: f64) -> Self {
        Cell::Num(v, Style::Rate)
    }

    pub fn fixed(v: f64, decimals: usize) -> Self {
        Cell::Num(v, Style::Fixed(decimals))
    }

    pub fn plain(v: f64) -> Self {
        Cell::Num(v, Style::Plain)
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    fn display(&self) -> String {
        match self {
            Cell::Num(v, Style::Db) => format!("{v:.2}"),
            Cell::Num(v, Style::Rate) => sig_figs(*v, 3),
            Cell::Num(v, Style::Fixed(d)) => format!("{v:.d$}"),
            Cell::Num(v, Style::Plain) => v.to_string(),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn raw(&self) -> String {
        match self {
            Cell::Num(v, _) => v.to_string(),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

pub fn sig_figs(v: f64, figs: i32) -> String {
    if v == 0.0 || !v.is_finite() {
        return v.to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = figs - 1 - magnitude;
    if decimals >= 0 {
        format!("{v:.*}", decimals as usize)
    } else {
        let unit = 10f64.powi(-decimals);
        format!("{:.0}", (v / unit).round() * unit)
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub json: Value,
    pub notes: Vec<String>,
    pub plot: Option<Plot>,
}

impl Report {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            json: Value::Null,
            notes: Vec::new(),
            plot: None,
        }
    }

    /// A three-column `parameter,value,unit` report.
    pub fn key_value(title: impl Into<String>) -> Self {
        Self::new(title, &["parameter", "value", "unit"])
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn kv(&mut self, name: &str, value: Cell, unit: &str) {
        self.push(vec![Cell::text(name), value, Cell::text(unit)]);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Table => Ok(self.render_table()),
            Format::Json => Ok(self.render_json()),
            Format::Csv => self.render_csv(),
            Format::Svg => match &self.plot {
                Some(plot) => Ok(plot.render()),
                None => Err(CliError::input(
                    "svg output needs a series: use --sweep or --curve with this command",
                )),
            },
        }
    }

    fn render_table(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::display).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| {
                cells
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain(std::iter::once(self.columns[i].chars().count()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |items: &[String]| {
            let padded: Vec<String> = items
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = format!("{}\n\n", self.title);
        out.push_str(&line(&self.columns));
        out.push('\n');
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&line(&rule));
        out.push('\n');
        for row in &cells {
            out.push_str(&line(row));
            out.push('\n');
        }
        for note in &self.notes {
            out.push_str(&format!("\nwarning: {note}"));
        }
        if !self.notes.is_empty() {
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut doc = self.json.clone();
        if let Value::Object(map) = &mut doc {
            map.insert("warnings".into(), Value::from(self.notes.clone()));
        }
        let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
        text.push('\n');
        text
    }

    fn render_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io {
            context: "writing csv".into(),
            source: e.into(),
        };
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::raw)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io {
            context: "writing csv".into(),
            source: e.into_error(),
        })?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}
