//! Rendering of command results and atomic output.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde_json::{json, Value};

use pythcubic_core::length::LengthResult;
use pythcubic_core::squares::{SquareCandidate, SquareRecord};
use pythcubic_core::verify::{self, VerificationReport};
use pythcubic_core::OrderElement;

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn records(list: &[SquareCandidate]) -> Vec<SquareRecord> {
    list.iter().map(SquareRecord::from).collect()
}

fn csv_rows(header: &str, rows: impl IntoIterator<Item = (String, String)>) -> String {
    let mut out = format!("{header}\n");
    for (root, square) in rows {
        out.push_str(&format!("\"{root}\",\"{square}\"\n"));
    }
    out
}

pub struct LengthOutput {
    value: Value,
    witness: Vec<SquareCandidate>,
    target: OrderElement,
    max_m: usize,
    length: Option<usize>,
}

impl LengthOutput {
    pub fn new(target: &OrderElement, max_m: usize, result: Option<&LengthResult>) -> Self {
        let witness = result.map(|r| r.witness.parts.clone()).unwrap_or_default();
        let length = result.map(|r| r.length);
        let value = json!({
            "a": target.a(),
            "target": target.coord_string(),
            "max_m": max_m,
            "length": length,
            "witness": records(&witness),
        });
        Self {
            value,
            witness,
            target: target.clone(),
            max_m,
            length,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => verify::render_json(&self.value),
            Format::Csv => csv_rows(
                "root,square",
                self.witness.iter().map(|c| (c.root.coord_string(), c.square.coord_string())),
            ),
            Format::Text => {
                let mut out = format!("a = {}\ntarget = {} ({})\n", self.target.a(), self.target.coord_string(), self.target);
                match self.length {
                    Some(m) => {
                        out.push_str(&format!("length = {m}\n"));
                        for c in &self.witness {
                            out.push_str(&format!("  ({})^2 = {}\n", c.root, c.square));
                        }
                    }
                    None => out.push_str(&format!("no representation within max_m = {}\n", self.max_m)),
                }
                out
            }
        }
    }
}

pub struct SquaresOutput {
    value: Value,
    list: Vec<SquareCandidate>,
    pub methods_agree: Option<bool>,
}

impl SquaresOutput {
    pub fn new(
        target: &OrderElement,
        method: &str,
        brute: Option<Vec<SquareCandidate>>,
        structured: Option<Vec<SquareCandidate>>,
    ) -> Self {
        let squares = |l: &[SquareCandidate]| -> Vec<OrderElement> { l.iter().map(|c| c.square.clone()).collect() };
        let methods_agree = match (&brute, &structured) {
            (Some(b), Some(s)) => Some(squares(b) == squares(s)),
            _ => None,
        };
        let list = brute.or(structured).unwrap_or_default();
        let value = json!({
            "a": target.a(),
            "target": target.coord_string(),
            "method": method,
            "count": list.len(),
            "squares": records(&list),
            "methods_agree": methods_agree,
        });
        Self { value, list, methods_agree }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => verify::render_json(&self.value),
            Format::Csv => csv_rows(
                "root,square",
                self.list.iter().map(|c| (c.root.coord_string(), c.square.coord_string())),
            ),
            Format::Text => {
                let mut out = format!("{} nonzero squares\n", self.list.len());
                for c in &self.list {
                    out.push_str(&format!("  {}  = ({})^2\n", c.square, c.root));
                }
                if let Some(agree) = self.methods_agree {
                    out.push_str(if agree { "methods agree\n" } else { "methods DISAGREE\n" });
                }
                out
            }
        }
    }
}

/// A single report renders as one JSON object, several as an array.
pub fn render_reports(reports: &[VerificationReport], single: bool, format: Format) -> String {
    match format {
        Format::Json if single => verify::render_json(&reports[0]),
        Format::Json => verify::render_json(reports),
        Format::Csv => verify::render_csv(reports),
        Format::Text => verify::render_text(reports),
    }
}

fn write_atomic(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(content.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Prints to standard output, or writes the whole file in one step.
pub fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => write_atomic(path, content).map_err(|e| Failure {
            code: 2,
            message: format!("cannot write {}: {e}", path.display()),
        }),
    }
}
