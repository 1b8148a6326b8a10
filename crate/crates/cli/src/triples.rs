//! Reading and writing triple files in JSON-lines or CSV form.

use std::io::Write;

use classdiv_core::SolutionTriple;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

/// One row of a triple file, taken at face value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleRow {
    pub m: u64,
    pub n: u64,
    pub t: u64,
    pub d: u64,
}

impl From<&SolutionTriple> for TripleRow {
    fn from(s: &SolutionTriple) -> Self {
        TripleRow {
            m: s.m,
            n: s.n,
            t: s.t,
            d: s.d,
        }
    }
}

pub fn write_rows<W: Write>(mut w: W, rows: &[TripleRow], format: Format) -> Result<(), CliError> {
    match format {
        Format::Jsonl => {
            for r in rows {
                serde_json::to_writer(&mut w, r).map_err(|e| CliError::Io(e.into()))?;
                w.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut cw = csv::WriterBuilder::new().has_headers(false).from_writer(&mut w);
            cw.write_record(["m", "n", "t", "d"])?;
            for r in rows {
                cw.serialize(r)?;
            }
            cw.flush()?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Guesses the format from the first non-blank line.
pub fn sniff(text: &str) -> Format {
    match text.lines().map(str::trim).find(|l| !l.is_empty()) {
        Some(l) if l.starts_with('{') => Format::Jsonl,
        Some(_) => Format::Csv,
        None => Format::Jsonl,
    }
}

/// Parses every row, returning `(line number, row)` pairs. Any unparseable
/// row fails the whole read with the offending line numbers listed.
pub fn parse_rows(text: &str, format: Option<Format>) -> Result<Vec<(usize, TripleRow)>, CliError> {
    let format = format.unwrap_or_else(|| sniff(text));
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    match format {
        Format::Jsonl => {
            for (i, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<TripleRow>(line) {
                    Ok(r) => rows.push((i + 1, r)),
                    Err(_) => bad.push(i + 1),
                }
            }
        }
        Format::Csv => {
            let mut header_seen = false;
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                if !header_seen {
                    header_seen = true;
                    let cols: Vec<&str> = line.split(',').map(str::trim).collect();
                    if cols == ["m", "n", "t", "d"] {
                        continue;
                    }
                }
                match parse_csv_line(line) {
                    Some(r) => rows.push((i + 1, r)),
                    None => bad.push(i + 1),
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(rows)
    } else {
        let list: Vec<String> = bad.iter().map(|l| l.to_string()).collect();
        Err(CliError::Input(format!(
            "unparseable rows at line(s) {}",
            list.join(", ")
        )))
    }
}

fn parse_csv_line(line: &str) -> Option<TripleRow> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(line.as_bytes());
    let rec = rdr.records().next()?.ok()?;
    if rec.len() != 4 {
        return None;
    }
    let v: Vec<u64> = rec.iter().map(|f| f.parse().ok()).collect::<Option<_>>()?;
    Some(TripleRow {
        m: v[0],
        n: v[1],
        t: v[2],
        d: v[3],
    })
}
