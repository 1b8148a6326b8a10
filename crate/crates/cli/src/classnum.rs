//! Direct class-number table for a list of `d`.

use std::io::Write;

use classdiv_core::classgroup::class_number;
use serde::Serialize;

use crate::error::CliError;
use crate::triples::Format;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassRow {
    pub d: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disc: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_plus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_norm: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_rank: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regulator: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// One row per input; invalid `d` give an error row and do not stop the run.
pub fn run_classnum(ds: &[u64]) -> Vec<ClassRow> {
    ds.iter()
        .map(|&d| match class_number(d) {
            Ok(c) => ClassRow {
                d,
                disc: Some(c.disc),
                h_plus: Some(c.h_plus),
                h: Some(c.h),
                unit_norm: Some(c.unit_norm),
                two_rank: Some(c.two_rank_narrow),
                regulator: Some(c.regulator),
                error: None,
            },
            Err(e) => ClassRow {
                d,
                disc: None,
                h_plus: None,
                h: None,
                unit_norm: None,
                two_rank: None,
                regulator: None,
                error: Some(e.to_string()),
            },
        })
        .collect()
}

pub fn write_classnum<W: Write>(mut w: W, rows: &[ClassRow], format: Format) -> Result<(), CliError> {
    match format {
        Format::Jsonl => {
            for r in rows {
                serde_json::to_writer(&mut w, r).map_err(|e| CliError::Io(e.into()))?;
                w.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut cw = csv::Writer::from_writer(&mut w);
            cw.write_record([
                "d",
                "disc",
                "h_plus",
                "h",
                "unit_norm",
                "two_rank",
                "regulator",
                "error",
            ])?;
            let opt = |v: Option<String>| v.unwrap_or_default();
            for r in rows {
                cw.write_record([
                    r.d.to_string(),
                    opt(r.disc.map(|v| v.to_string())),
                    opt(r.h_plus.map(|v| v.to_string())),
                    opt(r.h.map(|v| v.to_string())),
                    opt(r.unit_norm.map(|v| v.to_string())),
                    opt(r.two_rank.map(|v| v.to_string())),
                    opt(r.regulator.map(|v| format!("{v:.9}"))),
                    r.error.clone().unwrap_or_default(),
                ])?;
            }
            cw.flush()?;
        }
    }
    w.flush()?;
    Ok(())
}
