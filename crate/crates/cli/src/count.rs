//! Counting distinct fields over an `X` sweep and fitting a log-log slope.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::{Duration, Instant};

use classdiv_core::Cubic;

use crate::config::Config;
use crate::error::CliError;
use crate::generate::generate_at;
use crate::verify::class_numbers;

#[derive(Debug, Clone, PartialEq)]
pub struct CountRecord {
    pub x: f64,
    /// Distinct square-free `d <= X` found at this or any earlier `X` of the sweep.
    pub distinct_d: u64,
    /// Those `d` carried by a triple with irreducible cubic and with `3 | h`.
    pub verified_3: u64,
    /// Those of `verified_3` with `2^l | h` as well.
    pub verified_2l: u64,
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeFit {
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountReport {
    pub records: Vec<CountRecord>,
    /// `None` when fewer than two records have a positive count.
    pub fit: Option<SlopeFit>,
}

/// Least squares line through `(ln X, ln distinct_d)` over records with a
/// positive count. Needs two distinct abscissae.
pub fn slope_fit(records: &[CountRecord]) -> Option<SlopeFit> {
    let points: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.distinct_d > 0)
        .map(|r| (r.x.ln(), (r.distinct_d as f64).ln()))
        .collect();
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Some(SlopeFit {
        points,
        slope,
        intercept: my - slope * mx,
    })
}

pub fn run_count(cfg: &Config, x_values: &[f64]) -> Result<CountReport, CliError> {
    if x_values.is_empty() {
        return Err(CliError::Config("X_values: empty list".into()));
    }
    if x_values.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(CliError::Config("X_values: must be strictly ascending".into()));
    }
    // d -> whether some triple carrying it has an irreducible cubic
    let mut seen: BTreeMap<u64, bool> = BTreeMap::new();
    let mut verified: BTreeMap<u64, (bool, bool)> = BTreeMap::new();
    let two_l = 1u64.checked_shl(cfg.l).filter(|&v| v != 0);
    let mut records = Vec::with_capacity(x_values.len());
    for &x in x_values {
        let start = Instant::now();
        let g = generate_at(cfg, x)?;
        for t in &g.triples {
            let irreducible = Cubic::new(-3 * t.m as i128, -2 * t.n as i128).is_irreducible();
            *seen.entry(t.d).or_insert(false) |= irreducible;
        }
        let new: Vec<u64> = seen
            .iter()
            .filter(|(d, &irr)| irr && !verified.contains_key(d))
            .map(|(&d, _)| d)
            .collect();
        for (d, cd) in class_numbers(&new, cfg.workers)? {
            let cd = cd.map_err(CliError::Arith)?;
            let three = cd.h % 3 == 0;
            let two = three && two_l.is_some_and(|q| cd.h % q == 0);
            verified.insert(d, (three, two));
        }
        let cap = x.floor() as u64;
        let in_range: BTreeSet<u64> = seen.keys().copied().filter(|&d| d <= cap).collect();
        let v3 = in_range.iter().filter(|d| verified.get(d).is_some_and(|v| v.0)).count() as u64;
        let v2 = in_range.iter().filter(|d| verified.get(d).is_some_and(|v| v.1)).count() as u64;
        records.push(CountRecord {
            x,
            distinct_d: in_range.len() as u64,
            verified_3: v3,
            verified_2l: v2,
            wall_time: start.elapsed(),
        });
    }
    let fit = slope_fit(&records);
    Ok(CountReport { records, fit })
}

pub fn write_count_csv<W: Write>(w: W, report: &CountReport) -> Result<(), CliError> {
    let mut cw = csv::Writer::from_writer(w);
    cw.write_record(["X", "distinct_d", "verified_3", "verified_2l", "seconds"])?;
    for r in &report.records {
        cw.write_record([
            r.x.to_string(),
            r.distinct_d.to_string(),
            r.verified_3.to_string(),
            r.verified_2l.to_string(),
            format!("{:.3}", r.wall_time.as_secs_f64()),
        ])?;
    }
    cw.flush()?;
    Ok(())
}

/// One-line description of the fit, or `slope: absent`.
pub fn describe_fit(fit: Option<&SlopeFit>) -> String {
    match fit {
        Some(f) => format!(
            "slope: {:.4} intercept: {:.4} points: {}",
            f.slope,
            f.intercept,
            f.points.len()
        ),
        None => "slope: absent".into(),
    }
}
