//! Independent re-verification of a triple file.

use std::collections::BTreeMap;

use classdiv_core::arith::{factorize, gcd};
use classdiv_core::classgroup::class_number;
use classdiv_core::{ClassData, Cubic};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::triples::TripleRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `m^3 - n^2 = 27 t^2 d`
    Identity,
    /// `d` square-free and greater than 1
    Squarefree,
    /// `T^3 - 3mT - 2n` has no rational root
    Irreducible,
    ClassNumber,
    ThreeDivides,
    TwoPowerDivides,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub line: usize,
    pub row: TripleRow,
    pub check: Check,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerifyReport {
    pub rows: usize,
    /// Rows with `d <= d_cap`.
    pub checked: usize,
    pub skipped: usize,
    /// Rows whose class number was examined for `3 | h`.
    pub three_checks: usize,
    /// Rows with `ω(d) >= l + 2` whose class number was examined for `2^l | h`.
    pub two_l_checks: usize,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub l: u32,
    pub d_cap: u64,
    pub workers: usize,
}

/// Checks every row with `d <= d_cap`: the identity, square-freeness of `d`,
/// irreducibility of the cubic, `3 | h`, and `2^l | h` when `ω(d) >= l + 2`.
pub fn run_verify(rows: &[(usize, TripleRow)], opts: VerifyOptions) -> Result<VerifyReport, CliError> {
    let mut report = VerifyReport {
        rows: rows.len(),
        ..Default::default()
    };
    let mut pending = Vec::new();
    for &(line, row) in rows {
        if row.d > opts.d_cap {
            report.skipped += 1;
            continue;
        }
        report.checked += 1;
        let fail = |check, detail: String| Failure {
            line,
            row,
            check,
            detail,
        };
        if let Some(detail) = identity_error(row) {
            report.failures.push(fail(Check::Identity, detail));
            continue;
        }
        let omega = match factorize(row.d as u128) {
            Ok(f) if row.d > 1 && f.is_squarefree() => f.omega(),
            Ok(_) => {
                report.failures.push(fail(
                    Check::Squarefree,
                    format!("d = {} is not a square-free integer > 1", row.d),
                ));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let cubic = Cubic::new(-3 * row.m as i128, -2 * row.n as i128);
        if let Some(r) = cubic.integer_root() {
            report
                .failures
                .push(fail(Check::Irreducible, format!("T = {r} is a root of T^3 - 3mT - 2n")));
            continue;
        }
        pending.push((line, row, omega));
    }

    let mut ds: Vec<u64> = pending.iter().map(|&(_, r, _)| r.d).collect();
    ds.sort_unstable();
    ds.dedup();
    let data = class_numbers(&ds, opts.workers)?;

    let two_l = 1u64.checked_shl(opts.l).filter(|&v| v != 0);
    for (line, row, omega) in pending {
        let fail = |check, detail: String| Failure {
            line,
            row,
            check,
            detail,
        };
        let cd = match &data[&row.d] {
            Ok(cd) => cd,
            Err(detail) => {
                report.failures.push(fail(Check::ClassNumber, detail.clone()));
                continue;
            }
        };
        report.three_checks += 1;
        if cd.h % 3 != 0 {
            report.failures.push(fail(Check::ThreeDivides, format!("h = {}", cd.h)));
        }
        if omega >= opts.l as usize + 2 {
            report.two_l_checks += 1;
            match two_l {
                Some(q) if cd.h % q == 0 => {}
                _ => report
                    .failures
                    .push(fail(Check::TwoPowerDivides, format!("h = {}, l = {}", cd.h, opts.l))),
            }
        }
    }
    Ok(report)
}

fn identity_error(row: TripleRow) -> Option<String> {
    let (m, n, t, d) = (row.m as u128, row.n as u128, row.t as u128, row.d as u128);
    let lhs = m.checked_mul(m).and_then(|v| v.checked_mul(m));
    let Some(lhs) = lhs else {
        return Some("m^3 overflows 128 bits".into());
    };
    let n2 = n * n;
    let Some(v) = lhs.checked_sub(n2).filter(|&v| v > 0) else {
        return Some("m^3 <= n^2".into());
    };
    let rhs = 27u128.checked_mul(t * t).and_then(|x| x.checked_mul(d));
    if rhs != Some(v) {
        return Some(format!(
            "m^3 - n^2 = {v} but 27 t^2 d = {}",
            rhs.map_or("overflow".into(), |x| x.to_string())
        ));
    }
    if gcd(row.m as i128, row.n as i128) != 1 {
        return Some("gcd(m, n) != 1".into());
    }
    None
}

type ClassTable = BTreeMap<u64, Result<ClassData, String>>;

/// Class data for each `d`, computed on `workers` threads.
pub fn class_numbers(ds: &[u64], workers: usize) -> Result<ClassTable, CliError> {
    let one = |&d: &u64| (d, class_number(d).map_err(|e| e.to_string()));
    if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| CliError::Arith(format!("thread pool: {e}")))?;
        Ok(pool.install(|| ds.par_iter().map(one).collect()))
    } else {
        Ok(ds.iter().map(one).collect())
    }
}
