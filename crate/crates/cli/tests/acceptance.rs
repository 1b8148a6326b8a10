//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::panic;
use std::process::Command;
use std::time::Instant;

use classdiv_cli::{run_count, write_rows, Config, Format, TripleRow};
use classdiv_core::classgroup::{analytic_class_number_check, class_number, is_fundamental_discriminant, FormCycles};
use classdiv_core::cubic::irreducible_census;
use classdiv_core::family::{build_system, Enumeration, SearchClasses, Strategy, MAX_M};
use classdiv_core::{BoxParameters, CongruenceSystem, RadicandPair, SolutionTriple};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// A system whose class carries a triple with `d = 2170 = 2·5·7·31`.
fn witness_system() -> CongruenceSystem {
    build_system(1, &[5, 7, 31], &[0, 0, 22], &[1, 1, 6]).unwrap()
}

fn keys(v: &[SolutionTriple]) -> Vec<(u64, u64, u64, u64)> {
    v.iter().map(|t| (t.m, t.n, t.t, t.d)).collect()
}

fn system_witness() -> Outcome {
    let start = Instant::now();
    let pair = RadicandPair::new(19, 55).map_err(|e| e.to_string())?;
    let radicand = pair.target_radicand().map_err(|e| e.to_string())?;
    let (d, _) = oracle::squarefree_decompose(radicand as u64);
    ensure!(d == 142, "square-free part of {radicand} is {d}");
    ensure!(pair.cubic().is_irreducible(), "T^3 - 57T - 110 reported reducible");
    let boxes = BoxParameters::desk(1e3, (0.0, 20.0), (0.0, 100.0)).unwrap();
    let got = Enumeration::new(SearchClasses::base(), boxes)
        .run()
        .map_err(|e| e.to_string())?;
    ensure!(keys(&got) == vec![(19, 55, 1, 142)], "enumerator gave {:?}", keys(&got));
    let c = class_number(142).map_err(|e| e.to_string())?;
    ensure!(c.h == 3, "h(142) = {}", c.h);
    let cycles = FormCycles::compute(c.disc).map_err(|e| e.to_string())?;
    ensure!(
        cycles.wide_class_number() == 3,
        "cycle count gives h = {}",
        cycles.wide_class_number()
    );
    let zagier = oracle::zagier_narrow_class_number(c.disc);
    ensure!(
        zagier == c.h_plus,
        "Zagier cycles give h+ = {zagier}, library {}",
        c.h_plus
    );
    let est = analytic_class_number_check(c.disc, 1_000_000).map_err(|e| e.to_string())?;
    let h_from_est = if c.unit_norm == -1 { est } else { est / 2.0 };
    ensure!(
        (h_from_est - 3.0).abs() < 0.5,
        "analytic estimate gives h = {h_from_est}"
    );
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 1.0, "took {secs:.3}s");
    Ok(format!(
        "(19, 55) -> d = 142, h = 3, h+ = {}, analytic h = {h_from_est:.4}, {secs:.3}s",
        c.h_plus
    ))
}

/// Checks `3 | h` and `2 | h` on every triple with irreducible cubic.
fn divisibility_check(triples: &[SolutionTriple]) -> Result<usize, String> {
    let mut checked = 0;
    for t in triples {
        let pair = RadicandPair::new(t.m, t.n).map_err(|e| format!("{t:?}: {e}"))?;
        if !pair.cubic().is_irreducible() {
            continue;
        }
        let c = class_number(t.d).map_err(|e| e.to_string())?;
        ensure!(c.h % 3 == 0, "d = {}: h = {} not divisible by 3", t.d, c.h);
        ensure!(oracle::omega(t.d) >= 3, "d = {}: fewer than three prime factors", t.d);
        ensure!(c.h % 2 == 0, "d = {}: h = {} not divisible by 2", t.d, c.h);
        checked += 1;
    }
    Ok(checked)
}

fn zero_exception_suite() -> Outcome {
    let x = 5e4;
    let all_m = BoxParameters::desk(x, (0.0, MAX_M as f64), (0.0, f64::INFINITY)).unwrap();
    let s = build_system(1, &[5, 7, 11], &[1, 1, 1], &[0, 0, 0]).map_err(|e| e.to_string())?;
    let primary = Enumeration::new(s.classes(), all_m).run().map_err(|e| e.to_string())?;
    ensure!(primary.iter().all(|t| t.d % 385 == 0), "a d is not divisible by 385");
    let n_primary = divisibility_check(&primary)?;
    let w = witness_system();
    let extra = Enumeration::new(w.classes(), all_m).run().map_err(|e| e.to_string())?;
    ensure!(extra.iter().all(|t| t.d % 2170 == 0), "a d is not divisible by 2170");
    let n_extra = divisibility_check(&extra)?;
    Ok(format!(
        "primes (5, 7, 11): {} triples with d <= 5e4 for m <= {MAX_M}, {n_primary} checked, 0 exceptions; \
         primes (5, 7, 31): {} triples, {n_extra} checked, 0 exceptions",
        primary.len(),
        extra.len()
    ))
}

fn genus_sweep() -> Outcome {
    let mut count = 0;
    for d in 2..50_000u64 {
        if !oracle::is_squarefree(d) {
            continue;
        }
        let c = class_number(d).map_err(|e| format!("d = {d}: {e}"))?;
        let rank = oracle::omega(c.disc) as u32 - 1;
        ensure!(
            c.h_plus % (1u64 << rank) == 0,
            "d = {d}: 2^{rank} does not divide h+ = {}",
            c.h_plus
        );
        let cycles = FormCycles::compute(c.disc).map_err(|e| e.to_string())?;
        ensure!(
            cycles.narrow_class_number() == c.h_plus,
            "d = {d}: cycle count disagrees"
        );
        let expected = if c.unit_norm == -1 { c.h_plus } else { c.h_plus / 2 };
        ensure!(
            c.h == expected && (c.h_plus == c.h || c.h_plus == 2 * c.h),
            "d = {d}: h+ = {}, h = {}, norm {}",
            c.h_plus,
            c.h,
            c.unit_norm
        );
        ensure!(cycles.wide_class_number() == c.h, "d = {d}: wide cycle count disagrees");
        count += 1;
    }
    Ok(format!("{count} square-free d in [2, 5e4): 0 exceptions"))
}

fn oracle_agreement() -> Outcome {
    let mut count = 0;
    let mut worst = 0.0f64;
    for disc in 5..=10_000u64 {
        if !is_fundamental_discriminant(disc) {
            continue;
        }
        let h_plus = classdiv_core::classgroup::narrow_class_number(disc).map_err(|e| e.to_string())?;
        let est = analytic_class_number_check(disc, 1_000_000).map_err(|e| e.to_string())?;
        let err = (est - h_plus as f64).abs();
        ensure!(err < 0.5, "D = {disc}: h+ = {h_plus}, estimate {est}");
        worst = worst.max(err);
        count += 1;
    }
    Ok(format!(
        "{count} fundamental D <= 1e4, max |estimate - h+| = {worst:.4}"
    ))
}

fn census() -> Outcome {
    let start = Instant::now();
    // exact counts from the exhaustive divisor-scan oracle
    const PINNED: [((u64, u64), (u64, u64)); 2] = [((20, 20), (1681, 1480)), ((50, 50), (10201, 9602))];
    let mut parts = Vec::new();
    for ((m, n), (total, admissible)) in PINNED {
        let c = irreducible_census(m, n).map_err(|e| e.to_string())?;
        ensure!((c.total, c.admissible) == (total, admissible), "({m}, {n}): got {c:?}");
        ensure!(c.ratio() >= 0.75, "({m}, {n}): ratio {}", c.ratio());
        parts.push(format!("({m}, {n}) {}/{} = {:.4}", c.admissible, c.total, c.ratio()));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 1.0, "took {secs:.3}s");
    Ok(format!("{}, {secs:.3}s", parts.join(", ")))
}

fn exponent_indication() -> Outcome {
    let cfg = Config::from_json(
        r#"{"l": 1, "primes": [5, 7, 31], "a": [0, 0, 22], "b": [1, 1, 6],
            "X_values": [1e4, 1e5, 1e6, 1e7], "enforce_t_range": false,
            "boxes": {"m_lo": 0, "m_hi": 1e11}}"#,
    )
    .map_err(|e| e.to_string())?;
    let report = run_count(&cfg, &cfg.sweep().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let counts: Vec<u64> = report.records.iter().map(|r| r.distinct_d).collect();
    ensure!(counts.iter().all(|&c| c > 0), "non-positive count in {counts:?}");
    ensure!(counts.windows(2).all(|w| w[0] <= w[1]), "decreasing counts {counts:?}");
    let fit = report.fit.as_ref().ok_or("slope report absent")?;
    Ok(format!(
        "distinct_d = {counts:?}, log-log slope {:.4} (the 7/8 exponent is an asymptotic claim, not asserted)",
        fit.slope
    ))
}

fn completeness() -> Outcome {
    let x = 1_000_000u64;
    let m_hi = 2_500u64;
    let want = oracle::brute_triples(19, 108, 55, 324, 0, m_hi, x);
    let boxes = BoxParameters::desk(x as f64, (0.0, m_hi as f64), (0.0, f64::INFINITY)).unwrap();
    for strategy in [Strategy::PairScan, Strategy::NormForm] {
        let got = Enumeration::new(SearchClasses::base(), boxes)
            .with_strategy(strategy)
            .run()
            .map_err(|e| e.to_string())?;
        ensure!(
            keys(&got) == want,
            "{strategy:?}: {} triples vs {} from brute force",
            got.len(),
            want.len()
        );
    }
    let s = witness_system();
    let m = 41_696_551u64;
    let want_sys = oracle::brute_triples_at(m, s.n_residue as u64, s.n_modulus as u64, 10_000);
    let boxes = BoxParameters::desk(1e4, ((m - 1) as f64, m as f64), (0.0, f64::INFINITY)).unwrap();
    let got = classdiv_core::family::enumerate_triples(&s, &boxes).map_err(|e| e.to_string())?;
    ensure!(
        keys(&got) == want_sys,
        "system scan: {:?} vs {:?}",
        keys(&got),
        want_sys
    );
    Ok(format!(
        "base classes, X = 1e6, m <= {m_hi}: {} triples, equal sets for both strategies; system (5, 7, 31) at m = {m}: {} triple",
        want.len(),
        want_sys.len()
    ))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg_path = dir.path().join("config.json");
    std::fs::write(
        &cfg_path,
        r#"{"l": 1, "primes": [5, 7, 31], "a": [0, 0, 22], "b": [1, 1, 6], "X": 1e6,
            "enforce_t_range": false, "boxes": {"m_lo": 0, "m_hi": 2e11}}"#,
    )
    .map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for workers in ["1", "4"] {
        for fmt in ["jsonl", "csv"] {
            let out = dir.path().join(format!("w{workers}.{fmt}"));
            let status = Command::new(env!("CARGO_BIN_EXE_classdiv"))
                .args(["generate", "--config"])
                .arg(&cfg_path)
                .args(["--workers", workers, "--format", fmt, "--output"])
                .arg(&out)
                .output()
                .map_err(|e| e.to_string())?;
            ensure!(
                status.status.success(),
                "generate failed: {}",
                String::from_utf8_lossy(&status.stderr)
            );
            outputs.push((fmt, std::fs::read(&out).map_err(|e| e.to_string())?));
        }
    }
    ensure!(
        outputs[0].1 == outputs[2].1,
        "jsonl output differs between worker counts"
    );
    ensure!(outputs[1].1 == outputs[3].1, "csv output differs between worker counts");
    ensure!(!outputs[0].1.is_empty(), "empty jsonl output");

    // a larger stream from the base classes through the same writer
    let boxes = BoxParameters::desk(3e4, (0.0, 60_000.0), (0.0, f64::INFINITY)).unwrap();
    let mut bytes = Vec::new();
    let mut n = 0;
    for workers in [1, 4] {
        let got = Enumeration::new(SearchClasses::base(), boxes)
            .with_workers(workers)
            .run()
            .map_err(|e| e.to_string())?;
        n = got.len();
        let rows: Vec<TripleRow> = got.iter().map(TripleRow::from).collect();
        let mut buf = Vec::new();
        write_rows(&mut buf, &rows, Format::Jsonl).map_err(|e| e.to_string())?;
        bytes.push(buf);
    }
    ensure!(bytes[0] == bytes[1], "base-class output differs between worker counts");
    Ok(format!(
        "CLI generate with 1 and 4 workers byte-identical (jsonl {} bytes, csv {} bytes); base-class stream of {n} triples identical",
        outputs[0].1.len(),
        outputs[1].1.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("system witness", system_witness),
        ("zero-exception suite", zero_exception_suite),
        ("genus-theory sweep", genus_sweep),
        ("analytic oracle agreement", oracle_agreement),
        ("irreducible cubic census", census),
        ("exponent indication", exponent_indication),
        ("enumerator completeness", completeness),
        ("determinism across worker counts", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(f).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
