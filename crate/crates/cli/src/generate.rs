//! Triple generation for one configuration.

use std::time::{Duration, Instant};

use classdiv_core::family::{verify_prime_divisibility, Enumeration};
use classdiv_core::SolutionTriple;

use crate::config::Config;
use crate::error::CliError;
use crate::triples::TripleRow;

#[derive(Debug, Clone)]
pub struct Generated {
    /// Sorted by `(d, m, n, t)`.
    pub triples: Vec<SolutionTriple>,
    pub distinct_d: usize,
    pub elapsed: Duration,
}

impl Generated {
    pub fn rows(&self) -> Vec<TripleRow> {
        self.triples.iter().map(TripleRow::from).collect()
    }
}

/// Generates at the configuration's single `X`.
pub fn run_generate(cfg: &Config) -> Result<Generated, CliError> {
    generate_at(cfg, cfg.single_x()?)
}

pub fn generate_at(cfg: &Config, x: f64) -> Result<Generated, CliError> {
    let start = Instant::now();
    let system = cfg.system()?;
    let boxes = cfg.boxes_for(x)?;
    let mut e = Enumeration::new(system.classes(), boxes)
        .with_workers(cfg.workers)
        .with_seed(cfg.seed);
    if let Some(s) = cfg.strategy {
        e = e.with_strategy(s.into());
    }
    let triples = e.run()?;
    if let Some(t) = triples.iter().find(|t| !verify_prime_divisibility(t, &system)) {
        return Err(CliError::Arith(format!(
            "generating primes do not divide m^3 - n^2 exactly once for ({}, {}, {}, {})",
            t.m, t.n, t.t, t.d
        )));
    }
    let mut ds: Vec<u64> = triples.iter().map(|t| t.d).collect();
    ds.dedup();
    Ok(Generated {
        distinct_d: ds.len(),
        triples,
        elapsed: start.elapsed(),
    })
}
