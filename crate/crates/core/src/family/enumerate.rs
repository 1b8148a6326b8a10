//! Enumeration of solution triples inside a search box.
//!
//! Two exact strategies produce the same set:
//!
//! * [`Strategy::PairScan`] walks `m` over its class, then `n` over its class,
//!   and splits `(m^3 - n^2)/27` into `t^2 d`.
//! * [`Strategy::NormForm`] walks `m` over its class, then every admissible
//!   square-free `d <= X`, and finds all `(n, t)` with `n^2 + 27 d t^2 = m^3`
//!   by Cornacchia. Cost per `m` scales with the number of candidate `d`
//!   rather than with the width of the `n` box, which is what makes desk-scale
//!   runs against large CRT moduli feasible.

use rayon::prelude::*;

use super::cornacchia::primitive_representations;
use super::{radicand, BoxParameters, CongruenceSystem, FamilyError, SearchClasses, SolutionTriple, MAX_M};
use crate::arith::{factorize, gcd, isqrt, squarefree_part_bounded_with_seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    PairScan,
    NormForm,
}

/// Above this many candidate `d` values the norm-form strategy is not chosen
/// automatically.
const NORM_FORM_MAX_CANDIDATES: u64 = 20_000_000;

#[derive(Debug, Clone)]
pub struct Enumeration {
    classes: SearchClasses,
    boxes: BoxParameters,
    strategy: Strategy,
    workers: usize,
    seed: u64,
}

impl Enumeration {
    pub fn new(classes: SearchClasses, boxes: BoxParameters) -> Self {
        let candidates = boxes.d_cap() / classes.required_divisor();
        let strategy = if candidates <= NORM_FORM_MAX_CANDIDATES {
            Strategy::NormForm
        } else {
            Strategy::PairScan
        };
        Enumeration {
            classes,
            boxes,
            strategy,
            workers: 1,
            seed: 0,
        }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Members of the `m` class inside the `m` box, ascending.
    pub fn m_values(&self) -> Result<Vec<u64>, FamilyError> {
        let (lo, hi) = self.boxes.m_bounds();
        if hi > MAX_M {
            return Err(FamilyError::MTooLarge(hi));
        }
        Ok(class_members(self.classes.m_residue, self.classes.m_modulus, lo, hi).collect())
    }

    /// All triples, sorted by `(d, m, n, t)`.
    pub fn run(&self) -> Result<Vec<SolutionTriple>, FamilyError> {
        self.boxes.validate()?;
        let ms = self.m_values()?;
        let candidates = match self.strategy {
            Strategy::NormForm => candidate_ds(&self.classes, self.boxes.d_cap()),
            Strategy::PairScan => Vec::new(),
        };
        let work = |m: &u64| -> Result<Vec<SolutionTriple>, FamilyError> {
            match self.strategy {
                Strategy::PairScan => self.pair_scan(*m),
                Strategy::NormForm => self.norm_form(*m, &candidates),
            }
        };
        let chunks: Vec<Vec<SolutionTriple>> = if self.workers > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.workers)
                .build()
                .map_err(|e| FamilyError::Invariant(format!("thread pool: {e}")))?;
            pool.install(|| ms.par_iter().map(work).collect::<Result<_, _>>())?
        } else {
            ms.iter().map(work).collect::<Result<_, _>>()?
        };
        let mut out: Vec<SolutionTriple> = chunks.into_iter().flatten().collect();
        out.sort_by_key(|t| t.sort_key());
        out.dedup_by_key(|t| t.sort_key());
        Ok(out)
    }

    fn pair_scan(&self, m: u64) -> Result<Vec<SolutionTriple>, FamilyError> {
        let (n_lo, n_hi) = self.boxes.n_bounds();
        let m3 = (m as u128).pow(3);
        // n^2 < m^3
        let n_max = (isqrt(m3 - 1) as u64).min(n_hi);
        let cap = self.boxes.d_cap() as u128;
        let mut out = Vec::new();
        for n in class_members(self.classes.n_residue, self.classes.n_modulus, n_lo, n_max) {
            let v = m3 - (n as u128) * (n as u128);
            if !v.is_multiple_of(27) {
                return Err(FamilyError::Invariant(format!(
                    "27 does not divide m^3 - n^2 for ({m}, {n})"
                )));
            }
            let Some((d, t)) = squarefree_part_bounded_with_seed(v / 27, cap, self.seed)? else {
                continue;
            };
            let (d, t) = (d as u64, t as u64);
            if self.accepts(m, n, t) {
                out.push(SolutionTriple::new(m, n, t, d)?);
            }
        }
        Ok(out)
    }

    fn norm_form(&self, m: u64, candidates: &[u64]) -> Result<Vec<SolutionTriple>, FamilyError> {
        let (n_lo, n_hi) = self.boxes.n_bounds();
        let m3 = (m as u128).pow(3);
        let m_fac = factorize(m as u128)?;
        if m_fac.primes().any(|p| p <= 3) {
            return Err(FamilyError::Invariant(format!("m = {m} shares a factor with 6")));
        }
        let k_fac = m_fac.pow(3)?;
        let primes: Vec<u128> = m_fac.primes().collect();
        let mut out = Vec::new();
        for &d in candidates {
            let big_n = 27 * d as u128;
            if big_n >= m3 {
                break;
            }
            // gcd(d, m) > 1 would force gcd(m, n) > 1
            if primes.iter().any(|&p| (d as u128).is_multiple_of(p)) {
                continue;
            }
            // cheap Legendre filter on the smallest prime before the full root search
            if let Some(&p) = primes.first() {
                let r = big_n % p;
                if crate::arith::jacobi(p - r, p) != 1 {
                    continue;
                }
            }
            for (x, y) in primitive_representations(m3, &k_fac.factors, big_n) {
                let (n, t) = (x as u64, y as u64);
                if n < n_lo || n > n_hi || !self.classes.contains_n(n as u128) {
                    continue;
                }
                if radicand(m, n) != Some(big_n * (t as u128) * (t as u128)) {
                    return Err(FamilyError::Invariant(format!(
                        "representation check failed for ({m}, {n}, {t}, {d})"
                    )));
                }
                if self.accepts(m, n, t) {
                    out.push(SolutionTriple::new(m, n, t, d)?);
                }
            }
        }
        Ok(out)
    }

    fn accepts(&self, m: u64, n: u64, t: u64) -> bool {
        n >= 1
            && gcd(m as i128, t as i128) == 1
            && gcd(m as i128, n as i128) == 1
            && gcd(t as i128, 6) == 1
            && self.boxes.t_ok(t)
    }
}

/// Members of `residue (mod modulus)` in `[lo, hi]`.
fn class_members(residue: u128, modulus: u128, lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    let lo = lo as u128;
    let first = if lo <= residue {
        residue
    } else {
        residue + (lo - residue).div_ceil(modulus) * modulus
    };
    let step = modulus;
    (0u128..)
        .map(move |k| first + k * step)
        .take_while(move |&v| v <= hi as u128)
        .map(|v| v as u64)
}

/// Square-free `d <= cap` divisible by the classes' required divisor and prime to 3.
fn candidate_ds(classes: &SearchClasses, cap: u64) -> Vec<u64> {
    let r = classes.required_divisor();
    let k_max = (cap / r) as usize;
    let mut squarefree = vec![true; k_max + 1];
    let mut p = 2usize;
    while p * p <= k_max {
        let mut j = p * p;
        while j <= k_max {
            squarefree[j] = false;
            j += p * p;
        }
        p += 1;
    }
    let mut out = Vec::new();
    for k in 1..=k_max as u64 {
        if squarefree[k as usize] && gcd(k as i128, 3 * r as i128) == 1 {
            out.push(r * k);
        }
    }
    out
}

/// Enumerates with the automatically chosen strategy.
pub fn enumerate_triples(system: &CongruenceSystem, boxes: &BoxParameters) -> Result<Vec<SolutionTriple>, FamilyError> {
    Enumeration::new(system.classes(), *boxes).run()
}
