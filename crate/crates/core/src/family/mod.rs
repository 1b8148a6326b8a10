//! CRT residue systems for `(m, n)` and enumeration of solutions of
//! `m^3 - n^2 = 27 t^2 d` with square-free `d`.
//!
//! Every `m ≡ 19 (mod 108)`, `n ≡ 55 (mod 324)` meets the hypotheses of the
//! `T^3 - 3mT - 2n` criterion, and `m ≡ 1 + a_i p_i`, `n ≡ 1 + b_i p_i
//! (mod p_i^2)` with `3a_i - 2b_i ≢ 0 (mod p_i)` forces `p_i ∥ m^3 - n^2`, so
//! every `p_i` divides `d`.

mod cornacchia;
mod enumerate;

pub use enumerate::{enumerate_triples, Enumeration, Strategy};

use crate::arith::{crt_solve, factorize, gcd, is_prime, Factorization};
use crate::error::ArithError;

/// Largest `m` with `m^3 < 2^127`.
pub const MAX_M: u64 = 5_541_191_377_756;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FamilyError {
    #[error("expected l + 2 = {expected} primes, got {got}")]
    WrongPrimeCount { expected: usize, got: usize },
    #[error("residue lists a and b must have one entry per prime ({primes}), got {a} and {b}")]
    LengthMismatch { primes: usize, a: usize, b: usize },
    #[error("prime {0} is below 5")]
    PrimeTooSmall(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} listed twice")]
    DuplicatePrime(u64),
    #[error("residue condition 3a_i - 2b_i ≢ 0 (mod p_i) fails at i = {index}: 3·{a} - 2·{b} ≡ 0 (mod {prime})")]
    ResidueCondition { index: usize, prime: u64, a: i64, b: i64 },
    #[error("l must be at least 1")]
    ZeroL,
    #[error("X must exceed 1, got {0}")]
    BadX(f64),
    #[error("invalid box: {0}")]
    BadBox(String),
    #[error("m up to {0} leaves the exact 127-bit range")]
    MTooLarge(u64),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Residue classes of `m` and `n` plus the primes forced into every `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchClasses {
    pub m_residue: u128,
    pub m_modulus: u128,
    pub n_residue: u128,
    pub n_modulus: u128,
    pub primes: Vec<u64>,
}

impl SearchClasses {
    /// `m ≡ 19 (mod 108)`, `n ≡ 55 (mod 324)` with no extra primes.
    pub fn base() -> Self {
        SearchClasses {
            m_residue: 19,
            m_modulus: 108,
            n_residue: 55,
            n_modulus: 324,
            primes: Vec::new(),
        }
    }

    /// Product that divides `d` for every solution in these classes:
    /// `2 = v_2(m^3 - n^2)` contributes 2, each `p_i` contributes itself.
    pub fn required_divisor(&self) -> u64 {
        2 * self.primes.iter().product::<u64>()
    }

    pub fn contains_m(&self, m: u128) -> bool {
        m % self.m_modulus == self.m_residue
    }

    pub fn contains_n(&self, n: u128) -> bool {
        n % self.n_modulus == self.n_residue
    }
}

/// Residue data for one choice of `l`, primes `p_i` and residues `a_i`, `b_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSystem {
    pub l: u32,
    pub primes: Vec<u64>,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub m_residue: u128,
    pub m_modulus: u128,
    pub n_residue: u128,
    pub n_modulus: u128,
}

/// Validates the inputs and solves both CRT systems.
pub fn build_system(l: u32, primes: &[u64], a: &[i64], b: &[i64]) -> Result<CongruenceSystem, FamilyError> {
    if l == 0 {
        return Err(FamilyError::ZeroL);
    }
    let expected = l as usize + 2;
    if primes.len() != expected {
        return Err(FamilyError::WrongPrimeCount {
            expected,
            got: primes.len(),
        });
    }
    if a.len() != primes.len() || b.len() != primes.len() {
        return Err(FamilyError::LengthMismatch {
            primes: primes.len(),
            a: a.len(),
            b: b.len(),
        });
    }
    for (i, &p) in primes.iter().enumerate() {
        if p < 5 {
            return Err(FamilyError::PrimeTooSmall(p));
        }
        if !is_prime(p as u128) {
            return Err(FamilyError::NotPrime(p));
        }
        if primes[..i].contains(&p) {
            return Err(FamilyError::DuplicatePrime(p));
        }
    }
    for i in 0..primes.len() {
        let p = primes[i] as i128;
        if (3 * a[i] as i128 - 2 * b[i] as i128).rem_euclid(p) == 0 {
            return Err(FamilyError::ResidueCondition {
                index: i,
                prime: primes[i],
                a: a[i],
                b: b[i],
            });
        }
    }
    let lift = |coef: &[i64]| -> Vec<(i128, u128)> {
        primes
            .iter()
            .zip(coef)
            .map(|(&p, &c)| {
                let p = p as i128;
                ((1 + c as i128 * p).rem_euclid(p * p), (p * p) as u128)
            })
            .collect()
    };
    let mut m_cong = vec![(19i128, 108u128)];
    m_cong.extend(lift(a));
    let mut n_cong = vec![(55i128, 324u128)];
    n_cong.extend(lift(b));
    let m_sol = crt_solve(&m_cong)?;
    let n_sol = crt_solve(&n_cong)?;
    Ok(CongruenceSystem {
        l,
        primes: primes.to_vec(),
        a: a.to_vec(),
        b: b.to_vec(),
        m_residue: m_sol.residue,
        m_modulus: m_sol.modulus,
        n_residue: n_sol.residue,
        n_modulus: n_sol.modulus,
    })
}

impl CongruenceSystem {
    pub fn classes(&self) -> SearchClasses {
        SearchClasses {
            m_residue: self.m_residue,
            m_modulus: self.m_modulus,
            n_residue: self.n_residue,
            n_modulus: self.n_modulus,
            primes: self.primes.clone(),
        }
    }

    pub fn prime_product(&self) -> u64 {
        self.primes.iter().product()
    }
}

/// Search boxes: `t ∈ (t_lo, t_hi]`, `m ∈ (m_lo, m_hi]`, `n ∈ (n_lo, n_hi]`,
/// and `d <= x`. The `t` range is only applied when `enforce_t_range` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxParameters {
    pub x: f64,
    pub t_lo: f64,
    pub t_hi: f64,
    pub m_lo: f64,
    pub m_hi: f64,
    pub n_lo: f64,
    pub n_hi: f64,
    pub enforce_t_range: bool,
}

/// Dyadic boxes at `T = X^{1/16}`, `M = T^{2/3} X^{1/3} / 2`, `N = T X^{1/2} / 16`.
pub fn paper_boxes(x: f64) -> Result<BoxParameters, FamilyError> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(FamilyError::BadX(x));
    }
    let t = x.powf(1.0 / 16.0);
    let m = t.powf(2.0 / 3.0) * x.cbrt() / 2.0;
    let n = t * x.sqrt() / 16.0;
    Ok(BoxParameters {
        x,
        t_lo: t,
        t_hi: 2.0 * t,
        m_lo: m,
        m_hi: 2.0 * m,
        n_lo: n,
        n_hi: 2.0 * n,
        enforce_t_range: true,
    })
}

impl BoxParameters {
    /// Explicit `m` and `n` boxes with no `t` restriction. `n_hi` may be
    /// infinite, in which case `n` is bounded only by `n^2 < m^3`.
    pub fn desk(x: f64, m_range: (f64, f64), n_range: (f64, f64)) -> Result<Self, FamilyError> {
        let b = BoxParameters {
            x,
            t_lo: 0.0,
            t_hi: f64::INFINITY,
            m_lo: m_range.0,
            m_hi: m_range.1,
            n_lo: n_range.0,
            n_hi: n_range.1,
            enforce_t_range: false,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        if !(self.x >= 1.0) || !self.x.is_finite() {
            return Err(FamilyError::BadX(self.x));
        }
        if !(self.m_lo >= 0.0 && self.m_hi >= self.m_lo && self.m_hi.is_finite()) {
            return Err(FamilyError::BadBox(format!("m range ({}, {}]", self.m_lo, self.m_hi)));
        }
        if !(self.n_lo >= 0.0 && self.n_hi >= self.n_lo) {
            return Err(FamilyError::BadBox(format!("n range ({}, {}]", self.n_lo, self.n_hi)));
        }
        if !(self.t_lo >= 0.0 && self.t_hi >= self.t_lo) {
            return Err(FamilyError::BadBox(format!("t range ({}, {}]", self.t_lo, self.t_hi)));
        }
        Ok(())
    }

    pub fn with_t_range(mut self, enforce: bool) -> Self {
        self.enforce_t_range = enforce;
        self
    }

    /// Integer bounds `[lo, hi]` of the `m` box.
    pub fn m_bounds(&self) -> (u64, u64) {
        (open_lower(self.m_lo), closed_upper(self.m_hi))
    }

    pub fn n_bounds(&self) -> (u64, u64) {
        (open_lower(self.n_lo), closed_upper(self.n_hi))
    }

    pub fn d_cap(&self) -> u64 {
        closed_upper(self.x)
    }

    pub fn t_ok(&self, t: u64) -> bool {
        !self.enforce_t_range || ((t as f64) > self.t_lo && (t as f64) <= self.t_hi)
    }
}

fn open_lower(v: f64) -> u64 {
    if v < 0.0 {
        0
    } else {
        (v.floor() as u64).saturating_add(1)
    }
}

fn closed_upper(v: f64) -> u64 {
    if v >= u64::MAX as f64 {
        u64::MAX
    } else {
        v.floor() as u64
    }
}

/// One witness `m^3 - n^2 = 27 t^2 d` with square-free `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionTriple {
    pub m: u64,
    pub n: u64,
    pub t: u64,
    pub d: u64,
    pub radicand_factorization: Factorization,
}

/// `m^3 - n^2`, or `None` when it is not positive.
pub fn radicand(m: u64, n: u64) -> Option<u128> {
    let m3 = (m as u128).checked_mul(m as u128)?.checked_mul(m as u128)?;
    m3.checked_sub((n as u128) * (n as u128)).filter(|&v| v > 0)
}

impl SolutionTriple {
    /// Builds the triple after checking the identity, square-freeness of `d`
    /// and the gcd side conditions.
    pub fn new(m: u64, n: u64, t: u64, d: u64) -> Result<Self, FamilyError> {
        let v = radicand(m, n).ok_or_else(|| FamilyError::Invariant(format!("m^3 <= n^2 for ({m}, {n})")))?;
        let rhs = 27u128
            .checked_mul(t as u128 * t as u128)
            .and_then(|x| x.checked_mul(d as u128));
        if rhs != Some(v) {
            return Err(FamilyError::Invariant(format!(
                "m^3 - n^2 != 27 t^2 d for ({m}, {n}, {t}, {d})"
            )));
        }
        let d_fac = factorize(d as u128)?;
        if !d_fac.is_squarefree() {
            return Err(FamilyError::Invariant(format!("d = {d} is not square-free")));
        }
        if gcd(m as i128, t as i128) != 1 || gcd(m as i128, n as i128) != 1 || gcd(t as i128, 6) != 1 {
            return Err(FamilyError::Invariant(format!(
                "gcd side condition fails for ({m}, {n}, {t})"
            )));
        }
        let radicand_factorization = factorize(27)?.mul(&factorize(t as u128)?.pow(2)?)?.mul(&d_fac)?;
        debug_assert_eq!(radicand_factorization.n, v);
        Ok(SolutionTriple {
            m,
            n,
            t,
            d,
            radicand_factorization,
        })
    }

    pub fn sort_key(&self) -> (u64, u64, u64, u64) {
        (self.d, self.m, self.n, self.t)
    }
}

/// Every generating prime divides `d` exactly once in `m^3 - n^2`.
pub fn verify_prime_divisibility(triple: &SolutionTriple, system: &CongruenceSystem) -> bool {
    let Some(v) = radicand(triple.m, triple.n) else {
        return false;
    };
    system.primes.iter().all(|&p| {
        let p = p as u128;
        (triple.d as u128).is_multiple_of(p) && v % (p * p) != 0
    })
}
