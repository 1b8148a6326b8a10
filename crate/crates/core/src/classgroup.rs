//! Class numbers of real quadratic fields from first principles.
//!
//! The narrow class number `h⁺(D)` is the number of cycles of reduced
//! indefinite forms of discriminant `D` under the reduction step `ρ`. The wide
//! class number `h` follows from the norm of the fundamental unit, which is
//! computed from the continued fraction of `(b₀ + √D)/2`; the cycle structure
//! gives an independent route to the same `h` (cycles paired under
//! `(a, b, c) ↦ (-a, b, -c)`) and `class_number` insists they agree.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{factorize, gcd, is_square, isqrt, kronecker};
use crate::error::ArithError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassGroupError {
    #[error("d = {0} must be greater than 1")]
    TooSmall(u64),
    #[error("d = {0} is not square-free")]
    NotSquarefree(u64),
    #[error("D = {0} is not a fundamental discriminant")]
    NotFundamental(u64),
    #[error("form ({a}, {b}, {c}) does not have positive non-square discriminant")]
    BadForm { a: i64, b: i64, c: i64 },
    #[error("continued fraction for D = {0} exceeded its iteration cap")]
    IterationCap(u64),
    #[error("class number routes disagree for D = {disc}: {detail}")]
    Inconsistent { disc: u64, detail: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn is_squarefree(n: u64) -> bool {
    factorize(n as u128).map(|f| f.is_squarefree()).unwrap_or(false)
}

/// `d` if `d ≡ 1 (mod 4)`, else `4d`, for square-free `d > 1`.
pub fn fundamental_discriminant(d: u64) -> Result<u64, ClassGroupError> {
    if d <= 1 {
        return Err(ClassGroupError::TooSmall(d));
    }
    if !is_squarefree(d) {
        return Err(ClassGroupError::NotSquarefree(d));
    }
    if d % 4 == 1 {
        Ok(d)
    } else {
        d.checked_mul(4)
            .ok_or(ClassGroupError::Arith(ArithError::Overflow("fundamental_discriminant")))
    }
}

/// True for the discriminants of real quadratic fields.
pub fn is_fundamental_discriminant(disc: u64) -> bool {
    if disc <= 1 {
        return false;
    }
    match disc % 4 {
        1 => is_squarefree(disc),
        0 => {
            let m = disc / 4;
            (m % 4 == 2 || m % 4 == 3) && is_squarefree(m)
        }
        _ => false,
    }
}

fn check_fundamental(disc: u64) -> Result<(), ClassGroupError> {
    if is_fundamental_discriminant(disc) {
        Ok(())
    } else {
        Err(ClassGroupError::NotFundamental(disc))
    }
}

/// `a x^2 + b xy + c y^2` with positive non-square discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndefiniteForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl IndefiniteForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self, ClassGroupError> {
        let disc = (b as i128) * (b as i128) - 4 * (a as i128) * (c as i128);
        if a == 0 || disc <= 0 || is_square(disc) || disc > i64::MAX as i128 {
            return Err(ClassGroupError::BadForm { a, b, c });
        }
        Ok(IndefiniteForm { a, b, c })
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// `0 < b < √D` and `√D - b < 2|a| < √D + b`.
    pub fn is_reduced(&self) -> bool {
        let s = isqrt(self.discriminant() as u128) as i64;
        let two_a = 2 * self.a.abs();
        // √D is irrational, so strict inequalities against √D become
        // non-strict ones against floor(√D)
        self.b > 0 && self.b <= s && two_a > s - self.b && two_a <= s + self.b
    }

    /// One reduction step: `(a, b, c) ↦ (c, b', (b'^2 - D)/4c)` with
    /// `b' ≡ -b (mod 2c)` normalized into `(√D - 2|c|, √D)` when `|c| < √D`
    /// and into `(-|c|, |c|]` otherwise.
    pub fn rho(&self) -> IndefiniteForm {
        let disc = self.discriminant();
        let s = isqrt(disc as u128) as i64;
        let c_abs = self.c.abs();
        let two_c = 2 * c_abs;
        let b_new = if c_abs <= s {
            s - (s + self.b).rem_euclid(two_c)
        } else {
            let r = (-self.b).rem_euclid(two_c);
            if r > c_abs {
                r - two_c
            } else {
                r
            }
        };
        let c_new = (b_new * b_new - disc) / (4 * self.c);
        IndefiniteForm {
            a: self.c,
            b: b_new,
            c: c_new,
        }
    }

    /// `(-a, b, -c)`: the class of the form times a principal ideal with a
    /// generator of negative norm.
    pub fn negate(&self) -> IndefiniteForm {
        IndefiniteForm {
            a: -self.a,
            b: self.b,
            c: -self.c,
        }
    }

    pub fn is_primitive(&self) -> bool {
        gcd(gcd(self.a as i128, self.b as i128) as i128, self.c as i128) == 1
    }
}

/// Every reduced form of discriminant `disc`.
pub fn reduced_forms(disc: u64) -> Vec<IndefiniteForm> {
    let d = disc as i64;
    let s = isqrt(disc as u128) as i64;
    let mut out = Vec::new();
    let mut b = if d % 2 == 0 { 2 } else { 1 };
    while b <= s {
        let n = (d - b * b) / 4;
        let lo = (s - b + 2) / 2; // 2|a| >= s - b + 1
        let hi = (s + b) / 2; // 2|a| <= s + b
        for a in lo.max(1)..=hi {
            if n % a == 0 {
                let c = n / a;
                out.push(IndefiniteForm { a, b, c: -c });
                out.push(IndefiniteForm { a: -a, b, c });
            }
        }
        b += 2;
    }
    out
}

/// The reduced forms of one discriminant partitioned into `ρ`-cycles.
#[derive(Debug, Clone)]
pub struct FormCycles {
    disc: u64,
    forms: Vec<IndefiniteForm>,
    cycle_of: Vec<usize>,
    cycles: Vec<Vec<usize>>,
    index: HashMap<(i64, i64), usize>,
}

impl FormCycles {
    pub fn compute(disc: u64) -> Result<Self, ClassGroupError> {
        check_fundamental(disc)?;
        let forms = reduced_forms(disc);
        let index: HashMap<(i64, i64), usize> = forms.iter().enumerate().map(|(i, f)| ((f.a, f.b), i)).collect();
        let mut cycle_of = vec![usize::MAX; forms.len()];
        let mut cycles = Vec::new();
        for start in 0..forms.len() {
            if cycle_of[start] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cycle = Vec::new();
            let mut cur = start;
            loop {
                cycle_of[cur] = id;
                cycle.push(cur);
                let next = forms[cur].rho();
                cur = *index
                    .get(&(next.a, next.b))
                    .ok_or_else(|| ClassGroupError::Inconsistent {
                        disc,
                        detail: format!("rho{:?} = {:?} is not reduced", forms[cur], next),
                    })?;
                if cur == start {
                    break;
                }
                if cycle_of[cur] != usize::MAX {
                    return Err(ClassGroupError::Inconsistent {
                        disc,
                        detail: "rho is not a permutation of the reduced forms".into(),
                    });
                }
            }
            cycles.push(cycle);
        }
        Ok(FormCycles {
            disc,
            forms,
            cycle_of,
            cycles,
            index,
        })
    }

    pub fn discriminant(&self) -> u64 {
        self.disc
    }

    pub fn forms(&self) -> &[IndefiniteForm] {
        &self.forms
    }

    pub fn cycles(&self) -> impl Iterator<Item = Vec<IndefiniteForm>> + '_ {
        self.cycles.iter().map(|c| c.iter().map(|&i| self.forms[i]).collect())
    }

    pub fn narrow_class_number(&self) -> u64 {
        self.cycles.len() as u64
    }

    fn negated_cycle(&self, id: usize) -> usize {
        let f = self.forms[self.cycles[id][0]].negate();
        self.cycle_of[self.index[&(f.a, f.b)]]
    }

    /// Number of orbits of cycles under negation.
    pub fn wide_class_number(&self) -> u64 {
        (0..self.cycles.len()).filter(|&i| i <= self.negated_cycle(i)).count() as u64
    }

    /// The cycle containing the principal form `(1, b, (b^2 - D)/4)`.
    pub fn principal_cycle(&self) -> usize {
        let s = isqrt(self.disc as u128) as i64;
        let b = if (s - self.disc as i64) % 2 == 0 { s } else { s - 1 };
        self.cycle_of[self.index[&(1, b)]]
    }

    /// The fundamental unit has norm -1 iff the principal cycle is closed
    /// under negation.
    pub fn unit_norm_from_cycles(&self) -> i8 {
        let p = self.principal_cycle();
        if self.negated_cycle(p) == p {
            -1
        } else {
            1
        }
    }
}

/// `h⁺(D)`: number of cycles of reduced forms.
pub fn narrow_class_number(disc: u64) -> Result<u64, ClassGroupError> {
    Ok(FormCycles::compute(disc)?.narrow_class_number())
}

/// Smallest unit `(x + y√D)/2 > 1` of the maximal order.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalUnit {
    pub x: BigUint,
    pub y: BigUint,
    pub norm: i8,
    pub regulator: f64,
}

impl FundamentalUnit {
    /// `x^2 - D y^2` as a signed value; `±4` for a correct unit.
    pub fn norm_times_four(&self, disc: u64) -> i64 {
        let lhs = &self.x * &self.x;
        let rhs = &self.y * &self.y * BigUint::from(disc);
        if lhs >= rhs {
            (lhs - rhs).to_i64().unwrap_or(i64::MAX)
        } else {
            -(rhs - lhs).to_i64().unwrap_or(i64::MAX)
        }
    }
}

fn ln_biguint(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().expect("64 bits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Continued fraction of `(b₀ + √D)/2`, `b₀ ≡ D (mod 2)`, run until the
/// complete quotient returns to denominator 2.
pub fn fundamental_unit(disc: u64) -> Result<FundamentalUnit, ClassGroupError> {
    check_fundamental(disc)?;
    let d = disc as i128;
    let s = isqrt(disc as u128) as i128;
    let b0 = d % 2;
    let (mut p, mut q) = (b0, 2i128);
    // convergents h_k / k_k
    let (mut h_prev, mut h) = (BigUint::zero(), BigUint::one());
    let (mut k_prev, mut k) = (BigUint::one(), BigUint::zero());
    let cap = 2 * disc as usize + 16;
    for step in 1..=cap {
        let a = (p + s) / q;
        let a_big = BigUint::from(a as u128);
        let h_next = &a_big * &h + &h_prev;
        let k_next = &a_big * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        p = a * q - p;
        q = (d - p * p) / q;
        if q == 2 {
            let x = BigUint::from(2u32) * &h - BigUint::from(b0 as u32) * &k;
            let y = k;
            let norm = if step % 2 == 0 { 1 } else { -1 };
            let sqrt_d = (disc as f64).sqrt();
            let regulator = if x.bits() < 900 {
                ((x.to_f64().unwrap() + y.to_f64().unwrap() * sqrt_d) / 2.0).ln()
            } else {
                // (x + y√D)/2 ≈ x for large units
                ln_biguint(&x)
            };
            return Ok(FundamentalUnit { x, y, norm, regulator });
        }
    }
    Err(ClassGroupError::IterationCap(disc))
}

/// Number of distinct primes dividing `D`, minus one: the 2-rank of the
/// narrow class group. `disc` must exceed 1.
pub fn genus_two_rank(disc: u64) -> u32 {
    let w = factorize(disc as u128).expect("disc > 0").omega() as u32;
    w.saturating_sub(1)
}

/// Per-field record.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassData {
    pub d: u64,
    pub disc: u64,
    pub h_plus: u64,
    pub h: u64,
    pub unit_norm: i8,
    pub two_rank_narrow: u32,
    pub regulator: f64,
}

/// Class data of `Q(√d)` for square-free `d > 1`.
pub fn class_number(d: u64) -> Result<ClassData, ClassGroupError> {
    let disc = fundamental_discriminant(d)?;
    let cycles = FormCycles::compute(disc)?;
    let unit = fundamental_unit(disc)?;
    let h_plus = cycles.narrow_class_number();
    let h = match unit.norm {
        -1 => h_plus,
        _ if h_plus % 2 == 0 => h_plus / 2,
        _ => {
            return Err(ClassGroupError::Inconsistent {
                disc,
                detail: format!("unit norm +1 with odd h+ = {h_plus}"),
            })
        }
    };
    let cycle_norm = cycles.unit_norm_from_cycles();
    let cycle_h = cycles.wide_class_number();
    if cycle_norm != unit.norm || cycle_h != h {
        return Err(ClassGroupError::Inconsistent {
            disc,
            detail: format!(
                "continued fraction gives norm {} and h = {h}; cycles give norm {cycle_norm} and h = {cycle_h}",
                unit.norm
            ),
        });
    }
    Ok(ClassData {
        d,
        disc,
        h_plus,
        h,
        unit_norm: unit.norm,
        two_rank_narrow: genus_two_rank(disc),
        regulator: unit.regulator,
    })
}

/// `(√D / R⁺) · Σ_{k ≤ terms} χ_D(k)/k`, an estimate of `h⁺(D)`, where `R⁺`
/// is the log of the smallest totally positive unit above 1 (twice the
/// regulator when the fundamental unit has norm -1).
pub fn analytic_class_number_check(disc: u64, terms: u64) -> Result<f64, ClassGroupError> {
    check_fundamental(disc)?;
    let unit = fundamental_unit(disc)?;
    let narrow_regulator = if unit.norm == -1 {
        2.0 * unit.regulator
    } else {
        unit.regulator
    };
    let period = disc as usize;
    let chi: Vec<f64> = (0..period).map(|k| kronecker(disc as i128, k as i128) as f64).collect();
    let mut sum = 0.0f64;
    let mut r = 1usize % period;
    for k in 1..=terms {
        sum += chi[r] / k as f64;
        r += 1;
        if r == period {
            r = 0;
        }
    }
    Ok((disc as f64).sqrt() / narrow_regulator * sum)
}

/// Whether `3 | h` and `2^l | h` for `Q(√d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisibilityCertificate {
    pub three_divides: bool,
    pub two_l_divides: bool,
}

pub fn divisibility_certificate(d: u64, l: u32) -> Result<DivisibilityCertificate, ClassGroupError> {
    let data = class_number(d)?;
    let two_l = 1u64.checked_shl(l).unwrap_or(0);
    Ok(DivisibilityCertificate {
        three_divides: data.h % 3 == 0,
        two_l_divides: two_l != 0 && data.h % two_l == 0,
    })
}
