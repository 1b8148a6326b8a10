//! Monic depressed cubics `T^3 + pT + q` over the integers.

use crate::arith::{factorize, gcd, is_square};
use crate::error::ArithError;

/// `T^3 + p T + q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cubic {
    pub p: i128,
    pub q: i128,
}

impl Cubic {
    pub fn new(p: i128, q: i128) -> Self {
        Cubic { p, q }
    }

    /// `-4p^3 - 27q^2`.
    pub fn discriminant(&self) -> Result<i128, ArithError> {
        let overflow = ArithError::Overflow("Cubic::discriminant");
        let p3 = self
            .p
            .checked_mul(self.p)
            .and_then(|v| v.checked_mul(self.p))
            .and_then(|v| v.checked_mul(-4))
            .ok_or(overflow.clone())?;
        let q2 = self
            .q
            .checked_mul(self.q)
            .and_then(|v| v.checked_mul(27))
            .ok_or(overflow.clone())?;
        p3.checked_sub(q2).ok_or(overflow)
    }

    /// Value at an integer point, `None` on overflow.
    pub fn eval(&self, t: i128) -> Option<i128> {
        t.checked_mul(t)?
            .checked_add(self.p)?
            .checked_mul(t)?
            .checked_add(self.q)
    }

    /// An integer root, if there is one. A monic integer cubic is reducible
    /// over Q exactly when it has such a root.
    pub fn integer_root(&self) -> Option<i128> {
        if self.q == 0 {
            return Some(0);
        }
        // a root r divides q and satisfies r^2 = -p - q/r, so r^2 <= |p| + |q|
        let bound = self.p.unsigned_abs().saturating_add(self.q.unsigned_abs());
        let fac = factorize(self.q.unsigned_abs()).expect("q != 0");
        let mut divisors = fac.divisors();
        divisors.sort_unstable();
        for r in divisors {
            if r.checked_mul(r).is_none_or(|sq| sq > bound) {
                break;
            }
            let r = r as i128;
            for cand in [r, -r] {
                // r | q, so r^2 + p + q/r = 0 is the root condition
                if cand * cand + self.p + self.q / cand == 0 {
                    return Some(cand);
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self) -> bool {
        self.integer_root().is_none()
    }
}

/// Which of the three Kishi–Miyake congruence conditions a pair meets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KmCondition {
    /// `3 ∤ w`
    I,
    /// `3 | w`, `uw ≢ 3 (mod 9)`, `u ≡ w ± 1 (mod 9)`
    II,
    /// `3 | w`, `uw ≡ 3 (mod 9)`, `u ≡ w ± 1 (mod 27)`
    III,
}

/// A pair `(u, w)` meeting the Kishi–Miyake hypotheses, so that an
/// irreducible `T^3 - uwT - u^2` forces `3 | h(Q(√d))` with `d = 4uw^3 - 27u^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KishiMiyakePair {
    pub u: i64,
    pub w: i64,
    pub condition: KmCondition,
    pub d: i128,
}

impl KishiMiyakePair {
    /// `g(T) = T^3 - uwT - u^2`.
    pub fn cubic(&self) -> Cubic {
        let u = self.u as i128;
        let w = self.w as i128;
        Cubic::new(-u * w, -u * u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KmRejection {
    #[error("gcd(u, w) = {0}, not 1")]
    NotCoprime(u128),
    #[error("d = {0} is a perfect square")]
    SquareDiscriminant(i128),
    #[error("3 | w but u ≢ w ± 1 (mod {modulus})")]
    NoCondition { modulus: i64 },
}

fn congruent_pm1(u: i64, w: i64, modulus: i64) -> bool {
    let diff = (u - w).rem_euclid(modulus);
    diff == 1 || diff == modulus - 1
}

/// Checks the Kishi–Miyake hypotheses on `(u, w)`: coprimality, non-square
/// `d`, then conditions (I)–(III) in order. Irreducibility of the cubic is a
/// separate question, see [`KishiMiyakePair::cubic`].
pub fn check_kishi_miyake(u: i64, w: i64) -> Result<KishiMiyakePair, KmRejection> {
    let g = gcd(u as i128, w as i128);
    if g != 1 {
        return Err(KmRejection::NotCoprime(g));
    }
    let (ui, wi) = (u as i128, w as i128);
    let d = 4 * ui * wi * wi * wi - 27 * ui * ui;
    if is_square(d) {
        return Err(KmRejection::SquareDiscriminant(d));
    }
    let condition = if w % 3 != 0 {
        KmCondition::I
    } else {
        let uw9 = (ui * wi).rem_euclid(9);
        if uw9 != 3 {
            if !congruent_pm1(u, w, 9) {
                return Err(KmRejection::NoCondition { modulus: 9 });
            }
            KmCondition::II
        } else {
            if !congruent_pm1(u, w, 27) {
                return Err(KmRejection::NoCondition { modulus: 27 });
            }
            KmCondition::III
        }
    };
    Ok(KishiMiyakePair { u, w, condition, d })
}

/// Coprime positive `(m, n)` with `m ≡ 1 (mod 18)` and `n ≡ 1 (mod 54)`.
/// When `T^3 - 3mT - 2n` is irreducible, `3` divides the class number of
/// `Q(√(3(m^3 - n^2)))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RadicandPair {
    m: u64,
    n: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairError {
    #[error("m = {0} is not ≡ 1 (mod 18)")]
    MResidue(u64),
    #[error("n = {0} is not ≡ 1 (mod 54)")]
    NResidue(u64),
    #[error("gcd(m, n) = {0}, not 1")]
    NotCoprime(u128),
}

impl RadicandPair {
    pub fn new(m: u64, n: u64) -> Result<Self, PairError> {
        if m % 18 != 1 {
            return Err(PairError::MResidue(m));
        }
        if n % 54 != 1 {
            return Err(PairError::NResidue(n));
        }
        let g = gcd(m as i128, n as i128);
        if g != 1 {
            return Err(PairError::NotCoprime(g));
        }
        Ok(RadicandPair { m, n })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `T^3 - 3mT - 2n`.
    pub fn cubic(&self) -> Cubic {
        Cubic::new(-3 * self.m as i128, -2 * self.n as i128)
    }

    /// `3(m^3 - n^2)`, unreduced and possibly negative.
    pub fn target_radicand(&self) -> Result<i128, ArithError> {
        let overflow = ArithError::Overflow("target_radicand");
        let m = self.m as i128;
        let n = self.n as i128;
        let m3 = m
            .checked_mul(m)
            .and_then(|v| v.checked_mul(m))
            .ok_or(overflow.clone())?;
        let n2 = n.checked_mul(n).ok_or(overflow.clone())?;
        m3.checked_sub(n2).and_then(|v| v.checked_mul(3)).ok_or(overflow)
    }
}

/// Counts of cubics in a coefficient box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Census {
    pub total: u64,
    /// Irreducible with non-square discriminant.
    pub admissible: u64,
}

impl Census {
    pub fn ratio(&self) -> f64 {
        self.admissible as f64 / self.total as f64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("census box bounds must be >= 1 (got M = {m}, N = {n})")]
pub struct CensusError {
    pub m: u64,
    pub n: u64,
}

/// Exhaustive count over `|p| <= max_p`, `|q| <= max_q`.
pub fn irreducible_census(max_p: u64, max_q: u64) -> Result<Census, CensusError> {
    if max_p == 0 || max_q == 0 {
        return Err(CensusError { m: max_p, n: max_q });
    }
    let (mp, mq) = (max_p as i128, max_q as i128);
    let mut census = Census {
        total: 0,
        admissible: 0,
    };
    for p in -mp..=mp {
        for q in -mq..=mq {
            census.total += 1;
            let f = Cubic::new(p, q);
            let disc = f.discriminant().expect("census box is small");
            if f.is_irreducible() && !is_square(disc) {
                census.admissible += 1;
            }
        }
    }
    Ok(census)
}
