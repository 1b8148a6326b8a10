//! Primality, factorization and square-free decomposition.
//!
//! Trial division by the primes below 10^6 handles everything at desk scale;
//! larger cofactors go to Pollard–Brent rho with a Miller–Rabin test. The
//! Miller–Rabin base set is deterministic below 3.3·10^24, which covers
//! every 64-bit input and the 81-bit range in full.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{gcd_u128, is_square, isqrt, mul_mod, pow_mod};
use crate::error::ArithError;

const TRIAL_LIMIT: u32 = 1_000_000;
const DEFAULT_SEED: u64 = 0x5eed_cafe;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::with_capacity(80_000);
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// A complete prime factorization, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: u128,
    pub factors: Vec<(u128, u32)>,
}

impl Factorization {
    fn from_unsorted(n: u128, mut primes: Vec<u128>) -> Self {
        primes.sort_unstable();
        let mut factors: Vec<(u128, u32)> = Vec::new();
        for p in primes {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Factorization { n, factors }
    }

    /// Product of two factorizations. Fails if the product leaves `u128`.
    pub fn mul(&self, other: &Factorization) -> Result<Factorization, ArithError> {
        let n = self
            .n
            .checked_mul(other.n)
            .ok_or(ArithError::Overflow("Factorization::mul"))?;
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() || j < other.factors.len() {
            let a = self.factors.get(i);
            let b = other.factors.get(j);
            match (a, b) {
                (Some(&(p, e)), Some(&(q, f))) if p == q => {
                    factors.push((p, e + f));
                    i += 1;
                    j += 1;
                }
                (Some(&(p, e)), Some(&(q, _))) if p < q => {
                    factors.push((p, e));
                    i += 1;
                }
                (Some(_), Some(&(q, f))) => {
                    factors.push((q, f));
                    j += 1;
                }
                (Some(&(p, e)), None) => {
                    factors.push((p, e));
                    i += 1;
                }
                (None, Some(&(q, f))) => {
                    factors.push((q, f));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Ok(Factorization { n, factors })
    }

    pub fn pow(&self, k: u32) -> Result<Factorization, ArithError> {
        let n = self
            .n
            .checked_pow(k)
            .ok_or(ArithError::Overflow("Factorization::pow"))?;
        Ok(Factorization {
            n,
            factors: self.factors.iter().map(|&(p, e)| (p, e * k)).collect(),
        })
    }

    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.factors.iter().map(|f| f.0)
    }

    /// Multiplies the factors back out.
    pub fn product(&self) -> Option<u128> {
        self.factors
            .iter()
            .try_fold(1u128, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|f| f.1 == 1)
    }

    /// All positive divisors, unsorted.
    pub fn divisors(&self) -> Vec<u128> {
        let mut out = vec![1u128];
        for &(p, e) in &self.factors {
            let len = out.len();
            let mut pk = 1u128;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out
    }
}

fn miller_rabin(n: u128, base: u128) -> bool {
    let d0 = n - 1;
    let s = d0.trailing_zeros();
    let d = d0 >> s;
    let mut x = pow_mod(base % n, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Primality test. Deterministic for `n < 3.3·10^24`; a strong probable-prime
/// test to 20 bases beyond that.
pub fn is_prime(n: u128) -> bool {
    const BASES: [u128; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    if n < 71 * 71 {
        return true;
    }
    let rounds = if n < 3_317_044_064_679_887_385_961_981 {
        13
    } else {
        BASES.len()
    };
    BASES[..rounds].iter().all(|&b| miller_rabin(n, b))
}

// Brent's variant; returns a nontrivial factor of the odd composite n.
fn pollard_brent(n: u128, rng: &mut ChaCha8Rng) -> u128 {
    loop {
        let c = rng.gen_range(1..n);
        let mut y = rng.gen_range(0..n);
        let m = 64u64;
        let (mut g, mut r, mut q) = (1u128, 1u64, 1u128);
        let mut x = y;
        let mut ys = y;
        let step = |v: u128| (mul_mod(v, v, n) + c) % n;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = step(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u128(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = step(ys);
                g = gcd_u128(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
}

fn split_into(n: u128, rng: &mut ChaCha8Rng, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    if is_square(n as i128) && n < (1u128 << 127) {
        let r = isqrt(n);
        split_into(r, rng, out);
        split_into(r, rng, out);
        return;
    }
    let f = pollard_brent(n, rng);
    split_into(f, rng, out);
    split_into(n / f, rng, out);
}

/// Full prime factorization of `n >= 1`.
pub fn factorize(n: u128) -> Result<Factorization, ArithError> {
    factorize_with_seed(n, DEFAULT_SEED)
}

/// As [`factorize`], with an explicit seed for the randomized stage.
/// The result does not depend on the seed.
pub fn factorize_with_seed(n: u128, seed: u64) -> Result<Factorization, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let mut rem = n;
    let mut primes = Vec::new();
    let mut exhausted = true;
    for &p in small_primes() {
        let p = p as u128;
        if p * p > rem {
            exhausted = false;
            break;
        }
        while rem.is_multiple_of(p) {
            rem /= p;
            primes.push(p);
        }
    }
    if rem > 1 {
        if !exhausted || rem < (TRIAL_LIMIT as u128) * (TRIAL_LIMIT as u128) {
            primes.push(rem);
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            split_into(rem, &mut rng, &mut primes);
        }
    }
    Ok(Factorization::from_unsorted(n, primes))
}

/// Writes `n = s * f^2` with `s` square-free; returns `(s, f)`.
pub fn squarefree_part(n: u128) -> Result<(u128, u128), ArithError> {
    squarefree_part_with_seed(n, DEFAULT_SEED)
}

fn squarefree_part_with_seed(n: u128, seed: u64) -> Result<(u128, u128), ArithError> {
    let fac = factorize_with_seed(n, seed)?;
    let mut s = 1u128;
    let mut f = 1u128;
    for &(p, e) in &fac.factors {
        if e % 2 == 1 {
            s *= p;
        }
        f *= p.pow(e / 2);
    }
    Ok((s, f))
}

/// `Some((s, f))` with `n = s * f^2` when the square-free part `s` is at most
/// `bound`, `None` otherwise. Avoids factoring large cofactors whenever the
/// answer is already decided by trial division.
pub fn squarefree_part_bounded(n: u128, bound: u128) -> Result<Option<(u128, u128)>, ArithError> {
    squarefree_part_bounded_with_seed(n, bound, DEFAULT_SEED)
}

/// As [`squarefree_part_bounded`], seeding any randomized factoring stage.
pub fn squarefree_part_bounded_with_seed(n: u128, bound: u128, seed: u64) -> Result<Option<(u128, u128)>, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let mut rem = n;
    let mut s = 1u128;
    let mut f = 1u128;
    let mut rem_is_prime_or_one = false;
    let mut stopped_at_bound = false;
    for &p in small_primes() {
        let p = p as u128;
        if p > bound {
            stopped_at_bound = true;
            break;
        }
        if p * p > rem {
            rem_is_prime_or_one = true;
            break;
        }
        let mut e = 0u32;
        while rem.is_multiple_of(p) {
            rem /= p;
            e += 1;
        }
        if e % 2 == 1 {
            s *= p;
            if s > bound {
                return Ok(None);
            }
        }
        if e >= 2 {
            f *= p.pow(e / 2);
        }
    }
    if rem > 1 {
        if rem_is_prime_or_one {
            s = s.saturating_mul(rem);
        } else if is_square(rem as i128) && rem < (1u128 << 127) {
            f *= isqrt(rem);
        } else if stopped_at_bound {
            // every prime <= bound was removed; the non-square cofactor
            // contributes a prime > bound to the square-free part
            return Ok(None);
        } else {
            let (s2, f2) = squarefree_part_with_seed(rem, seed)?;
            s = s.saturating_mul(s2);
            f *= f2;
        }
    }
    Ok(if s <= bound { Some((s, f)) } else { None })
}

/// Number of distinct prime divisors.
pub fn omega(n: u128) -> Result<usize, ArithError> {
    Ok(factorize(n)?.omega())
}
