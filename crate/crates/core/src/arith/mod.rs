//! Exact integer primitives shared by every other module.
//!
//! Everything here is a pure function. Values are carried as `i128`/`u128`
//! and every operation that could leave that range uses checked arithmetic
//! and reports [`ArithError::Overflow`] instead of wrapping.

mod factor;
mod modular;

pub use factor::{
    factorize, factorize_with_seed, is_prime, omega, squarefree_part, squarefree_part_bounded,
    squarefree_part_bounded_with_seed, Factorization,
};
pub use modular::{inv_mod, mul_mod, pow_mod, sqrt_mod_prime, sqrt_mod_prime_power};

use crate::error::ArithError;

/// Nonnegative greatest common divisor. `gcd(0, 0) == 0`.
pub fn gcd(a: i128, b: i128) -> u128 {
    gcd_u128(a.unsigned_abs(), b.unsigned_abs())
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    gcd_u128(a as u128, b as u128) as u64
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g`.
pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// The unique solution of a system of congruences with pairwise coprime moduli.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrtSolution {
    pub residue: u128,
    pub modulus: u128,
}

/// Solves `x ≡ r_i (mod m_i)` for pairwise coprime `m_i`.
pub fn crt_solve(congruences: &[(i128, u128)]) -> Result<CrtSolution, ArithError> {
    if congruences.is_empty() {
        return Err(ArithError::EmptyCongruences);
    }
    for (i, &(_, mi)) in congruences.iter().enumerate() {
        if mi == 0 {
            return Err(ArithError::ZeroModulus);
        }
        for (j, &(_, mj)) in congruences.iter().enumerate().skip(i + 1) {
            let g = gcd_u128(mi, mj);
            if g != 1 {
                return Err(ArithError::NonCoprimeModuli {
                    i,
                    j,
                    left: mi,
                    right: mj,
                    gcd: g,
                });
            }
        }
    }
    let mut residue = 0u128;
    let mut modulus = 1u128;
    for &(r, m) in congruences {
        let r = r.rem_euclid(i128::try_from(m).map_err(|_| ArithError::Overflow("crt_solve"))?) as u128;
        let new_modulus = modulus.checked_mul(m).ok_or(ArithError::Overflow("crt_solve"))?;
        // x = residue + modulus * k, with k ≡ (r - residue) / modulus (mod m)
        let inv = inv_mod(modulus % m, m).expect("moduli checked coprime");
        let diff = (r + m - residue % m) % m;
        let k = mul_mod(diff, inv, m);
        residue += modulus * k;
        modulus = new_modulus;
    }
    Ok(CrtSolution { residue, modulus })
}

/// Floor of the square root.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    // f64 seed is within a few units; correct in both directions
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// Smallest `r` with `r*r >= n`.
pub fn isqrt_ceil(n: u128) -> u128 {
    let r = isqrt(n);
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// True iff `n >= 0` is a perfect square.
pub fn is_square(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    // quadratic residues mod 64 filter most non-squares
    if (0x202021202030213u64 >> (n & 63)) & 1 == 0 {
        return false;
    }
    let r = isqrt(n as u128);
    r * r == n as u128
}

/// Kronecker symbol `(a/n)`, including `n` even, negative, or zero.
pub fn kronecker(a: i128, n: i128) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut sign = 1i8;
    let mut n_abs = n.unsigned_abs();
    if n < 0 && a < 0 {
        sign = -sign;
    }
    let tz = n_abs.trailing_zeros();
    if tz > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a/2) = 1 if a ≡ ±1 (mod 8), -1 if a ≡ ±3 (mod 8)
        let a8 = a.rem_euclid(8);
        if tz % 2 == 1 && (a8 == 3 || a8 == 5) {
            sign = -sign;
        }
        n_abs >>= tz;
    }
    let a_mod = a.rem_euclid(n_abs as i128) as u128;
    sign * jacobi(a_mod, n_abs)
}

/// Jacobi symbol for odd positive `n`.
pub fn jacobi(a: u128, n: u128) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            t = -t;
        }
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}
