//! Modular arithmetic on `u128` with moduli up to `u128::MAX`.

use super::ext_gcd;

#[inline]
fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    let (s, carry) = a.overflowing_add(b);
    if carry || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

/// `a * b mod m` without overflow for any `m > 0`.
pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if let Some(p) = a.checked_mul(b) {
        return p % m;
    }
    let mut a = a % m;
    let mut b = b % m;
    if let Some(p) = a.checked_mul(b) {
        return p % m;
    }
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

pub fn pow_mod(base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut base = base % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists. Requires `m < 2^127`.
pub fn inv_mod(a: u128, m: u128) -> Option<u128> {
    if m == 1 {
        return Some(0);
    }
    let mi = i128::try_from(m).ok()?;
    let ai = (a % m) as i128;
    let (g, x, _) = ext_gcd(ai, mi);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(mi) as u128)
}

/// A square root of `a` modulo the odd prime `p` (Tonelli–Shanks).
pub fn sqrt_mod_prime(a: u128, p: u128) -> Option<u128> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2u128;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 1;
        let mut t2 = mul_mod(t, t, p);
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u128 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// A square root of `a` modulo `p^k` for odd prime `p` not dividing `a`,
/// lifted from a root mod `p` by Newton iteration. `p^k` must be below `2^127`.
pub fn sqrt_mod_prime_power(a: u128, p: u128, k: u32) -> Option<u128> {
    debug_assert!(p % 2 == 1 && !a.is_multiple_of(p));
    let modulus = p.checked_pow(k)?;
    let a = a % modulus;
    let mut r = sqrt_mod_prime(a, p)?;
    let mut exp = 1u32;
    while exp < k {
        exp = (2 * exp).min(k);
        let pk = p.pow(exp);
        // r <- r - (r^2 - a) / (2r)
        let r2 = mul_mod(r, r, pk);
        let num = (r2 + pk - a % pk) % pk;
        let inv = inv_mod(mul_mod(2, r, pk), pk)?;
        let delta = mul_mod(num, inv, pk);
        r = (r + pk - delta) % pk;
    }
    Some(r)
}
