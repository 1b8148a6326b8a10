//! Primitive representations `x^2 + N y^2 = K` via Cornacchia's algorithm.

use crate::arith::{crt_solve, gcd_u128, is_square, isqrt, jacobi, sqrt_mod_prime_power};

/// Square roots of `-n` modulo `k`, where `k = ∏ p^e` over odd primes not
/// dividing `n`. Empty if `-n` is a non-residue modulo some `p`.
pub(crate) fn sqrt_neg_mod(n: u128, k_factors: &[(u128, u32)]) -> Vec<u128> {
    let mut roots = vec![0u128];
    let mut modulus = 1u128;
    for &(p, e) in k_factors {
        let r = n % p;
        if r == 0 || jacobi(p - r, p) != 1 {
            return Vec::new();
        }
        let pe = p.pow(e);
        let neg = pe - n % pe;
        let Some(root) = sqrt_mod_prime_power(neg, p, e) else {
            return Vec::new();
        };
        let mut next = Vec::with_capacity(roots.len() * 2);
        for &x in &roots {
            for y in [root, pe - root] {
                let sol = crt_solve(&[(x as i128, modulus), (y as i128, pe)])
                    .expect("prime powers of distinct primes are coprime");
                next.push(sol.residue);
            }
        }
        roots = next;
        modulus *= pe;
    }
    roots
}

/// All `(x, y)` with `x >= 0`, `y >= 1`, `gcd(x, y) = 1` and
/// `x^2 + n y^2 = k`. `k_factors` is the factorization of `k < 2^127`; its
/// primes must be odd and coprime to `n`.
pub(crate) fn primitive_representations(k: u128, k_factors: &[(u128, u32)], n: u128) -> Vec<(u128, u128)> {
    if n == 0 || n > k {
        return Vec::new();
    }
    let limit = isqrt(k);
    let mut out = Vec::new();
    for r0 in sqrt_neg_mod(n, k_factors) {
        let (mut a, mut b) = (k, r0);
        while b > limit {
            let r = a % b;
            a = b;
            b = r;
        }
        let x = b;
        let rem = k - x * x;
        if !rem.is_multiple_of(n) {
            continue;
        }
        let y2 = rem / n;
        if y2 == 0 || !is_square(y2 as i128) {
            continue;
        }
        let y = isqrt(y2);
        if gcd_u128(x, y) == 1 && !out.contains(&(x, y)) {
            out.push((x, y));
        }
    }
    out.sort_unstable();
    out
}
