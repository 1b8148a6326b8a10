//! Slow, definition-level reference implementations shared by the
//! integration and acceptance tests. Nothing here calls into the library.

#![allow(dead_code)]

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: u128) -> bool {
    let r = isqrt(n);
    r * r == n
}

/// Prime factorization by plain trial division.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && factor(n).iter().all(|&(_, e)| e == 1)
}

pub fn omega(n: u64) -> usize {
    factor(n).len()
}

/// `(d, t)` with `n = d t^2` and `d` square-free, by trial division.
pub fn squarefree_decompose(n: u64) -> (u64, u64) {
    let mut d = 1u64;
    let mut t = 1u64;
    for (p, e) in factor(n) {
        t *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
    }
    (d, t)
}

/// `(d, t)` with `w = d t^2`, `d` square-free and `d <= cap`, found by
/// scanning every `d` in `ds` (square-free values up to the cap).
pub fn bounded_decompose_by_scan(w: u128, ds: &[u64]) -> Option<(u64, u128)> {
    ds.iter().find_map(|&d| {
        let d128 = d as u128;
        if w.is_multiple_of(d128) && is_square(w / d128) {
            Some((d, isqrt(w / d128)))
        } else {
            None
        }
    })
}

pub fn squarefree_upto(cap: u64) -> Vec<u64> {
    (1..=cap).filter(|&d| is_squarefree(d)).collect()
}

/// Definition of a solution: `m^3 - n^2 = 27 t^2 d`, `d` square-free in
/// `[2, x]`, `gcd(m, t) = gcd(m, n) = gcd(t, 6) = 1`.
pub fn is_solution(m: u64, n: u64, t: u64, d: u64, x: u64) -> bool {
    let (m, n, t, d) = (m as u128, n as u128, t as u128, d as u128);
    let m3 = m * m * m;
    d >= 2
        && d <= x as u128
        && n >= 1
        && n * n < m3
        && m3 - n * n == 27 * t * t * d
        && is_squarefree(d as u64)
        && gcd(m, t) == 1
        && gcd(m, n) == 1
        && gcd(t, 6) == 1
}

/// All solutions with `m ≡ mr (mod mq)` in `(m_lo, m_hi]`, `n ≡ nr (mod nq)`,
/// `d <= x`, by walking every pair `(m, n)` and decomposing by trial division.
pub fn brute_triples(mr: u64, mq: u64, nr: u64, nq: u64, m_lo: u64, m_hi: u64, x: u64) -> Vec<(u64, u64, u64, u64)> {
    let mut out = Vec::new();
    for m in (m_lo + 1)..=m_hi {
        if m % mq != mr {
            continue;
        }
        let m3 = (m as u128).pow(3);
        let mut n = nr;
        while (n as u128) * (n as u128) < m3 {
            let v = m3 - (n as u128) * (n as u128);
            if v.is_multiple_of(27) {
                let (d, t) = squarefree_decompose((v / 27) as u64);
                if is_solution(m, n, t, d, x) {
                    out.push((m, n, t, d));
                }
            }
            n += nq;
        }
    }
    out.sort_by_key(|&(m, n, t, d)| (d, m, n, t));
    out
}

/// Like [`brute_triples`] for one `m`, with the bounded decomposition done by
/// scanning square-free `d <= x`. Suited to large `m` with small `x`.
pub fn brute_triples_at(m: u64, nr: u64, nq: u64, x: u64) -> Vec<(u64, u64, u64, u64)> {
    let ds = squarefree_upto(x);
    let m3 = (m as u128).pow(3);
    let mut out = Vec::new();
    let mut n = nr as u128;
    while n * n < m3 {
        let v = m3 - n * n;
        if v.is_multiple_of(27) {
            if let Some((d, t)) = bounded_decompose_by_scan(v / 27, &ds[1..]) {
                if is_solution(m, n as u64, t as u64, d, x) {
                    out.push((m, n as u64, t as u64, d));
                }
            }
        }
        n += nq as u128;
    }
    out.sort_by_key(|&(m, n, t, d)| (d, m, n, t));
    out
}

pub fn fundamental_discriminant(d: u64) -> u64 {
    if d % 4 == 1 {
        d
    } else {
        4 * d
    }
}

/// Narrow class number of the fundamental discriminant `disc` as the number
/// of cycles of Zagier-reduced forms (`a, c > 0`, `b > a + c`).
pub fn zagier_narrow_class_number(disc: u64) -> u64 {
    let dd = disc as i64;
    let sq = isqrt(disc as u128) as i64;
    // 4ac <= (a + c)^2 <= (b - 1)^2 gives D >= 2b - 1
    let mut forms = std::collections::BTreeSet::new();
    for b in (sq + 1)..=((dd + 1) / 2) {
        let ac4 = b * b - dd;
        if ac4 % 4 != 0 {
            continue;
        }
        let ac = ac4 / 4;
        let mut a = 1;
        while a * a <= ac {
            if ac % a == 0 {
                let c = ac / a;
                if a + c < b {
                    forms.insert((a, b, c));
                    forms.insert((c, b, a));
                }
            }
            a += 1;
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut cycles = 0;
    for &f in &forms {
        if seen.contains(&f) {
            continue;
        }
        cycles += 1;
        let mut cur = f;
        loop {
            seen.insert(cur);
            cur = zagier_step(cur, disc);
            if cur == f {
                break;
            }
            assert!(forms.contains(&cur), "zagier step left the reduced set: {cur:?}");
        }
    }
    cycles
}

fn zagier_step((a, b, c): (i64, i64, i64), disc: u64) -> (i64, i64, i64) {
    // n = ceil((b + sqrt D) / 2c); (a, b, c) -> (c, 2cn - b, cn^2 - bn + a)
    let s = (disc as f64).sqrt();
    let mut n = ((b as f64 + s) / (2.0 * c as f64)).ceil() as i64;
    // exact correction: n is least with 2cn - b > sqrt(D)
    let gt = |n: i64| {
        let v = 2 * c * n - b;
        v > 0 && (v as i128) * (v as i128) > disc as i128
    };
    while n > 1 && gt(n - 1) {
        n -= 1;
    }
    while !gt(n) {
        n += 1;
    }
    (c, 2 * c * n - b, c * n * n - b * n + a)
}

/// Whether `x^2 - D y^2 = -4` has a solution with `1 <= y <= y_max`.
pub fn negative_pell_small(disc: u64, y_max: u64) -> bool {
    (1..=y_max).any(|y| {
        let v = disc as u128 * (y as u128) * (y as u128) - 4;
        is_square(v)
    })
}

/// Smallest `(x, y)` with `x^2 - D y^2 = ±4`, `y >= 1`, by scanning `y`.
pub fn smallest_unit(disc: u64, y_max: u64) -> Option<(u128, u128, i8)> {
    (1..=y_max as u128).find_map(|y| {
        let dy2 = disc as u128 * y * y;
        if is_square(dy2 - 4) {
            Some((isqrt(dy2 - 4), y, -1))
        } else if is_square(dy2 + 4) {
            Some((isqrt(dy2 + 4), y, 1))
        } else {
            None
        }
    })
}

/// Integer-root test over every divisor of `q` by trial.
pub fn cubic_has_integer_root(p: i128, q: i128) -> bool {
    if q == 0 {
        return true;
    }
    let aq = q.unsigned_abs();
    let mut r = 1u128;
    while r * r <= aq {
        if aq.is_multiple_of(r) {
            for c in [r, aq / r] {
                for s in [c as i128, -(c as i128)] {
                    if s * s * s + p * s + q == 0 {
                        return true;
                    }
                }
            }
        }
        r += 1;
    }
    false
}

/// Jacobi symbol by Euler's criterion for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let mut r = 1u128;
    let mut b = a as u128;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u128;
        }
        b = b * b % p as u128;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}
