//! Integer helpers: modular powers and inverses, factorisation by trial
//! division, divisor lists and linear congruences. All inputs in this crate
//! stay well below 2^40, so `u64` with `u128` intermediates is sufficient.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd(a.unsigned_abs(), b.unsigned_abs()) as i64
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduces a signed value into `0..m`.
#[inline]
pub fn rem_euclid(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

/// Extended Euclid on signed integers: returns (g, x, y) with ax + by = g.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(rem_euclid(x, m))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorisation as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
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

pub fn prime_factors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Splits `q` into `(p, f)` with `q = p^f`, `p` prime.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    let fac = factorize(q);
    match fac.as_slice() {
        [(p, f)] => Ok((*p, *f)),
        _ => Err(Error::NotPrimePower(q)),
    }
}

pub fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp).ok_or(Error::Overflow("integer power"))
}

/// Largest divisor of `n` coprime to `p`.
pub fn prime_to_p_part(mut n: u64, p: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    while n % p == 0 {
        n /= p;
    }
    n
}

/// All `y` in `0..m` with `d * y ≡ e (mod m)`, increasing.
pub fn solve_linear_congruence(d: u64, e: u64, m: u64) -> Vec<u64> {
    let d = d % m;
    let e = e % m;
    let g = gcd(d, m);
    if e % g != 0 {
        return Vec::new();
    }
    let m_red = m / g;
    let y0 = match inv_mod((d / g) % m_red, m_red) {
        Some(inv) => mul_mod(e / g, inv, m_red),
        None => return Vec::new(),
    };
    (0..g).map(|k| y0 + k * m_red).collect()
}

/// Multiplicative order of `g` given the factorisation of the group order.
pub fn element_order(g: u64, group_order: u64, modulus: u64) -> u64 {
    let mut ord = group_order;
    for (p, _) in factorize(group_order) {
        while ord % p == 0 && pow_mod(g, ord / p, modulus) == 1 {
            ord /= p;
        }
    }
    ord
}

/// Additive order of `x` in `Z/n`.
pub fn additive_order(x: u64, n: u64) -> u64 {
    n / gcd(x % n, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorisation_and_divisors() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(prime_power(125).unwrap(), (5, 3));
        assert!(prime_power(12).is_err());
        assert!(prime_power(1).is_err());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007u64 * 3));
    }

    #[test]
    fn congruences_match_enumeration() {
        for m in 1..40u64 {
            for d in 0..m {
                for e in 0..m {
                    let brute: Vec<u64> = (0..m).filter(|y| (d * y) % m == e).collect();
                    assert_eq!(solve_linear_congruence(d, e, m), brute, "d={d} e={e} m={m}");
                }
            }
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(5, 6), Some(5));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(prime_to_p_part(12, 2), 3);
        assert_eq!(prime_to_p_part(5, 5), 1);
    }
}
