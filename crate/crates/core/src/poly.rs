//! Dense polynomials over a prime field F_p, coefficients stored low degree
//! first. Only what the field construction needs: multiplication, remainders,
//! gcd and Rabin's irreducibility test.

use crate::arith::{inv_mod, prime_factors};
use crate::error::{Error, Result};

pub type Poly = Vec<u64>;

pub fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = inv_mod(m[dm], p).expect("leading coefficient invertible");
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = r[dr] * lead_inv % p;
        let shift = dr - dm;
        for (i, &c) in m[..=dm].iter().enumerate() {
            r[i + shift] = (r[i + shift] + p - factor * c % p) % p;
        }
        trim(&mut r);
    }
    r
}

pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub fn pow_mod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Poly {
    let mut acc: Poly = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(d) = degree(&x) {
        let inv = inv_mod(x[d], p).expect("nonzero lead");
        for c in x.iter_mut() {
            *c = *c * inv % p;
        }
    }
    x
}

/// `X^(p^k) mod m`.
fn frobenius_power_of_x(k: usize, m: &[u64], p: u64) -> Poly {
    let mut h = rem(&[0, 1], m, p);
    for _ in 0..k {
        h = pow_mod(&h, p, m, p);
    }
    h
}

/// Rabin's test: a monic `f` of degree n is irreducible iff
/// `X^(p^n) ≡ X (mod f)` and `gcd(X^(p^(n/l)) - X, f) = 1` for every prime `l | n`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = match degree(f) {
        Some(0) | None => return false,
        Some(n) => n,
    };
    let x: Poly = rem(&[0, 1], f, p);
    if frobenius_power_of_x(n, f, p) != x {
        return false;
    }
    for l in prime_factors(n as u64) {
        let h = frobenius_power_of_x(n / l as usize, f, p);
        let g = gcd(f, &sub(&h, &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Monic polynomial of degree `n` whose lower coefficients are the base-`p`
/// digits of `code` (constant term first).
pub fn monic_from_code(code: u64, n: usize, p: u64) -> Poly {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = code;
    for _ in 0..n {
        out.push(c % p);
        c /= p;
    }
    out.push(1);
    out
}

/// Smallest monic irreducible polynomial of degree `n` over F_p, where
/// candidates are ordered by the integer whose base-`p` digits are the lower
/// coefficients (so the highest non-leading coefficient is most significant).
pub fn smallest_irreducible(p: u64, n: usize, budget: u64) -> Result<Poly> {
    if n == 1 {
        return Ok(vec![0, 1]);
    }
    for code in 0..budget {
        // constant term must be nonzero
        if code % p == 0 {
            continue;
        }
        let f = monic_from_code(code, n, p);
        if is_irreducible(&f, p) {
            return Ok(f);
        }
    }
    Err(Error::SearchBudget(budget))
}
