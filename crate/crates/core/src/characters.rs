//! Additive and multiplicative characters.
//!
//! Characters are exact objects: a multiplicative character at level `m` is
//! an index `e mod (q^m − 1)` relative to the tower generator, and an element
//! of the limit group `Char_k` is a reduced fraction `u/v mod 1` with `v`
//! prime to `p`. Complex values only appear in the `eval_*` functions.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, inv_mod, solve_linear_congruence};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// The `n`-th roots of unity `exp(2πik/n)`, `k = 0..n`.
#[derive(Clone, Debug)]
pub struct RootTable {
    n: u64,
    values: Arc<Vec<Complex64>>,
}

impl RootTable {
    pub fn new(n: u64) -> Self {
        assert!(n > 0);
        let values = (0..n).map(|k| unit_root(k, n)).collect();
        RootTable { n, values: Arc::new(values) }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    #[inline]
    pub fn get(&self, k: u64) -> Complex64 {
        self.values[(k % self.n) as usize]
    }

    #[inline]
    pub fn get_signed(&self, k: i128) -> Complex64 {
        self.values[k.rem_euclid(self.n as i128) as usize]
    }
}

/// `exp(2πi·k/n)`, with the angle reduced into the first octant-friendly
/// range `[-π, π)` before evaluating.
pub fn unit_root(k: u64, n: u64) -> Complex64 {
    let k = k % n;
    let (num, den) = if 2 * k > n { (k as f64 - n as f64, n as f64) } else { (k as f64, n as f64) };
    let theta = 2.0 * PI * num / den;
    Complex64::new(theta.cos(), theta.sin())
}

/// `ψ_α(x) = exp(2πi·Tr(αx)/p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveCharacter {
    pub alpha: FieldElement,
    pub level: u32,
}

impl AdditiveCharacter {
    pub fn standard(ctx: &FieldCtx) -> Self {
        AdditiveCharacter { alpha: ctx.one(), level: ctx.level() }
    }
}

pub fn eval_additive(ctx: &FieldCtx, psi: &AdditiveCharacter, x: &FieldElement) -> Complex64 {
    let t = ctx.trace_to_prime(&ctx.mul(&psi.alpha, x));
    unit_root(t, ctx.p())
}

/// Multiplicative character `g_m ↦ exp(2πi·index/modulus)` at a fixed level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultCharacter {
    pub level: u32,
    pub modulus: u64,
    pub index: u64,
}

impl MultCharacter {
    pub fn new(ctx: &FieldCtx, index: i128) -> Self {
        let modulus = ctx.group_order();
        MultCharacter {
            level: ctx.level(),
            modulus,
            index: index.rem_euclid(modulus as i128) as u64,
        }
    }

    pub fn trivial(ctx: &FieldCtx) -> Self {
        Self::new(ctx, 0)
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    pub fn pow(&self, k: i128) -> Self {
        let idx = (self.index as i128 * k).rem_euclid(self.modulus as i128) as u64;
        MultCharacter { index: idx, ..*self }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        MultCharacter {
            index: (self.index + other.index) % self.modulus,
            ..*self
        }
    }

    pub fn conj(&self) -> Self {
        self.pow(-1)
    }

    pub fn order(&self) -> u64 {
        self.modulus / gcd(self.index, self.modulus)
    }
}

impl fmt::Display for MultCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.index, self.modulus)
    }
}

/// Parses `"e mod M"`. The level is not part of the text and is set to 0.
impl FromStr for MultCharacter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { pos: 0, msg: msg.to_string() };
        let (e, m) = s.split_once("mod").ok_or_else(|| bad("expected `e mod M`"))?;
        let index: u64 = e.trim().parse().map_err(|_| bad("bad index"))?;
        let modulus: u64 = m.trim().parse().map_err(|_| bad("bad modulus"))?;
        if modulus == 0 {
            return Err(bad("modulus must be positive"));
        }
        Ok(MultCharacter { level: 0, modulus, index: index % modulus })
    }
}

pub fn eval_mult(ctx: &FieldCtx, chi: &MultCharacter, x: &FieldElement) -> Result<Complex64> {
    let l = ctx.dlog(x)?;
    let k = (chi.index as u128 * l as u128 % chi.modulus as u128) as u64;
    Ok(unit_root(k, chi.modulus))
}

/// Index at level `to` of the pullback along the norm of the level-`from`
/// character with index `e`.
pub fn pullback_index(e: u64, from: u32, to: u32, q: u64) -> Result<u64> {
    if from == 0 || to % from != 0 {
        return Err(Error::LevelMismatch { sub: from, level: to });
    }
    let n_to = q.pow(to) - 1;
    let n_from = q.pow(from) - 1;
    Ok(((e % n_from) as u128 * (n_to / n_from) as u128 % n_to as u128) as u64)
}

pub fn pullback(chi: &MultCharacter, ctx: &FieldCtx) -> Result<MultCharacter> {
    let q = ctx.params().q;
    let idx = pullback_index(chi.index, chi.level, ctx.level(), q)?;
    Ok(MultCharacter::new(ctx, idx as i128))
}

/// An element `u/v mod 1` of the limit character group, stored reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LimitCharacter {
    u: u64,
    v: u64,
}

impl LimitCharacter {
    pub fn new(u: i128, v: u64) -> Self {
        assert!(v > 0, "denominator must be positive");
        let u = u.rem_euclid(v as i128) as u64;
        let g = gcd(u, v);
        LimitCharacter { u: u / g, v: v / g }
    }

    pub fn trivial() -> Self {
        LimitCharacter { u: 0, v: 1 }
    }

    pub fn numerator(&self) -> u64 {
        self.u
    }

    pub fn denominator(&self) -> u64 {
        self.v
    }

    pub fn is_trivial(&self) -> bool {
        self.u == 0
    }

    /// Order of the character, equal to the reduced denominator.
    pub fn order(&self) -> u64 {
        self.v
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = crate::arith::lcm(self.v, other.v);
        let u = self.u as i128 * (l / self.v) as i128 + other.u as i128 * (l / other.v) as i128;
        Self::new(u, l)
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::new(self.u as i128 * k as i128, self.v)
    }

    pub fn conj(&self) -> Self {
        self.pow(-1)
    }

    pub fn is_prime_to(&self, p: u64) -> bool {
        gcd(self.v, p) == 1
    }

    /// Whether the character is defined on `k_m^×` for a group of order `n`.
    pub fn realizable_in(&self, group_order: u64) -> bool {
        group_order % self.v == 0
    }

    /// Index at level 1 of a field with `q − 1 = group_order`.
    pub fn index_in(&self, group_order: u64) -> Result<u64> {
        if !self.realizable_in(group_order) {
            return Err(Error::NotRealizable {
                denominator: self.v,
                group_order,
                level: 1,
            });
        }
        Ok(self.u * (group_order / self.v))
    }
}

impl Ord for LimitCharacter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.u as u128 * other.v as u128)
            .cmp(&(other.u as u128 * self.v as u128))
            .then(self.v.cmp(&other.v))
    }
}

impl PartialOrd for LimitCharacter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LimitCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.u, self.v)
    }
}

impl FromStr for LimitCharacter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { pos: 0, msg: msg.to_string() };
        let (u, v) = match s.split_once('/') {
            Some((u, v)) => (u, v),
            None => (s, "1"),
        };
        let u: i128 = u.trim().parse().map_err(|_| bad("bad numerator"))?;
        let v: u64 = v.trim().parse().map_err(|_| bad("bad denominator"))?;
        if v == 0 {
            return Err(bad("zero denominator"));
        }
        Ok(LimitCharacter::new(u, v))
    }
}

impl Serialize for LimitCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LimitCharacter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The level-`m` character corresponding to `ξ`.
pub fn realize(xi: &LimitCharacter, ctx: &FieldCtx) -> Result<MultCharacter> {
    let n = ctx.group_order();
    if n % xi.v != 0 {
        return Err(Error::NotRealizable {
            denominator: xi.v,
            group_order: n,
            level: ctx.level(),
        });
    }
    Ok(MultCharacter::new(ctx, (xi.u * (n / xi.v)) as i128))
}

pub fn to_limit(chi: &MultCharacter) -> LimitCharacter {
    LimitCharacter::new(chi.index as i128, chi.modulus)
}

/// The unique `θ` with `θ^p = χ`; exists because `p` is prime to `q^m − 1`.
pub fn pth_root(chi: &MultCharacter, p: u64) -> MultCharacter {
    let inv = inv_mod(p % chi.modulus, chi.modulus).expect("p is prime to q^m - 1");
    MultCharacter {
        index: (chi.index as u128 * inv as u128 % chi.modulus as u128) as u64,
        ..*chi
    }
}

/// `θ` with `θ^p = η` in the limit group.
pub fn pth_root_limit(eta: &LimitCharacter, p: u64) -> LimitCharacter {
    let inv = inv_mod(p % eta.v, eta.v).expect("denominator prime to p");
    LimitCharacter::new(eta.u as i128 * inv as i128, eta.v)
}

/// All `ξ ∈ Char_k` with `ξ^μ = η`, in increasing order. Candidates are the
/// fractions `(u + j·v)/(μ·v)`, `j = 0..μ`; exactly those whose reduced
/// denominator is prime to `p` are kept.
pub fn roots_mu(eta: &LimitCharacter, mu: u64, p: u64) -> Vec<LimitCharacter> {
    assert!(mu >= 1, "roots_mu needs a positive exponent");
    let den = mu * eta.v;
    let mut out: Vec<LimitCharacter> = (0..mu)
        .map(|j| LimitCharacter::new((eta.u + j * eta.v) as i128, den))
        .filter(|xi| xi.is_prime_to(p))
        .collect();
    out.sort();
    out
}

/// All indices `y mod (q−1)` with `d·y ≡ e`, i.e. the `d`-th roots over `k`
/// of the character with index `e`.
pub fn roots_over_k(e: u64, d: u64, q: u64) -> Vec<u64> {
    solve_linear_congruence(d, e, q - 1)
}

/// An r-tuple of characters at a common level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharTuple {
    pub level: u32,
    pub modulus: u64,
    pub indices: Vec<u64>,
}

impl CharTuple {
    /// Row-major decoding of `idx` in `0..modulus^r`, first coordinate most
    /// significant.
    pub fn from_linear(idx: u64, r: usize, level: u32, modulus: u64) -> Self {
        let mut indices = vec![0u64; r];
        let mut rest = idx;
        for slot in indices.iter_mut().rev() {
            *slot = rest % modulus;
            rest /= modulus;
        }
        CharTuple { level, modulus, indices }
    }

    /// `χ^a = Σ_l a_l e_l mod N`, as an index.
    pub fn power_index(&self, a: &[i64]) -> u64 {
        let n = self.modulus as i128;
        let s: i128 = self
            .indices
            .iter()
            .zip(a)
            .map(|(&e, &al)| (e as i128 * al as i128).rem_euclid(n))
            .sum();
        s.rem_euclid(n) as u64
    }
}
