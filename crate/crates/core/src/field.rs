//! Finite fields F_{q^m} with q = p^f, realised as F_p[X]/(modulus).
//!
//! Every [`FieldCtx`] produced by a [`Tower`] uses a primitive modulus, so the
//! class of `X` is the generator `g_m`. The generators of one tower are
//! norm-compatible: for `m' | m | top`, `Norm_{m→m'}(g_m) = g_{m'}`, and every
//! tower shares the same level-1 field and generator, whatever its top level.
//! That makes the character index pullback `e ↦ e·(q^m−1)/(q^{m'}−1)` exact.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::arith::{checked_pow, is_prime, prime_factors};
use crate::error::{Error, Result};
use crate::poly::{self, Poly};

/// Full log/exp tables are built when the field has at most this many elements.
pub const DEFAULT_TABLE_BUDGET: u64 = 1 << 22;
/// Upper bound on the number of polynomials tried by the irreducibility search.
pub const IRREDUCIBLE_SEARCH_BUDGET: u64 = 50_000_000;
/// Largest field order the toolkit accepts.
pub const MAX_ORDER: u64 = 1 << 34;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldParams {
    pub p: u64,
    pub f: u32,
    pub m: u32,
    pub q: u64,
    pub order: u64,
}

impl FieldParams {
    pub fn new(p: u64, f: u32, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 || m == 0 {
            return Err(Error::InvalidParams("f and m must be positive".into()));
        }
        let q = checked_pow(p, f)?;
        let order = checked_pow(q, m)?;
        if order > MAX_ORDER {
            return Err(Error::InvalidParams(format!("field order {order} too large")));
        }
        Ok(FieldParams { p, f, m, q, order })
    }

    /// Extension degree over the prime field, `f·m`.
    pub fn degree(&self) -> usize {
        (self.f * self.m) as usize
    }

    /// Order of the multiplicative group, `q^m − 1`.
    pub fn group_order(&self) -> u64 {
        self.order - 1
    }

    /// `q^j − 1` for the same base field.
    pub fn group_order_at(&self, level: u32) -> u64 {
        self.q.pow(level) - 1
    }
}

/// Element of F_{q^m} as its coefficient vector over F_p (constant term first).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

struct LogTables {
    /// Encoding of g^k for k in 0..N.
    exp: Vec<u32>,
    /// Discrete log indexed by encoding; entry 0 is unused.
    log: Vec<u32>,
}

pub struct FieldCtx {
    params: FieldParams,
    modulus: Poly,
    trace_basis: Vec<u64>,
    group_factors: Vec<u64>,
    tables: Option<LogTables>,
    trace_powers: OnceLock<Vec<u32>>,
    base_modulus: Poly,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("params", &self.params)
            .field("modulus", &self.modulus)
            .field("tables", &self.tables.is_some())
            .finish()
    }
}

impl FieldCtx {
    fn new(params: FieldParams, modulus: Poly, base_modulus: Poly, table_budget: u64) -> Result<Self> {
        debug_assert_eq!(poly::degree(&modulus), Some(params.degree()));
        let mut ctx = FieldCtx {
            params,
            modulus,
            trace_basis: Vec::new(),
            group_factors: prime_factors(params.group_order()),
            tables: None,
            trace_powers: OnceLock::new(),
            base_modulus,
        };
        let d = params.degree();
        ctx.trace_basis = (0..d)
            .map(|i| {
                let mut c = vec![0u64; d];
                c[i] = 1;
                let x = ctx.reduce(c);
                ctx.trace_by_frobenius(&x)
            })
            .collect();
        if params.order <= table_budget {
            ctx.build_tables()?;
        }
        Ok(ctx)
    }

    fn build_tables(&mut self) -> Result<()> {
        let n = self.params.group_order() as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![u32::MAX; self.params.order as usize];
        let mut x = self.one();
        for k in 0..n {
            let enc = self.encode(&x);
            if log[enc as usize] != u32::MAX {
                return Err(Error::InvalidParams("generator is not primitive".into()));
            }
            log[enc as usize] = k as u32;
            exp.push(enc as u32);
            x = self.mul_by_generator(&x);
        }
        if x != self.one() {
            return Err(Error::InvalidParams("generator order mismatch".into()));
        }
        self.tables = Some(LogTables { exp, log });
        Ok(())
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn p(&self) -> u64 {
        self.params.p
    }

    pub fn level(&self) -> u32 {
        self.params.m
    }

    pub fn degree(&self) -> usize {
        self.params.degree()
    }

    pub fn order(&self) -> u64 {
        self.params.order
    }

    pub fn group_order(&self) -> u64 {
        self.params.group_order()
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Modulus of the level-1 field this context is anchored to.
    pub fn base_modulus(&self) -> &[u64] {
        &self.base_modulus
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    fn reduce(&self, mut c: Vec<u64>) -> FieldElement {
        let p = self.params.p;
        for x in c.iter_mut() {
            *x %= p;
        }
        let mut r = poly::rem(&c, &self.modulus, p);
        r.resize(self.degree(), 0);
        FieldElement { coeffs: r }
    }

    /// Builds an element from coefficients, reducing modulo p and the modulus.
    pub fn element(&self, coeffs: &[u64]) -> FieldElement {
        self.reduce(coeffs.to_vec())
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let c = n.rem_euclid(self.params.p as i64) as u64;
        let mut v = vec![0u64; self.degree()];
        v[0] = c;
        FieldElement { coeffs: v }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.degree()] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The primitive element `g_m` (the class of `X`).
    pub fn generator(&self) -> FieldElement {
        self.reduce(vec![0, 1])
    }

    /// Base-p integer encoding, `Σ c_i p^i`, in `0..order`.
    pub fn encode(&self, x: &FieldElement) -> u64 {
        x.coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.params.p + c)
    }

    pub fn decode(&self, mut enc: u64) -> FieldElement {
        let p = self.params.p;
        let coeffs = (0..self.degree())
            .map(|_| {
                let c = enc % p;
                enc /= p;
                c
            })
            .collect();
        FieldElement { coeffs }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.params.p;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % p).collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.params.p;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + p - y) % p).collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    /// `a − b` on encodings.
    pub fn sub_encoded(&self, mut a: u64, mut b: u64) -> u64 {
        let p = self.params.p;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.degree() {
            let d = (a % p + p - b % p) % p;
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let prod = poly::mul(&a.coeffs, &b.coeffs, self.params.p);
        self.reduce(prod)
    }

    pub fn mul_by_generator(&self, a: &FieldElement) -> FieldElement {
        let p = self.params.p;
        let d = self.degree();
        let top = a.coeffs[d - 1];
        let mut c = vec![0u64; d];
        for i in 0..d {
            let shifted = if i == 0 { 0 } else { a.coeffs[i - 1] };
            c[i] = (shifted + p - top * self.modulus[i] % p) % p;
        }
        FieldElement { coeffs: c }
    }

    pub fn pow(&self, a: &FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = self.one();
        let mut b = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroArgument("inverse of zero"));
        }
        Ok(self.pow(a, self.group_order() - 1))
    }

    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.params.p)
    }

    fn trace_by_frobenius(&self, x: &FieldElement) -> u64 {
        let mut acc = self.zero();
        let mut y = x.clone();
        for _ in 0..self.degree() {
            acc = self.add(&acc, &y);
            y = self.frobenius(&y);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0), "trace not in F_p");
        acc.coeffs[0]
    }

    /// Absolute trace `Σ_j x^{p^j}` down to F_p, via the precomputed traces of
    /// the power basis.
    pub fn trace_to_prime(&self, x: &FieldElement) -> u64 {
        let p = self.params.p;
        x.coeffs
            .iter()
            .zip(&self.trace_basis)
            .fold(0u64, |acc, (&c, &t)| (acc + c * t) % p)
    }

    /// `Norm_{m → target}(x) = x^{(q^m−1)/(q^target−1)}`; zero maps to zero.
    pub fn norm_to_level(&self, x: &FieldElement, target: u32) -> Result<FieldElement> {
        let m = self.params.m;
        if target == 0 || m % target != 0 {
            return Err(Error::LevelMismatch { sub: target, level: m });
        }
        if x.is_zero() {
            return Ok(self.zero());
        }
        let e = self.group_order() / self.params.group_order_at(target);
        Ok(self.pow(x, e))
    }

    /// `g_m^k`.
    pub fn exp_gen(&self, k: u64) -> FieldElement {
        let k = k % self.group_order();
        match &self.tables {
            Some(t) => self.decode(t.exp[k as usize] as u64),
            None => self.pow(&self.generator(), k),
        }
    }

    /// Discrete logarithm to the base `g_m`.
    pub fn dlog(&self, x: &FieldElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroLog);
        }
        match &self.tables {
            Some(t) => Ok(t.log[self.encode(x) as usize] as u64),
            None => Ok(self.bsgs(x)),
        }
    }

    /// Discrete log of an encoded element, `None` for zero.
    pub fn dlog_encoded(&self, enc: u64) -> Option<u64> {
        if enc == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.log[enc as usize] as u64),
            None => Some(self.bsgs(&self.decode(enc))),
        }
    }

    fn bsgs(&self, x: &FieldElement) -> u64 {
        let n = self.group_order();
        let step = (n as f64).sqrt().ceil() as u64;
        let mut baby: HashMap<u64, u64> = HashMap::with_capacity(step as usize);
        let mut y = self.one();
        for j in 0..step {
            baby.entry(self.encode(&y)).or_insert(j);
            y = self.mul_by_generator(&y);
        }
        // giant step factor g^{-step}
        let giant = self.pow(&self.generator(), n - step % n);
        let mut z = x.clone();
        for i in 0..=step {
            if let Some(&j) = baby.get(&self.encode(&z)) {
                return (i * step + j) % n;
            }
            z = self.mul(&z, &giant);
        }
        unreachable!("generator is primitive, every nonzero element has a logarithm")
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: &FieldElement) -> u64 {
        let mut ord = self.group_order();
        for &l in &self.group_factors {
            while ord % l == 0 && self.pow(x, ord / l) == self.one() {
                ord /= l;
            }
        }
        ord
    }

    /// Traces `Tr(g^k)` for `k` in `0..q^m−1`, computed once and cached.
    pub fn trace_powers(&self) -> &[u32] {
        self.trace_powers.get_or_init(|| {
            let n = self.group_order() as usize;
            let mut out = Vec::with_capacity(n);
            let mut x = self.one();
            for _ in 0..n {
                out.push(self.trace_to_prime(&x) as u32);
                x = self.mul_by_generator(&x);
            }
            out
        })
    }

    /// Maps an element of this field lying in the level-`sub` subfield to the
    /// corresponding element of `sub_ctx` (same tower convention).
    pub fn restrict_to(&self, x: &FieldElement, sub_ctx: &FieldCtx) -> Result<FieldElement> {
        self.check_sub(sub_ctx)?;
        if x.is_zero() {
            return Ok(sub_ctx.zero());
        }
        let k = self.group_order() / sub_ctx.group_order();
        let l = self.dlog(x)?;
        if l % k != 0 {
            return Err(Error::Precondition("element is not in the subfield".into()));
        }
        Ok(sub_ctx.exp_gen(l / k))
    }

    /// Embeds an element of the subfield context `sub_ctx` into this field.
    pub fn embed_from(&self, x: &FieldElement, sub_ctx: &FieldCtx) -> Result<FieldElement> {
        self.check_sub(sub_ctx)?;
        if x.is_zero() {
            return Ok(self.zero());
        }
        let k = self.group_order() / sub_ctx.group_order();
        Ok(self.exp_gen(sub_ctx.dlog(x)? * k))
    }

    fn check_sub(&self, sub_ctx: &FieldCtx) -> Result<()> {
        let (a, b) = (&self.params, &sub_ctx.params);
        if a.p != b.p || a.f != b.f || a.m % b.m != 0 || self.base_modulus != sub_ctx.base_modulus {
            return Err(Error::LevelMismatch { sub: b.m, level: a.m });
        }
        Ok(())
    }

    /// True when both contexts belong to towers over the same level-1 field.
    pub fn same_base(&self, other: &FieldCtx) -> bool {
        self.params.p == other.params.p
            && self.params.f == other.params.f
            && self.base_modulus == other.base_modulus
    }

    /// Discrete log at this level of a level-1 element given by its level-1 log.
    pub fn lift_base_log(&self, base_log: u64) -> u64 {
        let k = self.group_order() / (self.params.q - 1);
        ((base_log as u128 * k as u128) % self.group_order() as u128) as u64
    }
}

/// Arithmetic in `F_p[X]/(modulus)` over raw coefficient vectors, used while
/// searching for generators before the final contexts exist.
struct RawField {
    p: u64,
    modulus: Poly,
    degree: usize,
}

impl RawField {
    fn mul(&self, a: &[u64], b: &[u64]) -> Poly {
        poly::mul_mod(a, b, &self.modulus, self.p)
    }

    fn pow(&self, a: &[u64], e: u64) -> Poly {
        poly::pow_mod(a, e, &self.modulus, self.p)
    }

    fn from_code(&self, mut code: u64) -> Poly {
        let mut v: Poly = (0..self.degree)
            .map(|_| {
                let c = code % self.p;
                code /= self.p;
                c
            })
            .collect();
        poly::trim(&mut v);
        v
    }

    fn is_one(&self, a: &[u64]) -> bool {
        a == [1]
    }

    fn is_primitive(&self, a: &[u64], n: u64, factors: &[u64]) -> bool {
        !a.is_empty() && self.is_one(&self.pow(a, n)) && factors.iter().all(|&l| !self.is_one(&self.pow(a, n / l)))
    }

    /// Evaluates an F_p-polynomial at the element `x`.
    fn eval(&self, f: &[u64], x: &[u64]) -> Poly {
        let mut acc: Poly = Vec::new();
        for &c in f.iter().rev() {
            acc = self.mul(&acc, x);
            acc = poly::sub(&acc, &[(self.p - c % self.p) % self.p], self.p);
        }
        acc
    }

    /// Minimal polynomial over F_p of `x`, as the product of `(Y − x^{p^j})`
    /// over the distinct conjugates.
    fn minimal_polynomial(&self, x: &[u64]) -> Poly {
        let mut conj: Vec<Poly> = vec![poly::rem(x, &self.modulus, self.p)];
        loop {
            let next = self.pow(conj.last().unwrap(), self.p);
            if next == conj[0] {
                break;
            }
            conj.push(next);
        }
        // coefficients of the product are field elements, stored as polys
        let mut coeffs: Vec<Poly> = vec![vec![1]];
        for r in &conj {
            let mut next: Vec<Poly> = vec![Vec::new(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                // (Y − r)·c Y^i
                let shifted = poly::sub(&next[i + 1], &poly::sub(&[], c, self.p), self.p);
                next[i + 1] = shifted;
                let prod = self.mul(c, r);
                next[i] = poly::sub(&next[i], &prod, self.p);
            }
            coeffs = next;
        }
        coeffs
            .into_iter()
            .map(|c| {
                debug_assert!(c.len() <= 1, "minimal polynomial coefficient outside F_p");
                c.first().copied().unwrap_or(0)
            })
            .collect()
    }
}

/// A compatible system of fields `k_m`, `m | top`, over a fixed base `k = F_{p^f}`.
pub struct Tower {
    params: FieldParams,
    base_modulus: Poly,
    search: RawField,
    top_generator: Poly,
    table_budget: u64,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tower").field("params", &self.params).finish()
    }
}

fn smallest_primitive(raw: &RawField, order: u64, accept: impl Fn(&Poly) -> bool) -> Result<Poly> {
    let n = order - 1;
    let factors = prime_factors(n);
    for code in 1..order {
        let x = raw.from_code(code);
        if raw.is_primitive(&x, n, &factors) && accept(&x) {
            return Ok(x);
        }
    }
    Err(Error::InvalidParams("no primitive element found".into()))
}

/// Modulus of the canonical level-1 field: the minimal polynomial of the
/// smallest primitive element modulo the smallest irreducible of degree f.
fn base_modulus(p: u64, f: u32) -> Result<Poly> {
    let q = checked_pow(p, f)?;
    let raw = RawField {
        p,
        modulus: poly::smallest_irreducible(p, f as usize, IRREDUCIBLE_SEARCH_BUDGET)?,
        degree: f as usize,
    };
    let g = smallest_primitive(&raw, q, |_| true)?;
    Ok(raw.minimal_polynomial(&g))
}

impl Tower {
    pub fn new(p: u64, f: u32, top: u32) -> Result<Self> {
        Self::with_table_budget(p, f, top, DEFAULT_TABLE_BUDGET)
    }

    pub fn with_table_budget(p: u64, f: u32, top: u32, table_budget: u64) -> Result<Self> {
        let params = FieldParams::new(p, f, top)?;
        let base = base_modulus(p, f)?;
        let search = RawField {
            p,
            modulus: poly::smallest_irreducible(p, params.degree(), IRREDUCIBLE_SEARCH_BUDGET)?,
            degree: params.degree(),
        };
        let norm_exp = params.group_order() / (params.q - 1);
        let top_generator = smallest_primitive(&search, params.order, |g| {
            let h = search.pow(g, norm_exp);
            search.eval(&base, &h).is_empty()
        })?;
        Ok(Tower {
            params,
            base_modulus: base,
            search,
            top_generator,
            table_budget,
        })
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    /// The context for level `m`, whose generator is `Norm_{top→m}(g_top)`.
    pub fn level(&self, m: u32) -> Result<FieldCtx> {
        let top = self.params.m;
        if m == 0 || top % m != 0 {
            return Err(Error::LevelMismatch { sub: m, level: top });
        }
        let params = FieldParams::new(self.params.p, self.params.f, m)?;
        let e = self.params.group_order() / params.group_order();
        let h = self.search.pow(&self.top_generator, e);
        let modulus = self.search.minimal_polynomial(&h);
        FieldCtx::new(params, modulus, self.base_modulus.clone(), self.table_budget)
    }
}

/// Builds the level-`m` field of the tower over `F_{p^f}` with top level `top`.
pub fn make_field(p: u64, f: u32, m: u32, top: u32) -> Result<FieldCtx> {
    if m == 0 || top == 0 || top % m != 0 {
        return Err(Error::LevelMismatch { sub: m, level: top });
    }
    Tower::new(p, f, top)?.level(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_generator_is_smallest_primitive_root() {
        let k = make_field(5, 1, 1, 1).unwrap();
        assert_eq!(k.order(), 5);
        assert_eq!(k.generator().coeffs(), &[2]);
        let k7 = make_field(7, 1, 1, 1).unwrap();
        assert_eq!(k7.generator().coeffs(), &[3]);
    }

    #[test]
    fn nine_element_field() {
        let k = make_field(3, 1, 2, 2).unwrap();
        assert_eq!(k.order(), 9);
        assert_eq!(k.element_order(&k.generator()), 8);
        assert!(poly::is_irreducible(k.modulus(), 3));
    }

    #[test]
    fn norm_of_level_two_generator_generates_base() {
        let k2 = make_field(5, 1, 2, 2).unwrap();
        let g = k2.generator();
        let n = k2.pow(&g, (25 - 1) / (5 - 1));
        // lies in F_5 and has order 4 by direct exponentiation
        assert!(n.coeffs()[1..].iter().all(|&c| c == 0));
        let c = n.coeffs()[0];
        let mut x = 1u64;
        let mut ord = 0;
        loop {
            x = x * c % 5;
            ord += 1;
            if x == 1 {
                break;
            }
        }
        assert_eq!(ord, 4);
        assert_eq!(k2.norm_to_level(&g, 1).unwrap(), n);
        // and equals the canonical level-1 generator
        let k1 = make_field(5, 1, 1, 1).unwrap();
        assert_eq!(c, k1.generator().coeffs()[0]);
    }

    #[test]
    fn trace_examples() {
        let k = make_field(3, 1, 2, 2).unwrap();
        assert_eq!(k.trace_to_prime(&k.zero()), 0);
        assert_eq!(k.trace_to_prime(&k.one()), 2);
        for enc in 0..9 {
            let x = k.decode(enc);
            let brute = k.add(&x, &k.pow(&x, 3));
            assert!(brute.coeffs()[1..].iter().all(|&c| c == 0));
            assert_eq!(k.trace_to_prime(&x), brute.coeffs()[0]);
        }
        let k27 = make_field(3, 3, 1, 1).unwrap();
        assert_eq!(k27.trace_to_prime(&k27.one()), 0);
    }

    #[test]
    fn norm_examples() {
        let k = make_field(5, 1, 2, 2).unwrap();
        assert_eq!(k.norm_to_level(&k.one(), 1).unwrap(), k.one());
        assert_eq!(k.norm_to_level(&k.zero(), 1).unwrap(), k.zero());
        for enc in 1..25 {
            let x = k.decode(enc);
            let prod = k.mul(&x, &k.pow(&x, 5));
            assert_eq!(k.norm_to_level(&x, 1).unwrap(), prod);
            assert!(prod.coeffs()[1..].iter().all(|&c| c == 0));
        }
        assert!(k.norm_to_level(&k.one(), 3).is_err());
    }

    #[test]
    fn dlog_examples() {
        let k = make_field(7, 1, 2, 2).unwrap();
        assert_eq!(k.dlog(&k.one()).unwrap(), 0);
        assert_eq!(k.dlog(&k.generator()).unwrap(), 1);
        assert_eq!(k.dlog(&k.zero()), Err(Error::ZeroLog));
        for enc in 1..49 {
            let x = k.decode(enc);
            assert_eq!(k.exp_gen(k.dlog(&x).unwrap()), x);
        }
    }

    #[test]
    fn bsgs_agrees_with_table() {
        let with = Tower::new(3, 1, 4).unwrap().level(4).unwrap();
        let without = Tower::with_table_budget(3, 1, 4, 1).unwrap().level(4).unwrap();
        assert!(with.has_tables() && !without.has_tables());
        for enc in 1..81 {
            let x = with.decode(enc);
            assert_eq!(with.dlog(&x).unwrap(), without.dlog(&x).unwrap());
        }
    }

    #[test]
    fn tower_generators_are_norm_compatible() {
        for (p, f, top) in [(2u64, 1u32, 6u32), (3, 1, 4), (5, 1, 2), (3, 2, 2), (2, 2, 3)] {
            let tower = Tower::new(p, f, top).unwrap();
            let levels: Vec<u32> = (1..=top).filter(|m| top % m == 0).collect();
            let ctxs: Vec<FieldCtx> = levels.iter().map(|&m| tower.level(m).unwrap()).collect();
            for (i, big) in ctxs.iter().enumerate() {
                assert!(poly::is_irreducible(big.modulus(), p));
                for small in ctxs[..=i].iter().filter(|s| big.level() % s.level() == 0) {
                    let n = big.norm_to_level(&big.generator(), small.level()).unwrap();
                    assert_eq!(big.restrict_to(&n, small).unwrap(), small.generator());
                    // the subfield identification is additive, not just multiplicative
                    let sub: Vec<FieldElement> =
                        (0..small.order()).map(|e| big.embed_from(&small.decode(e), small).unwrap()).collect();
                    for (a, x) in sub.iter().enumerate().step_by(3) {
                        for (b, y) in sub.iter().enumerate().step_by(2) {
                            let lhs = big.restrict_to(&big.add(x, y), small).unwrap();
                            let rhs = small.add(&small.decode(a as u64), &small.decode(b as u64));
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn towers_share_the_base_field() {
        let a = Tower::new(3, 1, 5).unwrap().level(1).unwrap();
        let b = Tower::new(3, 1, 4).unwrap().level(1).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        let a = Tower::new(2, 2, 3).unwrap().level(1).unwrap();
        let b = make_field(2, 2, 1, 1).unwrap();
        assert_eq!(a.modulus(), b.modulus());
    }

    #[test]
    fn invalid_inputs() {
        assert_eq!(make_field(4, 1, 1, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(make_field(5, 1, 2, 3), Err(Error::LevelMismatch { .. })));
    }
}
