//! Gauss and Jacobi sums.
//!
//! With `g` the generator and `N = q^m − 1`, `G(α, χ_e) = −Σ_k ω_N^{ek}·ψ(α·g^k)`,
//! so the whole family `e ↦ G(α, χ_e)` is one length-N DFT of the additive
//! character along the powers of `g`.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::characters::{realize, LimitCharacter, MultCharacter, RootTable};
use crate::dft::{dft, DEFAULT_CHIRP_THRESHOLD};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement, Tower};
use crate::sum::det_sum;

fn check_level(ctx: &FieldCtx, chi: &MultCharacter) -> Result<()> {
    if chi.modulus != ctx.group_order() {
        return Err(Error::LevelMismatch { sub: chi.level, level: ctx.level() });
    }
    Ok(())
}

/// `G(α, χ) = −Σ_{t≠0} χ(t)ψ(αt)`, summed over `t = g^k` in increasing `k`.
pub fn gauss_sum(ctx: &FieldCtx, chi: &MultCharacter, alpha: &FieldElement) -> Result<Complex64> {
    if alpha.is_zero() {
        return Err(Error::ZeroArgument("alpha"));
    }
    check_level(ctx, chi)?;
    let n = ctx.group_order();
    let shift = ctx.dlog(alpha)?;
    let traces = ctx.trace_powers();
    let omega = RootTable::new(n);
    let zeta = RootTable::new(ctx.p());
    let e = chi.index as u128;
    let s = det_sum(n, |k| {
        let tr = traces[((k + shift) % n) as usize] as u64;
        Some(omega.get((e * k as u128 % n as u128) as u64) * zeta.get(tr))
    });
    Ok(-s.value())
}

/// `G(α, χ_e)` for every `e` in `0..q^m−1`.
pub fn gauss_all(ctx: &FieldCtx, alpha: &FieldElement) -> Result<Vec<Complex64>> {
    gauss_all_with(ctx, alpha, DEFAULT_CHIRP_THRESHOLD)
}

/// As [`gauss_all`], with an explicit length below which the quadratic DFT is used.
pub fn gauss_all_with(ctx: &FieldCtx, alpha: &FieldElement, threshold: usize) -> Result<Vec<Complex64>> {
    if alpha.is_zero() {
        return Err(Error::ZeroArgument("alpha"));
    }
    let n = ctx.group_order() as usize;
    let shift = ctx.dlog(alpha)? as usize;
    let traces = ctx.trace_powers();
    let zeta = RootTable::new(ctx.p());
    let x: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|k| zeta.get(traces[(k + shift) % n] as u64))
        .collect();
    let mut out: Vec<Complex64> = dft(&x, threshold).into_iter().map(|y| -y).collect();
    // Σ_{t≠0} ψ(αt) = −1 exactly
    out[0] = Complex64::new(1.0, 0.0);
    Ok(out)
}

/// Precomputed `G(χ_e)` (standard additive character) for one field.
#[derive(Clone, Debug)]
pub struct GaussTable {
    ctx: Arc<FieldCtx>,
    values: Arc<Vec<Complex64>>,
    roots: RootTable,
    sqrt_order: f64,
}

impl GaussTable {
    pub fn new(ctx: Arc<FieldCtx>) -> Result<Self> {
        let values = gauss_all(&ctx, &ctx.one())?;
        Self::from_values(ctx, values)
    }

    /// Wraps externally supplied values (e.g. read back from a cache).
    pub fn from_values(ctx: Arc<FieldCtx>, values: Vec<Complex64>) -> Result<Self> {
        let n = ctx.group_order();
        if values.len() as u64 != n {
            return Err(Error::InvalidParams(format!(
                "expected {n} Gauss sums, got {}",
                values.len()
            )));
        }
        let sqrt_order = (ctx.order() as f64).sqrt();
        Ok(GaussTable {
            roots: RootTable::new(n),
            values: Arc::new(values),
            ctx,
            sqrt_order,
        })
    }

    /// The level-`m` field of the tower over `F_{p^f}` built with top level `m`.
    pub fn for_level(p: u64, f: u32, m: u32) -> Result<Self> {
        let ctx = Tower::new(p, f, m)?.level(m)?;
        Self::new(Arc::new(ctx))
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn ctx_arc(&self) -> Arc<FieldCtx> {
        Arc::clone(&self.ctx)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `q^m − 1`.
    pub fn modulus(&self) -> u64 {
        self.ctx.group_order()
    }

    /// `q^{m/2}`.
    pub fn sqrt_order(&self) -> f64 {
        self.sqrt_order
    }

    pub fn roots(&self) -> &RootTable {
        &self.roots
    }

    #[inline]
    pub fn get(&self, e: u64) -> Complex64 {
        self.values[(e % self.modulus()) as usize]
    }

    /// `q^{−m/2}·G(χ_e)`.
    #[inline]
    pub fn normalized(&self, e: u64) -> Complex64 {
        self.get(e) / self.sqrt_order
    }

    /// Index at this level of a limit character.
    pub fn index_of(&self, xi: &LimitCharacter) -> Result<u64> {
        Ok(realize(xi, &self.ctx)?.index)
    }
}

/// Dense `F_q`-indexed helpers for direct Jacobi sums: discrete logs by
/// encoded element, and an optional subtraction table for small fields.
pub struct JacobiKernel<'a> {
    order: usize,
    logs: Vec<u32>,
    sub: Option<Vec<u32>>,
    roots: RootTable,
    ctx: &'a FieldCtx,
}

const SUB_TABLE_LIMIT: u64 = 1024;

impl<'a> JacobiKernel<'a> {
    pub fn new(ctx: &'a FieldCtx) -> Self {
        let order = ctx.order() as usize;
        let logs: Vec<u32> = (0..order as u64)
            .map(|enc| ctx.dlog_encoded(enc).map_or(u32::MAX, |l| l as u32))
            .collect();
        let sub = (ctx.order() <= SUB_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    t[a * order + b] = ctx.sub_encoded(a as u64, b as u64) as u32;
                }
            }
            t
        });
        JacobiKernel { order, logs, sub, roots: RootTable::new(ctx.group_order()), ctx }
    }

    #[inline]
    fn sub(&self, a: usize, b: usize) -> usize {
        match &self.sub {
            Some(t) => t[a * self.order + b] as usize,
            None => self.ctx.sub_encoded(a as u64, b as u64) as usize,
        }
    }

    /// `χ_e(x)` for an encoded `x`, zero at `x = 0`.
    #[inline]
    fn chi(&self, e: u64, x: usize) -> Complex64 {
        let l = self.logs[x];
        if l == u32::MAX {
            Complex64::new(0.0, 0.0)
        } else {
            let n = self.roots.n();
            self.roots.get((e as u128 * l as u128 % n as u128) as u64)
        }
    }

    /// `B_1(s) = χ_e(s)`.
    pub fn start(&self, e: u64) -> Vec<Complex64> {
        (0..self.order).map(|s| self.chi(e, s)).collect()
    }

    /// `B_k(s) = Σ_{x≠0} B_{k−1}(s − x)·χ_e(x)` for every `s`.
    pub fn step(&self, prev: &[Complex64], e: u64) -> Vec<Complex64> {
        let chis: Vec<Complex64> = (0..self.order).map(|x| self.chi(e, x)).collect();
        (0..self.order)
            .into_par_iter()
            .map(|s| {
                let mut acc = crate::sum::ComplexSum::default();
                for (x, cx) in chis.iter().enumerate().skip(1) {
                    acc.add(prev[self.sub(s, x)] * cx);
                }
                acc.value()
            })
            .collect()
    }

    /// `Σ_{x≠0} B(1 − x)·χ_e(x)`, the last step evaluated at `s = 1` only.
    pub fn finish(&self, prev: &[Complex64], e: u64) -> Complex64 {
        let mut acc = crate::sum::ComplexSum::default();
        for x in 1..self.order {
            acc.add(prev[self.sub(1, x)] * self.chi(e, x));
        }
        acc.value()
    }

    /// `J(χ_{e_1},…,χ_{e_n})` for `n ≥ 2`.
    pub fn jacobi(&self, indices: &[u64]) -> Result<Complex64> {
        if indices.len() < 2 {
            return Err(Error::InvalidParams("Jacobi sums need at least two characters".into()));
        }
        let n = indices.len();
        let mut b = self.start(indices[0]);
        for &e in &indices[1..n - 1] {
            b = self.step(&b, e);
        }
        let j = self.finish(&b, indices[n - 1]);
        Ok(if n % 2 == 0 { -j } else { j })
    }
}

/// `J(χ_1,…,χ_n) = (−1)^{n−1} Σ_{x_1+…+x_n=1, x_i≠0} χ_1(x_1)⋯χ_n(x_n)`.
pub fn jacobi_sum(ctx: &FieldCtx, chis: &[MultCharacter]) -> Result<Complex64> {
    if chis.len() < 2 {
        return Err(Error::InvalidParams("Jacobi sums need at least two characters".into()));
    }
    for chi in chis {
        check_level(ctx, chi)?;
    }
    let kernel = JacobiKernel::new(ctx);
    let idx: Vec<u64> = chis.iter().map(|c| c.index).collect();
    kernel.jacobi(&idx)
}

/// The quotient `G(χ_1)⋯G(χ_n)/G(χ_1⋯χ_n)`, defined when every `χ_i` and the
/// product are nontrivial.
pub fn jacobi_via_gauss(ctx: &FieldCtx, chis: &[MultCharacter]) -> Result<Complex64> {
    let one = ctx.one();
    let mut num = Complex64::new(1.0, 0.0);
    let prod = jacobi_product(ctx, chis)?;
    for chi in chis {
        num *= gauss_sum(ctx, chi, &one)?;
    }
    Ok(num / gauss_sum(ctx, &prod, &one)?)
}

fn jacobi_product(ctx: &FieldCtx, chis: &[MultCharacter]) -> Result<MultCharacter> {
    if chis.len() < 2 {
        return Err(Error::InvalidParams("Jacobi sums need at least two characters".into()));
    }
    let mut prod = MultCharacter::trivial(ctx);
    for chi in chis {
        check_level(ctx, chi)?;
        if chi.is_trivial() {
            return Err(Error::Precondition("trivial character in the Gauss quotient".into()));
        }
        prod = prod.mul(chi);
    }
    if prod.is_trivial() {
        return Err(Error::Precondition("trivial product in the Gauss quotient".into()));
    }
    Ok(prod)
}

/// Gauss quotient from a precomputed table; same preconditions as
/// [`jacobi_via_gauss`], checked on indices.
pub fn jacobi_from_table(table: &GaussTable, indices: &[u64]) -> Result<Complex64> {
    let n = table.modulus();
    if indices.len() < 2 {
        return Err(Error::InvalidParams("Jacobi sums need at least two characters".into()));
    }
    if indices.iter().any(|&e| e % n == 0) {
        return Err(Error::Precondition("trivial character in the Gauss quotient".into()));
    }
    let s = indices.iter().fold(0u64, |acc, &e| (acc + e % n) % n);
    if s == 0 {
        return Err(Error::Precondition("trivial product in the Gauss quotient".into()));
    }
    let num = indices.iter().fold(Complex64::new(1.0, 0.0), |acc, &e| acc * table.get(e));
    Ok(num / table.get(s))
}
