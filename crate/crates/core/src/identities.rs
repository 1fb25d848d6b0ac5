//! Sweeps checking the classical Gauss-sum identities over every character of
//! a field. Each check returns the largest normalized residual it saw.

use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::divisors;
use crate::charsums::{gauss_all, jacobi_from_table, GaussTable, JacobiKernel};
use crate::error::{Error, Result};
use crate::field::FieldCtx;

/// Default acceptance threshold for normalized residuals.
pub const IDENTITY_TOL: f64 = 1e-8;

/// Above this group order `check_scaled` uses a fixed subset of scalars.
pub const SCALED_FULL_SWEEP_LIMIT: u64 = 2048;
const SCALED_SAMPLE: u64 = 64;

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub order: u64,
    pub max_residual: f64,
    pub sweep_size: u64,
    pub wall_ms: f64,
}

impl IdentityReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual <= tol
    }
}

fn timed<F: FnOnce() -> Result<(f64, u64)>>(name: &str, order: u64, f: F) -> Result<IdentityReport> {
    let start = Instant::now();
    let (max_residual, sweep_size) = f()?;
    Ok(IdentityReport {
        identity: name.to_string(),
        order,
        max_residual,
        sweep_size,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn max_of(v: impl ParallelIterator<Item = f64>) -> f64 {
    v.reduce(|| 0.0, f64::max)
}

/// Discrete log of `−1`.
fn log_minus_one(ctx: &FieldCtx) -> u64 {
    if ctx.p() == 2 {
        0
    } else {
        ctx.group_order() / 2
    }
}

/// `G(χ)G(χ̄) = χ(−1)·q^m` for nontrivial `χ`, residual relative to `q^m`.
pub fn check_conjugation(t: &GaussTable) -> Result<IdentityReport> {
    let n = t.modulus();
    let qm = t.ctx().order() as f64;
    let lm1 = log_minus_one(t.ctx());
    timed("conjugation", t.ctx().order(), || {
        let r = max_of((1..n).into_par_iter().map(|e| {
            let lhs = t.get(e) * t.get(n - e);
            let sign = t.roots().get((e as u128 * lm1 as u128 % n as u128) as u64);
            (lhs - sign * qm).norm() / qm
        }));
        Ok((r, n - 1))
    })
}

/// `G(χ^p) = G(χ)`, residual relative to `q^{m/2}`.
pub fn check_frobenius(t: &GaussTable) -> Result<IdentityReport> {
    let n = t.modulus();
    let p = t.ctx().p();
    timed("frobenius", t.ctx().order(), || {
        let r = max_of((0..n).into_par_iter().map(|e| {
            let ep = (e as u128 * p as u128 % n as u128) as u64;
            (t.get(ep) - t.get(e)).norm() / t.sqrt_order()
        }));
        Ok((r, n))
    })
}

/// Hasse–Davenport: `G(χ^d) = χ(d^d)·Π_{i<d} G(χε^i)/G(ε^i)` with `ε` the
/// character of index `N/d`, over every `χ`.
pub fn check_hd_product(t: &GaussTable, d: u64) -> Result<IdentityReport> {
    let ctx = t.ctx();
    let n = t.modulus();
    if d == 0 || n % d != 0 {
        return Err(Error::Precondition(format!("{d} does not divide {n}")));
    }
    let step = n / d;
    let log_d = ctx.dlog(&ctx.from_int(d as i64))?;
    let log_dd = (log_d as u128 * d as u128 % n as u128) as u64;
    // G(ε^0) = G(𝟏) is 1 by convention, so the i = 0 factor is just G(χ)
    let denom: Complex64 = (1..d).map(|i| t.get(i * step)).product();
    timed(&format!("hasse-davenport d={d}"), ctx.order(), || {
        let r = max_of((0..n).into_par_iter().map(|e| {
            let lhs = t.get((e as u128 * d as u128 % n as u128) as u64);
            let num: Complex64 = (0..d).map(|i| t.get((e + i * step) % n)).product();
            let unit = t.roots().get((e as u128 * log_dd as u128 % n as u128) as u64);
            (lhs - unit * num / denom).norm() / t.sqrt_order()
        }));
        Ok((r, n))
    })
}

/// Runs [`check_hd_product`] for every divisor `d` of `q^m − 1` and keeps the worst.
pub fn check_hd_product_all(t: &GaussTable) -> Result<IdentityReport> {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut size = 0;
    for d in divisors(t.modulus()) {
        let r = check_hd_product(t, d)?;
        worst = worst.max(r.max_residual);
        size += r.sweep_size;
    }
    Ok(IdentityReport {
        identity: "hasse-davenport (all d)".into(),
        order: t.ctx().order(),
        max_residual: worst,
        sweep_size: size,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// `G_m(χ∘Norm) = G(χ)^{m/m'}` for every `χ` of the lower field.
pub fn check_hd_lifting(low: &GaussTable, high: &GaussTable) -> Result<IdentityReport> {
    let (cl, ch) = (low.ctx(), high.ctx());
    if !ch.same_base(cl) || ch.level() % cl.level() != 0 {
        return Err(Error::LevelMismatch { sub: cl.level(), level: ch.level() });
    }
    let k = (ch.level() / cl.level()) as i32;
    let n_low = low.modulus();
    let factor = high.modulus() / n_low;
    timed(&format!("lifting m={k}"), ch.order(), || {
        let r = max_of((0..n_low).into_par_iter().map(|e| {
            let lhs = high.get(e * factor);
            (lhs - low.get(e).powi(k)).norm() / high.sqrt_order()
        }));
        Ok((r, n_low))
    })
}

/// `G(α, χ) = χ̄(α)·G(χ)`: one independent batch transform per scalar `α`.
/// All scalars are swept when `q^m − 1 ≤ 2048`, otherwise `g^j` for `j < 64`.
pub fn check_scaled(t: &GaussTable) -> Result<IdentityReport> {
    let ctx = t.ctx();
    let n = t.modulus();
    let logs: Vec<u64> = if n <= SCALED_FULL_SWEEP_LIMIT {
        (0..n).collect()
    } else {
        (0..SCALED_SAMPLE).collect()
    };
    timed("scaled", ctx.order(), || {
        let mut worst = 0.0f64;
        for &l in &logs {
            let alpha = ctx.exp_gen(l);
            let scaled = gauss_all(ctx, &alpha)?;
            let r = max_of((0..n).into_par_iter().map(|e| {
                // χ̄_e(g^l) = ω^{−el}
                let unit = t.roots().get_signed(-((e as u128 * l as u128 % n as u128) as i128));
                (scaled[e as usize] - unit * t.get(e)).norm() / t.sqrt_order()
            }));
            worst = worst.max(r);
        }
        Ok((worst, logs.len() as u64 * n))
    })
}

/// Direct Jacobi sums against the Gauss quotient over every tuple of `n ∈ {2, 3}`
/// nontrivial characters with nontrivial product; residual relative to
/// `q^{m(n−1)/2}`.
pub fn check_jacobi(t: &GaussTable, n: usize) -> Result<IdentityReport> {
    if !(2..=3).contains(&n) {
        return Err(Error::InvalidParams("check_jacobi supports n = 2 or 3".into()));
    }
    let ctx = t.ctx();
    let big_n = t.modulus();
    let kernel = JacobiKernel::new(ctx);
    let scale = t.sqrt_order().powi(n as i32 - 1);
    timed(&format!("jacobi n={n}"), ctx.order(), || {
        let per_first: Vec<(f64, u64)> = (1..big_n)
            .into_par_iter()
            .map(|e1| {
                let b1 = kernel.start(e1);
                let mut worst = 0.0f64;
                let mut count = 0u64;
                for e2 in 1..big_n {
                    if n == 2 {
                        if (e1 + e2) % big_n == 0 {
                            continue;
                        }
                        let j = -kernel.finish(&b1, e2);
                        let g = jacobi_from_table(t, &[e1, e2]).expect("valid tuple");
                        worst = worst.max((j - g).norm() / scale);
                        count += 1;
                        continue;
                    }
                    let b2 = kernel.step(&b1, e2);
                    for e3 in 1..big_n {
                        if (e1 + e2 + e3) % big_n == 0 {
                            continue;
                        }
                        let j = kernel.finish(&b2, e3);
                        let g = jacobi_from_table(t, &[e1, e2, e3]).expect("valid tuple");
                        worst = worst.max((j - g).norm() / scale);
                        count += 1;
                    }
                }
                (worst, count)
            })
            .collect();
        let worst = per_first.iter().map(|x| x.0).fold(0.0, f64::max);
        let count = per_first.iter().map(|x| x.1).sum();
        Ok((worst, count))
    })
}

/// Every check above on one field: conjugation, Frobenius, Hasse–Davenport
/// for all `d`, lifting to the levels in `lifts`, scaling, Jacobi for n = 2, 3.
pub fn run_suite(t: &GaussTable, lifts: &[GaussTable]) -> Result<Vec<IdentityReport>> {
    let mut out = vec![
        check_conjugation(t)?,
        check_frobenius(t)?,
        check_hd_product_all(t)?,
        check_scaled(t)?,
        check_jacobi(t, 2)?,
        check_jacobi(t, 3)?,
    ];
    for high in lifts {
        out.push(check_hd_lifting(t, high)?);
    }
    Ok(out)
}
