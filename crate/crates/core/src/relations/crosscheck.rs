use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::decompose::{Decomposition, SymbolicConstant};
use super::monomial::GaussMonomial;
use super::moves::MoveKind;
use crate::characters::{unit_root, CharTuple, LimitCharacter};
use crate::charsums::GaussTable;
use crate::error::{Error, Result};
use crate::sum::det_sum;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrosscheckReport {
    pub m: u32,
    pub evaluated: u64,
    pub excluded: u64,
    /// `max |χ(t)·ev(x) − D^m| / |D|^m`.
    pub max_deviation: f64,
}

fn powi(z: Complex64, k: i64) -> Complex64 {
    let w = z.powu(k.unsigned_abs() as u32);
    if k < 0 {
        w.inv()
    } else {
        w
    }
}

/// Numerical value of `D^m`, using the level-1 Gauss sums in `base`.
pub fn constant_power(d: &SymbolicConstant, base: &GaussTable, m: u32) -> Result<Complex64> {
    let q = base.ctx().order() as f64;
    let mut z = unit_root(d.unit, d.unit_modulus) * q.powf(d.q_power as f64);
    for (xi, &k) in &d.gauss {
        z *= powi(base.get(base.index_of(xi)?), k);
    }
    Ok(z.powu(m))
}

/// Evaluation data for the keys of a monomial at one level.
struct Evaluator<'a> {
    table: &'a GaussTable,
    r: usize,
    keys: Vec<(u64, Vec<i64>, i64)>,
    guards: Vec<(u64, Vec<i64>)>,
}

impl<'a> Evaluator<'a> {
    fn new(x: &GaussMonomial, extra_guards: &[(LimitCharacter, Vec<i64>)], table: &'a GaussTable) -> Result<Self> {
        let mut keys = Vec::new();
        let mut guards = Vec::new();
        for ((eta, a), e) in x.terms() {
            let idx = table.index_of(eta)?;
            keys.push((idx, a.clone(), e));
            guards.push((idx, a.clone()));
        }
        for (eta, a) in extra_guards {
            guards.push((table.index_of(eta)?, a.clone()));
        }
        Ok(Evaluator { table, r: x.r(), keys, guards })
    }

    fn chi(&self, lin: u64) -> CharTuple {
        let ctx = self.table.ctx();
        CharTuple::from_linear(lin, self.r, ctx.level(), self.table.modulus())
    }

    /// `None` when some guarded `ηχ^a` is trivial.
    fn eval(&self, chi: &CharTuple) -> Option<Complex64> {
        let n = self.table.modulus();
        if self.guards.iter().any(|(idx, a)| (idx + chi.power_index(a)) % n == 0) {
            return None;
        }
        let mut z = Complex64::new(1.0, 0.0);
        for (idx, a, e) in &self.keys {
            z *= powi(self.table.get((idx + chi.power_index(a)) % n), *e);
        }
        Some(z)
    }

    /// `χ(t)` for `t` given by level-1 logs.
    fn chi_t(&self, chi: &CharTuple, t: &[u64]) -> Complex64 {
        let ctx = self.table.ctx();
        let n = self.table.modulus();
        let phase = chi
            .indices
            .iter()
            .zip(t)
            .map(|(&e, &l)| (e as u128 * ctx.lift_base_log(l) as u128 % n as u128) as u64)
            .fold(0u64, |acc, v| (acc + v) % n);
        self.table.roots().get(phase)
    }

    fn total(&self) -> Result<u64> {
        self.table.modulus().checked_pow(self.r as u32).ok_or(Error::Overflow("character tuple count"))
    }
}

/// Compares `χ(t)·ev_{m,χ}(x)` with `D^m` over all `χ`, or over `sample`
/// draws from a seeded generator. Tuples for which some `ηχ^a` in the support
/// of `x` or in a conjugation move is trivial are skipped.
pub fn numeric_crosscheck(
    x: &GaussMonomial,
    dec: &Decomposition,
    table: &GaussTable,
    base: &GaussTable,
    sample: Option<(u64, u64)>,
) -> Result<CrosscheckReport> {
    let m = table.ctx().level();
    if !table.ctx().same_base(base.ctx()) || base.ctx().level() != 1 {
        return Err(Error::InvalidParams("tables must share the level-1 field".into()));
    }
    if table.ctx().params().q != x.q() {
        return Err(Error::InvalidParams("table is over a different base field".into()));
    }
    let pguards: Vec<(LimitCharacter, Vec<i64>)> = dec
        .moves
        .iter()
        .filter(|mv| mv.kind == MoveKind::P)
        .map(|mv| (mv.eta, mv.a.clone()))
        .collect();
    let ev = Evaluator::new(x, &pguards, table)?;
    let target = constant_power(&dec.d, base, m)?;
    let scale = target.norm();

    let dev = |lin: u64| -> Option<f64> {
        let chi = ev.chi(lin);
        ev.eval(&chi).map(|z| (ev.chi_t(&chi, &dec.t) * z - target).norm() / scale)
    };
    let results: Vec<Option<f64>> = match sample {
        None => {
            let total = ev.total()?;
            (0..total).into_par_iter().map(dev).collect()
        }
        Some((count, seed)) => {
            let total = ev.total().unwrap_or(u64::MAX);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let draws: Vec<u64> = (0..count).map(|_| rng.gen_range(0..total)).collect();
            draws.into_par_iter().map(dev).collect()
        }
    };
    let evaluated = results.iter().flatten().count() as u64;
    if evaluated == 0 {
        return Err(Error::EmptySet(m));
    }
    Ok(CrosscheckReport {
        m,
        evaluated,
        excluded: results.len() as u64 - evaluated,
        max_deviation: results.into_iter().flatten().fold(0.0, f64::max),
    })
}

/// Small grid of level-1 log tuples: every `t` with coordinates below `k`,
/// `k` as large as allowed by a budget of 256 tuples.
pub fn t_grid(r: usize, q: u64) -> Vec<Vec<u64>> {
    let mut k = (q - 1).max(1);
    while k > 1 && (k as f64).powi(r as i32) > 256.0 {
        k -= 1;
    }
    let total = k.pow(r as u32);
    (0..total).map(|lin| CharTuple::from_linear(lin, r, 1, k).indices).collect()
}

/// How far `χ ↦ χ(t)·ev(x)/|ev(x)|` is from constant on the non-excluded
/// tuples: `min_t (1 − |mean|²)` over `t_grid`. Zero for elements of `H`.
pub fn constancy_spread(x: &GaussMonomial, table: &GaussTable) -> Result<f64> {
    let ev = Evaluator::new(x, &[], table)?;
    let total = ev.total()?;
    let grid = t_grid(x.r(), x.q());
    let mut best = f64::INFINITY;
    for t in &grid {
        let s = det_sum(total, |lin| {
            let chi = ev.chi(lin);
            ev.eval(&chi).map(|z| ev.chi_t(&chi, t) * z / z.norm())
        });
        if s.count() == 0 {
            return Err(Error::EmptySet(table.ctx().level()));
        }
        let mean = s.value() / s.count() as f64;
        best = best.min(1.0 - mean.norm_sqr());
    }
    Ok(best.max(0.0))
}
