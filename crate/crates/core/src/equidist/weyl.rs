use num_complex::Complex64;
use serde::Serialize;

use super::config::MonomialConfig;
use crate::characters::CharTuple;
use crate::charsums::GaussTable;
use crate::error::{Error, Result};
use crate::sum::det_sum;

/// Per-level data for evaluating a config: pulled-back `η_i` indices and the
/// level-m logs of the `t_i` coordinates.
pub(crate) struct Prepared<'a> {
    pub table: &'a GaussTable,
    pub n: u64,
    pub r: usize,
    pub eta: Vec<u64>,
    pub a: Vec<Vec<i64>>,
    pub tau: Vec<Vec<u64>>,
}

impl<'a> Prepared<'a> {
    pub fn new(config: &MonomialConfig, table: &'a GaussTable) -> Result<Self> {
        let ctx = table.ctx();
        config.check_base(ctx.params().q)?;
        let n = table.modulus();
        let mut eta = Vec::new();
        let mut a = Vec::new();
        let mut tau = Vec::new();
        for e in config.entries() {
            eta.push(table.index_of(&e.eta)?);
            a.push(e.a.clone());
            tau.push(e.t.iter().map(|&l| ctx.lift_base_log(l)).collect());
        }
        Ok(Prepared { table, n, r: config.r(), eta, a, tau })
    }

    pub fn total(&self) -> u64 {
        (self.n as u128).pow(self.r as u32).try_into().expect("tuple count fits in u64")
    }

    pub fn decode(&self, idx: u64) -> CharTuple {
        CharTuple::from_linear(idx, self.r, self.table.ctx().level(), self.n)
    }

    /// Index of `η_iχ^{a_i}` and of `χ(t_i)` for every entry.
    pub fn indices(&self, chi: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let n = self.n as i128;
        let mut s = Vec::with_capacity(self.eta.len());
        let mut ph = Vec::with_capacity(self.eta.len());
        for i in 0..self.eta.len() {
            let mut acc = self.eta[i] as i128;
            let mut pacc = 0i128;
            for l in 0..self.r {
                acc += (chi[l] as i128 * self.a[i][l] as i128) % n;
                pacc += (chi[l] as i128 * self.tau[i][l] as i128) % n;
            }
            s.push(acc.rem_euclid(n) as u64);
            ph.push(pacc.rem_euclid(n) as u64);
        }
        (s, ph)
    }

    pub fn in_s(&self, chi: &[u64]) -> bool {
        self.indices(chi).0.iter().all(|&e| e != 0)
    }

    /// Normalized coordinates `q^{−m/2}·χ(t_i)·G_m(η_iχ^{a_i})`.
    pub fn coords(&self, chi: &[u64]) -> Option<Vec<Complex64>> {
        let (s, ph) = self.indices(chi);
        if s.iter().any(|&e| e == 0) {
            return None;
        }
        Some(
            s.iter()
                .zip(&ph)
                .map(|(&e, &k)| self.table.roots().get(k) * self.table.normalized(e))
                .collect(),
        )
    }

    /// `Λ_c(Φ(χ))` with negative exponents taken through the conjugate.
    pub fn weyl_term(&self, chi: &[u64], c: &[i64]) -> Option<Complex64> {
        let (s, ph) = self.indices(chi);
        if s.iter().any(|&e| e == 0) {
            return None;
        }
        let n = self.n as i128;
        let mut phase = 0i128;
        let mut z = Complex64::new(1.0, 0.0);
        for i in 0..s.len() {
            if c[i] == 0 {
                continue;
            }
            phase += (c[i] as i128 * ph[i] as i128) % n;
            let u = self.table.normalized(s[i]);
            let u = if c[i] < 0 { u.conj() } else { u };
            z *= u.powi(c[i].unsigned_abs() as i32);
        }
        Some(self.table.roots().get_signed(phase) * z)
    }
}

/// All `χ ∈ S_m`, row-major with the first coordinate most significant.
/// Asserts the counting bound `|T_m \ S_m| ≤ a·(q^m−1)^{r−1}` when exhausted.
pub fn enumerate_s<'a>(config: &MonomialConfig, table: &'a GaussTable) -> Result<Vec<CharTuple>> {
    let prep = Prepared::new(config, table)?;
    let total = prep.total();
    let out: Vec<CharTuple> = (0..total)
        .map(|i| prep.decode(i))
        .filter(|chi| prep.in_s(&chi.indices))
        .collect();
    assert_complement_bound(config, prep.n, total, out.len() as u64);
    Ok(out)
}

fn assert_complement_bound(config: &MonomialConfig, n: u64, total: u64, s_size: u64) {
    let bound = config.a_const() as u128 * (n as u128).pow(config.r() as u32 - 1);
    assert!(
        ((total - s_size) as u128) <= bound,
        "|T \\ S| = {} exceeds a·N^(r-1) = {bound}",
        total - s_size
    );
}

/// `Φ_m(χ)`; errors if `χ ∉ S_m`.
pub fn phi(config: &MonomialConfig, chi: &CharTuple, table: &GaussTable) -> Result<Vec<Complex64>> {
    let prep = Prepared::new(config, table)?;
    if chi.indices.len() != config.r() || chi.modulus != prep.n {
        return Err(Error::InvalidParams("character tuple does not match the config level".into()));
    }
    prep.coords(&chi.indices)
        .ok_or_else(|| Error::Precondition("character tuple is outside S_m".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylReport {
    pub m: u32,
    pub q: u64,
    pub c: Vec<i64>,
    pub sigma: Complex64,
    pub s_size: u64,
    pub a_const: u64,
    /// Constant fitted over the calibration window, once a series is fitted.
    pub bound_fit: Option<f64>,
    pub rhs: Option<f64>,
}

/// `Σ_m(Λ_c) = |S_m|^{−1} Σ_{χ∈S_m} Λ_c(Φ_m(χ))`, reduced deterministically.
pub fn weyl_sum(config: &MonomialConfig, c: &[i64], table: &GaussTable) -> Result<WeylReport> {
    if c.len() != config.len() {
        return Err(Error::InvalidParams(format!("c must have {} coordinates", config.len())));
    }
    let prep = Prepared::new(config, table)?;
    let total = prep.total();
    let trivial = c.iter().all(|&x| x == 0);
    let acc = det_sum(total, |i| {
        let chi = prep.decode(i);
        if trivial {
            prep.in_s(&chi.indices).then_some(Complex64::new(1.0, 0.0))
        } else {
            prep.weyl_term(&chi.indices, c)
        }
    });
    let s_size = acc.count();
    let m = table.ctx().level();
    if s_size == 0 {
        return Err(Error::EmptySet(m));
    }
    assert_complement_bound(config, prep.n, total, s_size);
    let sigma = if trivial {
        Complex64::new(1.0, 0.0)
    } else {
        acc.value() / s_size as f64
    };
    Ok(WeylReport {
        m,
        q: table.ctx().params().q,
        c: c.to_vec(),
        sigma,
        s_size,
        a_const: config.a_const(),
        bound_fit: None,
        rhs: None,
    })
}

/// Right-hand side of the Weyl-sum bound,
/// `(A(Q−1)^r Q^{−1/2} + a(Q−1)^{r−1}) / ((Q−1)^{r−1}(Q−1−a))` with `Q = q^m`.
pub fn bound_rhs(a_const: u64, a_fit: f64, q: u64, m: u32, r: usize) -> Result<f64> {
    let big_q = (q as f64).powi(m as i32);
    let a = a_const as f64;
    if big_q <= 1.0 + a {
        return Err(Error::Precondition(format!("bound needs q^m > 1 + a (q^m = {big_q}, a = {a_const})")));
    }
    let _ = r; // the (Q−1)^{r−1} factors cancel
    Ok((a_fit * (big_q - 1.0) / big_q.sqrt() + a) / (big_q - 1.0 - a))
}

/// `|Σ_m|·(Q−1)^{r−1}(Q−1−a)·Q^{1/2}/(Q−1)^r`, the constant that makes the
/// bound tight (up to the `a` term) at this level.
pub fn fitted_constant(report: &WeylReport) -> Option<f64> {
    let big_q = (report.q as f64).powi(report.m as i32);
    let a = report.a_const as f64;
    (big_q > 1.0 + a).then(|| report.sigma.norm() * (big_q - 1.0 - a) * big_q.sqrt() / (big_q - 1.0))
}

/// Weyl sums at every supplied level, with `A_fit` taken as the maximum of
/// [`fitted_constant`] over the admissible levels in `calibration`, and the
/// bound filled in at every admissible level. Levels with empty `S_m` are
/// left out.
pub fn weyl_series(
    config: &MonomialConfig,
    c: &[i64],
    tables: &[GaussTable],
    calibration: &[u32],
) -> Result<Vec<WeylReport>> {
    let mut reports = Vec::new();
    for t in tables {
        match weyl_sum(config, c, t) {
            Ok(rep) => reports.push(rep),
            Err(Error::EmptySet(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let fit = reports
        .iter()
        .filter(|r| calibration.contains(&r.m))
        .filter_map(fitted_constant)
        .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))));
    if let Some(a_fit) = fit {
        for rep in reports.iter_mut() {
            if let Ok(rhs) = bound_rhs(rep.a_const, a_fit, rep.q, rep.m, config.r()) {
                rep.bound_fit = Some(a_fit);
                rep.rhs = Some(rhs);
            }
        }
    }
    Ok(reports)
}

/// Weyl sums over every `c` with `0 < ‖c‖_∞ ≤ cmax`.
#[derive(Clone, Debug, Serialize)]
pub struct WindowReport {
    pub m: u32,
    pub s_size: u64,
    pub sums: Vec<(Vec<i64>, Complex64)>,
    /// `max_c |Σ_m(Λ_c)|` over the window.
    pub discrepancy_proxy: f64,
}

pub fn window_vectors(dim: usize, cmax: i64) -> Vec<Vec<i64>> {
    let side = (2 * cmax + 1) as usize;
    let total = side.pow(dim as u32);
    (0..total)
        .map(|mut k| {
            let mut v = vec![0i64; dim];
            for slot in v.iter_mut().rev() {
                *slot = (k % side) as i64 - cmax;
                k /= side;
            }
            v
        })
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect()
}

pub fn weyl_window(config: &MonomialConfig, cmax: i64, table: &GaussTable) -> Result<WindowReport> {
    let mut sums = Vec::new();
    let mut s_size = 0;
    let mut worst = 0.0f64;
    for c in window_vectors(config.len(), cmax) {
        let rep = weyl_sum(config, &c, table)?;
        s_size = rep.s_size;
        worst = worst.max(rep.sigma.norm());
        sums.push((c, rep.sigma));
    }
    Ok(WindowReport { m: table.ctx().level(), s_size, sums, discrepancy_proxy: worst })
}
