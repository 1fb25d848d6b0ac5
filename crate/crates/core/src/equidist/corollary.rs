//! Normalized Jacobi sums obtained by pushing the Gauss-sum tuple through an
//! explicit torus homomorphism `φ`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use super::config::{Entry, MonomialConfig};
use super::weyl::{window_vectors, Prepared};
use crate::arith::gcd;
use crate::characters::LimitCharacter;
use crate::charsums::GaussTable;
use crate::error::{Error, Result};
use crate::sum::det_sum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PresetKind {
    JacobiAllFree,
    JacobiFixedTail,
    JacobiPowers,
}

impl FromStr for PresetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jacobi_all_free" => Ok(PresetKind::JacobiAllFree),
            "jacobi_fixed_tail" => Ok(PresetKind::JacobiFixedTail),
            "jacobi_powers" => Ok(PresetKind::JacobiPowers),
            other => Err(Error::InvalidPreset(other.to_string())),
        }
    }
}

impl fmt::Display for PresetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PresetKind::JacobiAllFree => "jacobi_all_free",
            PresetKind::JacobiFixedTail => "jacobi_fixed_tail",
            PresetKind::JacobiPowers => "jacobi_powers",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Preset {
    /// `q^{−m(n−1)/2} J_m(χ_1,…,χ_n)` over free nontrivial `χ_i`.
    AllFree { n: usize },
    /// `J_m(χ_1,…,χ_d, η_{i,1},…,η_{i,e_i})` for each fixed tail `i`.
    FixedTail { d: usize, tails: Vec<Vec<LimitCharacter>> },
    /// `J_m(χ^{d_1},…,χ^{d_n})`.
    Powers { ds: Vec<u64> },
}

impl Preset {
    pub fn kind(&self) -> PresetKind {
        match self {
            Preset::AllFree { .. } => PresetKind::JacobiAllFree,
            Preset::FixedTail { .. } => PresetKind::JacobiFixedTail,
            Preset::Powers { .. } => PresetKind::JacobiPowers,
        }
    }

    /// Output dimension of `φ`.
    pub fn dim(&self) -> usize {
        match self {
            Preset::FixedTail { tails, .. } => tails.len(),
            _ => 1,
        }
    }
}

/// A Gauss-sum config together with the homomorphism applied to it:
/// output `o` is `translation_o · Π_i z_i^{exps[o][i]}`.
#[derive(Clone, Debug)]
pub struct Pushforward {
    pub config: MonomialConfig,
    pub exps: Vec<Vec<i64>>,
    /// Fixed characters whose normalized Gauss sums multiply each output.
    pub fixed: Vec<Vec<LimitCharacter>>,
}

fn unit(r: usize, l: usize) -> Vec<i64> {
    let mut v = vec![0; r];
    v[l] = 1;
    v
}

pub fn pushforward(preset: &Preset) -> Result<Pushforward> {
    let one = LimitCharacter::trivial();
    match preset {
        Preset::AllFree { n } => {
            let n = *n;
            if n < 2 {
                return Err(Error::InvalidParams("Jacobi sums need n ≥ 2".into()));
            }
            let mut entries: Vec<Entry> = (0..n).map(|l| Entry::new(one, unit(n, l))).collect();
            entries.push(Entry::new(one, vec![1; n]));
            let mut e = vec![1; n];
            e.push(-1);
            Ok(Pushforward { config: MonomialConfig::new(n, entries)?, exps: vec![e], fixed: vec![vec![]] })
        }
        Preset::FixedTail { d, tails } => {
            let d = *d;
            if d == 0 || tails.is_empty() {
                return Err(Error::InvalidParams("need d ≥ 1 and at least one tail".into()));
            }
            let mut entries: Vec<Entry> = (0..d).map(|l| Entry::new(one, unit(d, l))).collect();
            let mut products = Vec::new();
            for tail in tails {
                if tail.is_empty() || tail.iter().any(|x| x.is_trivial()) {
                    return Err(Error::InvalidParams("tails must be nonempty lists of nontrivial characters".into()));
                }
                let prod = tail.iter().fold(one, |acc, x| acc.mul(x));
                if products.contains(&prod) {
                    return Err(Error::InvalidParams("tail products must be distinct".into()));
                }
                if d == 1 && prod.is_trivial() {
                    return Err(Error::InvalidParams("tail product collides with a free coordinate".into()));
                }
                products.push(prod);
                entries.push(Entry::new(prod, vec![1; d]));
            }
            let exps = (0..tails.len())
                .map(|i| {
                    let mut e = vec![1; d];
                    e.extend((0..tails.len()).map(|j| if i == j { -1 } else { 0 }));
                    e
                })
                .collect();
            Ok(Pushforward { config: MonomialConfig::new(d, entries)?, exps, fixed: tails.clone() })
        }
        Preset::Powers { ds } => {
            if ds.len() < 2 || ds.iter().any(|&x| x == 0) {
                return Err(Error::InvalidParams("need n ≥ 2 positive exponents".into()));
            }
            let mut distinct: Vec<u64> = ds.clone();
            distinct.sort_unstable();
            distinct.dedup();
            let total: u64 = ds.iter().sum();
            let mut entries: Vec<Entry> = distinct.iter().map(|&x| Entry::new(one, vec![x as i64])).collect();
            entries.push(Entry::new(one, vec![total as i64]));
            let mut e: Vec<i64> = distinct
                .iter()
                .map(|&x| ds.iter().filter(|&&y| y == x).count() as i64)
                .collect();
            e.push(-1);
            Ok(Pushforward { config: MonomialConfig::new(1, entries)?, exps: vec![e], fixed: vec![vec![]] })
        }
    }
}

fn check_prime_to_p(preset: &Preset, p: u64) -> Result<()> {
    if let Preset::Powers { ds } = preset {
        if ds.iter().any(|&x| gcd(x, p) != 1) {
            return Err(Error::Precondition("exponents must be prime to p".into()));
        }
    }
    Ok(())
}

struct Evaluator<'a> {
    prep: Prepared<'a>,
    exps: &'a [Vec<i64>],
    translation: Vec<Complex64>,
}

impl<'a> Evaluator<'a> {
    fn new(push: &'a Pushforward, table: &'a GaussTable) -> Result<Self> {
        let prep = Prepared::new(&push.config, table)?;
        let translation = push
            .fixed
            .iter()
            .map(|tail| {
                tail.iter()
                    .map(|x| Ok(table.normalized(table.index_of(x)?)))
                    .product::<Result<Complex64>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Evaluator { prep, exps: &push.exps, translation })
    }

    fn values(&self, chi: &[u64]) -> Option<Vec<Complex64>> {
        let z = self.prep.coords(chi)?;
        Some(
            self.exps
                .iter()
                .zip(&self.translation)
                .map(|(e, &tr)| {
                    z.iter().zip(e).fold(tr, |acc, (zi, &k)| match k {
                        0 => acc,
                        k if k > 0 => acc * zi.powi(k as i32),
                        k => acc * zi.conj().powi(-k as i32),
                    })
                })
                .collect(),
        )
    }
}

/// Normalized Jacobi values for every `χ ∈ S_m`, in row-major order of `χ`.
pub fn corollary_values(preset: &Preset, table: &GaussTable) -> Result<Vec<(Vec<u64>, Vec<Complex64>)>> {
    check_prime_to_p(preset, table.ctx().p())?;
    let push = pushforward(preset)?;
    let ev = Evaluator::new(&push, table)?;
    Ok((0..ev.prep.total())
        .filter_map(|i| {
            let chi = ev.prep.decode(i).indices;
            ev.values(&chi).map(|v| (chi, v))
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryReport {
    pub preset: PresetKind,
    pub m: u32,
    pub q: u64,
    pub s_size: u64,
    /// `max |(|w| − 1)|` over all values and coordinates.
    pub max_modulus_dev: f64,
    pub sums: Vec<(Vec<i64>, Complex64)>,
    pub discrepancy_proxy: f64,
}

/// Weyl sums of the pushed-forward values for `0 < ‖c‖_∞ ≤ cmax`.
pub fn corollary_experiment(preset: &Preset, table: &GaussTable, cmax: i64) -> Result<CorollaryReport> {
    check_prime_to_p(preset, table.ctx().p())?;
    let push = pushforward(preset)?;
    let ev = Evaluator::new(&push, table)?;
    let total = ev.prep.total();
    let (s_size, max_modulus_dev) = (0..total)
        .filter_map(|i| ev.values(&ev.prep.decode(i).indices))
        .fold((0u64, 0.0f64), |(n, d), v| {
            let dv = v.iter().map(|w| (w.norm() - 1.0).abs()).fold(d, f64::max);
            (n + 1, dv)
        });
    if s_size == 0 {
        return Err(Error::EmptySet(table.ctx().level()));
    }
    let mut sums = Vec::new();
    let mut worst = 0.0f64;
    for c in window_vectors(preset.dim(), cmax) {
        let s = det_sum(total, |i| {
            let v = ev.values(&ev.prep.decode(i).indices)?;
            Some(v.iter().zip(&c).fold(Complex64::new(1.0, 0.0), |acc, (w, &k)| match k {
                0 => acc,
                k if k > 0 => acc * w.powi(k as i32),
                k => acc * w.conj().powi(-k as i32),
            }))
        });
        let sigma = s.value() / s_size as f64;
        worst = worst.max(sigma.norm());
        sums.push((c, sigma));
    }
    Ok(CorollaryReport {
        preset: preset.kind(),
        m: table.ctx().level(),
        q: table.ctx().params().q,
        s_size,
        max_modulus_dev,
        sums,
        discrepancy_proxy: worst,
    })
}
