//! Varying-characteristic sweeps: the same monomial shape at `m = 1` over a
//! list of primes, with exponents allowed to depend on `q` but capped.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::config::{Entry, MonomialConfig};
use super::weyl::weyl_sum;
use crate::characters::LimitCharacter;
use crate::charsums::GaussTable;
use crate::error::{Error, Result};

/// An exponent that is either fixed or `k·(q − 1) + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AExpr {
    Int(i64),
    QMinusOne { times: i64, plus: i64 },
}

impl AExpr {
    pub fn resolve(&self, q: u64) -> i64 {
        match *self {
            AExpr::Int(v) => v,
            AExpr::QMinusOne { times, plus } => times * (q as i64 - 1) + plus,
        }
    }
}

/// Accepts `5`, `-2`, `q-1`, `2(q-1)`, `-(q-1)`, `q-1+3`.
impl FromStr for AExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Ok(v) = t.parse::<i64>() {
            return Ok(AExpr::Int(v));
        }
        let bad = || Error::Parse { pos: 0, msg: format!("bad exponent `{s}`") };
        let (head, plus) = match t.find("q-1") {
            Some(pos) => {
                let after = &t[pos + 3..];
                let after = after.strip_prefix(')').unwrap_or(after);
                let plus = if after.is_empty() { 0 } else { after.parse::<i64>().map_err(|_| bad())? };
                (&t[..pos], plus)
            }
            None => return Err(bad()),
        };
        let head = head.strip_suffix('(').unwrap_or(head);
        let times = match head {
            "" => 1,
            "-" => -1,
            h => h.parse::<i64>().map_err(|_| bad())?,
        };
        Ok(AExpr::QMinusOne { times, plus })
    }
}

impl fmt::Display for AExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AExpr::Int(v) => write!(f, "{v}"),
            AExpr::QMinusOne { times, plus } => {
                write!(f, "{times}(q-1)")?;
                if plus != 0 {
                    write!(f, "{plus:+}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub eta: LimitCharacter,
    pub a: Vec<AExpr>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub r: usize,
    pub entries: Vec<SweepEntry>,
    /// Largest allowed `|a_ij|`.
    pub cap: i64,
}

impl SweepConfig {
    /// Fixed-exponent entries.
    pub fn from_config(config: &MonomialConfig, cap: i64) -> Self {
        SweepConfig {
            r: config.r(),
            entries: config
                .entries()
                .iter()
                .map(|e| SweepEntry { eta: e.eta, a: e.a.iter().map(|&v| AExpr::Int(v)).collect() })
                .collect(),
            cap,
        }
    }

    /// The monomial config at `q`, rejecting exponents above the cap.
    pub fn resolve(&self, q: u64) -> Result<MonomialConfig> {
        let mut entries = Vec::new();
        for e in &self.entries {
            let a: Vec<i64> = e.a.iter().map(|x| x.resolve(q)).collect();
            if let Some(&v) = a.iter().find(|v| v.abs() > self.cap) {
                return Err(Error::ExponentCap { value: v, cap: self.cap, q });
            }
            entries.push(Entry::new(e.eta, a));
        }
        MonomialConfig::new(self.r, entries)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub q: u64,
    pub abs_sigma: f64,
    /// `|Σ_1|·q^{1/2}`, bounded if the decay is uniform in `q`.
    pub scaled: f64,
    pub s_size: u64,
}

/// `|Σ_1(Λ_c)|` over `F_q` for each `q` in `primes`. The cap is checked for
/// every prime before anything is computed.
pub fn sweep_primes(cfg: &SweepConfig, c: &[i64], primes: &[u64]) -> Result<Vec<SweepRow>> {
    let configs = primes
        .iter()
        .map(|&q| cfg.resolve(q))
        .collect::<Result<Vec<_>>>()?;
    primes
        .iter()
        .zip(&configs)
        .map(|(&q, config)| {
            let table = GaussTable::for_level(q, 1, 1)?;
            let rep = weyl_sum(config, c, &table)?;
            let abs_sigma = rep.sigma.norm();
            Ok(SweepRow { q, abs_sigma, scaled: abs_sigma * (q as f64).sqrt(), s_size: rep.s_size })
        })
        .collect()
}
