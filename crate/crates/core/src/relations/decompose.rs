use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::monomial::{GaussMonomial, Key};
use super::moves::{expand_all, expand_move, Move, MoveKind};
use crate::arith::{additive_order, divisors, rem_euclid};
use crate::characters::{pth_root_limit, roots_over_k, LimitCharacter};
use crate::equidist::{check_terms, primitive_decomposition, GroupCertificate, Independence};
use crate::error::{Error, Result};
use crate::field::FieldCtx;

/// The constant `D = ζ_{q−1}^{unit}·q^{q_power}·Π G(ξ)^{k}` over the base
/// field, where `ζ_{q−1}^{unit}` stands for a character value of order
/// dividing `q − 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SymbolicConstant {
    pub unit: u64,
    pub unit_modulus: u64,
    pub q_power: i64,
    pub gauss: BTreeMap<LimitCharacter, i64>,
}

impl SymbolicConstant {
    fn new(q: u64) -> Self {
        SymbolicConstant { unit_modulus: q - 1, ..Default::default() }
    }

    fn add_unit(&mut self, k: i128) {
        let n = self.unit_modulus;
        self.unit = rem_euclid(self.unit as i128 + k, n);
    }

    fn add_gauss(&mut self, xi: LimitCharacter, k: i64) {
        if xi.is_trivial() || k == 0 {
            return;
        }
        let v = self.gauss.entry(xi).or_insert(0);
        *v += k;
        if *v == 0 {
            self.gauss.remove(&xi);
        }
    }
}

/// `x = Π moves` in the free group, with `χ(t)·ev_{m,χ}(x) = D^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub moves: Vec<Move>,
    /// `Σ(|μ_i| − 1)` before the run and after each Frobenius or
    /// Hasse–Davenport step.
    pub mu_trace: Vec<u64>,
    /// Level-1 discrete logs of `t_1..t_r`.
    pub t: Vec<u64>,
    pub d: SymbolicConstant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Witness {
    /// The reduced monomial satisfies the independence hypothesis.
    Independent { reduced: GaussMonomial, groups: Vec<GroupCertificate> },
    /// A dependency exists but the chosen term has no usable divisor.
    Blocked { reduced: GaussMonomial, group: GroupCertificate, coeffs: Vec<String>, term: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    #[serde(rename = "in_h")]
    InH(Decomposition),
    #[serde(rename = "not_in_h")]
    NotInH(Witness),
}

impl Verdict {
    pub fn is_in_h(&self) -> bool {
        matches!(self, Verdict::InH(_))
    }

    pub fn decomposition(&self) -> Option<&Decomposition> {
        match self {
            Verdict::InH(d) => Some(d),
            Verdict::NotInH(_) => None,
        }
    }
}

fn apply(x: &mut GaussMonomial, mv: Move, log: &mut Vec<Move>) -> Result<()> {
    *x = x.mul(&expand_move(&mv, x.r(), x.q())?)?;
    log.push(mv);
    Ok(())
}

fn scaled(b: &[i64], k: i64) -> Vec<i64> {
    b.iter().map(|&v| v * k).collect()
}

/// Reduces `x` by conjugation, Frobenius and Hasse–Davenport moves until it
/// is trivial (`x ∈ H`) or the independence hypothesis certifies `x ∉ H`.
pub fn decompose(x: &GaussMonomial, base: &FieldCtx) -> Result<Verdict> {
    let q = x.q();
    if base.level() != 1 || base.order() != q {
        return Err(Error::InvalidParams(format!("base field must be F_{q} at level 1")));
    }
    let p = x.p();
    let mut cur = x.clone();
    let mut applied: Vec<Move> = Vec::new();
    let mut trace = vec![cur.mu_measure()];

    loop {
        // negative μ: swap to the conjugate key
        let negatives: Vec<(Key, i64)> = cur
            .terms()
            .filter(|((_, a), _)| primitive_decomposition(a).0 < 0)
            .map(|(k, e)| (k.clone(), e))
            .collect();
        for ((eta, a), e) in negatives {
            apply(&mut cur, Move::p(eta.conj(), scaled(&a, -1), -e), &mut applied)?;
        }
        if cur.is_empty() {
            break;
        }

        let before = cur.mu_measure();
        let frob = cur
            .terms()
            .find(|((_, a), _)| primitive_decomposition(a).0 as u64 % p == 0)
            .map(|(k, e)| (k.clone(), e));
        if let Some(((eta, a), e)) = frob {
            let root = pth_root_limit(&eta, p);
            let a_p: Vec<i64> = a.iter().map(|&v| v / p as i64).collect();
            apply(&mut cur, Move::q(root, a_p, e), &mut applied)?;
            let after = cur.mu_measure();
            debug_assert!(after < before);
            trace.push(after);
            continue;
        }

        let keys: Vec<(Key, i64)> = cur.terms().map(|(k, e)| (k.clone(), e)).collect();
        let terms: Vec<(LimitCharacter, Vec<i64>)> = keys.iter().map(|(k, _)| k.clone()).collect();
        let (group, coeffs) = match check_terms(&terms, p) {
            Independence::Independent { groups } => {
                return Ok(Verdict::NotInH(Witness::Independent { reduced: cur, groups }));
            }
            Independence::Dependent { group, coeffs } => (group, coeffs),
        };

        // largest μ among the members that take part in the dependency
        let mut chosen: Option<(usize, i64)> = None;
        for (j, &i) in group.members.iter().enumerate() {
            if coeffs[j].is_zero() {
                continue;
            }
            let mu = primitive_decomposition(&terms[i].1).0;
            if chosen.map_or(true, |(_, best)| mu > best) {
                chosen = Some((i, mu));
            }
        }
        let (i, mu) = chosen.expect("kernel vector is nonzero");
        let ((eta, a), e) = keys[i].clone();
        let (_, b) = primitive_decomposition(&a);
        let idx = eta.index_in(q - 1)?;

        let mut step = None;
        for d in divisors(mu as u64).into_iter().filter(|&d| d > 1) {
            let roots = roots_over_k(idx, d, q);
            if roots.len() >= 2 {
                let ord = additive_order(roots[1] - roots[0], q - 1);
                let theta = roots_over_k(idx, ord, q)[0];
                step = Some((ord, theta));
                break;
            }
        }
        let Some((ord, theta)) = step else {
            return Ok(Verdict::NotInH(Witness::Blocked {
                reduced: cur,
                group,
                coeffs: coeffs.iter().map(|c| c.to_string()).collect(),
                term: i,
            }));
        };
        let theta = LimitCharacter::new(theta as i128, q - 1);
        apply(&mut cur, Move::r(theta, scaled(&b, mu / ord as i64), ord, e), &mut applied)?;
        let after = cur.mu_measure();
        debug_assert!(after < before);
        trace.push(after);
    }

    let moves: Vec<Move> = applied.iter().map(Move::inverse).collect();
    let (t, d) = constants(&moves, x.r(), base)?;
    Ok(Verdict::InH(Decomposition { moves, mu_trace: trace, t, d }))
}

/// `t` and `D` accumulated over the moves.
pub fn constants(moves: &[Move], r: usize, base: &FieldCtx) -> Result<(Vec<u64>, SymbolicConstant)> {
    let q = base.order();
    let n = q - 1;
    let log_minus_one = base.dlog(&base.from_int(-1))?;
    let mut t = vec![0i128; r];
    let mut d = SymbolicConstant::new(q);
    for mv in moves {
        let k = mv.exponent as i128;
        match mv.kind {
            MoveKind::P => {
                for (tl, &al) in t.iter_mut().zip(&mv.a) {
                    *tl = (*tl + k * al as i128 * log_minus_one as i128).rem_euclid(n as i128);
                }
                d.add_unit(k * mv.eta.index_in(n)? as i128 * log_minus_one as i128);
                d.q_power += mv.exponent;
            }
            MoveKind::Q => {}
            MoveKind::R => {
                let log_d = base.dlog(&base.from_int(mv.d as i64))? as i128;
                let dd = mv.d as i128;
                for (tl, &al) in t.iter_mut().zip(&mv.a) {
                    *tl = (*tl + k * dd * al as i128 * log_d).rem_euclid(n as i128);
                }
                // η(d^{−d})
                d.add_unit(-k * dd * mv.eta.index_in(n)? as i128 * log_d);
                for j in 1..mv.d {
                    d.add_gauss(LimitCharacter::new(j as i128, mv.d), mv.exponent);
                }
            }
        }
    }
    Ok((t.into_iter().map(|v| v as u64).collect(), d))
}

/// Exact check that the moves multiply out to `x`.
pub fn verify_decomposition(x: &GaussMonomial, dec: &Decomposition) -> Result<bool> {
    Ok(expand_all(&dec.moves, x.r(), x.q())? == *x)
}
