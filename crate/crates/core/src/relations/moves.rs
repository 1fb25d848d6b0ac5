use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::GaussMonomial;
use crate::characters::LimitCharacter;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    /// Conjugation pair `e_{η,a}·e_{η̄,−a}`.
    P,
    /// Frobenius pair `e_{η^p,pa}^{−1}·e_{η,a}`.
    Q,
    /// Hasse–Davenport `e_{η^d,da}^{−1}·Π_{ξ^d=𝟏} e_{ηξ,a}`.
    R,
}

/// A generator of the relation subgroup raised to `exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub eta: LimitCharacter,
    pub a: Vec<i64>,
    /// Only meaningful for `R`; 1 otherwise.
    pub d: u64,
    pub exponent: i64,
}

impl Move {
    pub fn p(eta: LimitCharacter, a: Vec<i64>, exponent: i64) -> Self {
        Move { kind: MoveKind::P, eta, a, d: 1, exponent }
    }

    pub fn q(eta: LimitCharacter, a: Vec<i64>, exponent: i64) -> Self {
        Move { kind: MoveKind::Q, eta, a, d: 1, exponent }
    }

    pub fn r(eta: LimitCharacter, a: Vec<i64>, d: u64, exponent: i64) -> Self {
        Move { kind: MoveKind::R, eta, a, d, exponent }
    }

    pub fn inverse(&self) -> Self {
        Move { exponent: -self.exponent, ..self.clone() }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        match self.kind {
            MoveKind::R => write!(f, "R({}, ({}), {})^{}", self.eta, a.join(","), self.d, self.exponent),
            k => write!(f, "{:?}({}, ({}))^{}", k, self.eta, a.join(","), self.exponent),
        }
    }
}

fn scale(a: &[i64], k: i64) -> Result<Vec<i64>> {
    a.iter()
        .map(|&x| x.checked_mul(k).ok_or(Error::Overflow("exponent tuple")))
        .collect()
}

/// The formal product of the move, raised to its exponent.
pub fn expand_move(mv: &Move, r: usize, q: u64) -> Result<GaussMonomial> {
    let mut x = GaussMonomial::one(r, q)?;
    let p = x.p();
    let e = mv.exponent;
    match mv.kind {
        MoveKind::P => {
            x.insert(mv.eta, mv.a.clone(), e)?;
            x.insert(mv.eta.conj(), scale(&mv.a, -1)?, e)?;
        }
        MoveKind::Q => {
            x.insert(mv.eta.pow(p as i64), scale(&mv.a, p as i64)?, -e)?;
            x.insert(mv.eta, mv.a.clone(), e)?;
        }
        MoveKind::R => {
            let d = mv.d;
            if d == 0 || (q - 1) % d != 0 {
                return Err(Error::Precondition(format!("R move needs d | q-1 (d = {d}, q = {q})")));
            }
            x.insert(mv.eta.pow(d as i64), scale(&mv.a, d as i64)?, -e)?;
            for j in 0..d {
                x.insert(mv.eta.mul(&LimitCharacter::new(j as i128, d)), mv.a.clone(), e)?;
            }
        }
    }
    Ok(x)
}

/// Product of all expanded moves.
pub fn expand_all(moves: &[Move], r: usize, q: u64) -> Result<GaussMonomial> {
    let mut x = GaussMonomial::one(r, q)?;
    for mv in moves {
        x = x.mul(&expand_move(mv, r, q)?)?;
    }
    Ok(x)
}
