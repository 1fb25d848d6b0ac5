use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::equidist::primitive_decomposition;
use crate::arith::prime_power;
use crate::characters::LimitCharacter;
use crate::error::{Error, Result};

pub type Key = (LimitCharacter, Vec<i64>);

/// An element `Π e_{η,a}^ε` of the free abelian group on the symbols
/// `e_{η,a}`, always kept in normal form (distinct keys, no zero exponents).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussMonomial {
    r: usize,
    p: u64,
    q: u64,
    terms: BTreeMap<Key, i64>,
}

impl GaussMonomial {
    /// The identity element for dimension `r` over `F_q`.
    pub fn one(r: usize, q: u64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParams("dimension r must be positive".into()));
        }
        let (p, _) = prime_power(q)?;
        Ok(GaussMonomial { r, p, q, terms: BTreeMap::new() })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn exponent(&self, eta: &LimitCharacter, a: &[i64]) -> i64 {
        self.terms.get(&(*eta, a.to_vec())).copied().unwrap_or(0)
    }

    fn validate(&self, eta: &LimitCharacter, a: &[i64]) -> Result<()> {
        if a.len() != self.r {
            return Err(Error::InvalidParams(format!("exponent tuple must have {} coordinates", self.r)));
        }
        if a.iter().all(|&x| x == 0) {
            return Err(Error::InvalidParams("exponent tuple is zero".into()));
        }
        if !eta.realizable_in(self.q - 1) {
            return Err(Error::NotRealizable {
                denominator: eta.denominator(),
                group_order: self.q - 1,
                level: 1,
            });
        }
        Ok(())
    }

    /// Multiplies in `e_{η,a}^exp`.
    pub fn insert(&mut self, eta: LimitCharacter, a: Vec<i64>, exp: i64) -> Result<()> {
        self.validate(&eta, &a)?;
        if exp == 0 {
            return Ok(());
        }
        let key = (eta, a);
        let v = self.terms.entry(key.clone()).or_insert(0);
        *v = v.checked_add(exp).ok_or(Error::Overflow("monomial exponent"))?;
        if *v == 0 {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn with(mut self, eta: LimitCharacter, a: Vec<i64>, exp: i64) -> Result<Self> {
        self.insert(eta, a, exp)?;
        Ok(self)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.r != other.r || self.q != other.q {
            return Err(Error::InvalidParams("monomials over different (r, q)".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for ((eta, a), e) in other.terms() {
            out.insert(*eta, a.clone(), e)?;
        }
        Ok(out)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let mut out = GaussMonomial { terms: BTreeMap::new(), ..self.clone() };
        for ((eta, a), e) in self.terms() {
            let v = e.checked_mul(k).ok_or(Error::Overflow("monomial exponent"))?;
            out.insert(*eta, a.clone(), v)?;
        }
        Ok(out)
    }

    pub fn inv(&self) -> Self {
        self.pow(-1).expect("negation cannot overflow a nonzero i64 other than MIN")
    }

    /// `Σ_i (|μ_i| − 1)` over the terms.
    pub fn mu_measure(&self) -> u64 {
        self.terms
            .keys()
            .map(|(_, a)| primitive_decomposition(a).0.unsigned_abs() - 1)
            .sum()
    }
}

/// Normal form of an arbitrary list of `(η, a, ε)` factors.
pub fn combine(r: usize, q: u64, factors: &[(LimitCharacter, Vec<i64>, i64)]) -> Result<GaussMonomial> {
    let mut x = GaussMonomial::one(r, q)?;
    for (eta, a, e) in factors {
        x.insert(*eta, a.clone(), *e)?;
    }
    Ok(x)
}

impl fmt::Display for GaussMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("1");
        }
        for (i, ((eta, a), e)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            let a: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            write!(f, "[eta={eta}; a=({}); exp={e}]", a.join(","))?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermOut<'a> {
    eta: &'a LimitCharacter,
    a: &'a [i64],
    exp: i64,
}

impl Serialize for GaussMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for ((eta, a), &exp) in &self.terms {
            seq.serialize_element(&TermOut { eta, a, exp })?;
        }
        seq.end()
    }
}
