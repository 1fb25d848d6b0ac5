use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::characters::LimitCharacter;
use crate::error::{Error, Result};

/// One coordinate `q^{−m/2}·χ(t)·G_m(ηχ^a)` of the monomial map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub eta: LimitCharacter,
    pub a: Vec<i64>,
    /// Discrete logs of `t_1..t_r` in the level-1 field (all zero means `t = 1`).
    pub t: Vec<u64>,
}

impl Entry {
    pub fn new(eta: LimitCharacter, a: Vec<i64>) -> Self {
        let t = vec![0; a.len()];
        Entry { eta, a, t }
    }

    pub fn with_t(mut self, t: Vec<u64>) -> Self {
        self.t = t;
        self
    }
}

/// Writes a nonzero tuple as `μ·b` with `b` primitive: coprime coordinates,
/// first nonzero coordinate positive.
pub fn primitive_decomposition(a: &[i64]) -> (i64, Vec<i64>) {
    let g = a.iter().fold(0u64, |acc, &x| gcd(acc, x.unsigned_abs())) as i64;
    assert!(g > 0, "zero tuple has no primitive decomposition");
    let first = *a.iter().find(|&&x| x != 0).unwrap();
    let mu = if first > 0 { g } else { -g };
    (mu, a.iter().map(|&x| x / mu).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialConfig {
    r: usize,
    entries: Vec<Entry>,
}

impl MonomialConfig {
    pub fn new(r: usize, entries: Vec<Entry>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParams("dimension r must be positive".into()));
        }
        if entries.is_empty() {
            return Err(Error::InvalidParams("at least one entry is required".into()));
        }
        for (i, e) in entries.iter().enumerate() {
            if e.a.len() != r || e.t.len() != r {
                return Err(Error::InvalidParams(format!("entry {i}: expected {r} coordinates")));
            }
            if e.a.iter().all(|&x| x == 0) {
                return Err(Error::InvalidParams(format!("entry {i}: exponent tuple is zero")));
            }
        }
        Ok(MonomialConfig { r, entries })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn decomposition(&self, i: usize) -> (i64, Vec<i64>) {
        primitive_decomposition(&self.entries[i].a)
    }

    /// `a = Σ_i min_{j: a_ij ≠ 0} |a_ij|`.
    pub fn a_const(&self) -> u64 {
        self.entries
            .iter()
            .map(|e| e.a.iter().filter(|&&x| x != 0).map(|x| x.unsigned_abs()).min().unwrap())
            .sum()
    }

    /// Every `η_i` must be a character of the base field `F_q`.
    pub fn check_base(&self, q: u64) -> Result<()> {
        for e in &self.entries {
            if !e.eta.realizable_in(q - 1) {
                return Err(Error::NotRealizable {
                    denominator: e.eta.denominator(),
                    group_order: q - 1,
                    level: 1,
                });
            }
            if e.t.iter().any(|&l| l >= q - 1) {
                return Err(Error::InvalidParams("t logs must lie in 0..q-1".into()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decompositions() {
        assert_eq!(primitive_decomposition(&[4, -6]), (2, vec![2, -3]));
        assert_eq!(primitive_decomposition(&[0, -3]), (-3, vec![0, 1]));
        assert_eq!(primitive_decomposition(&[-1, 1]), (-1, vec![1, -1]));
        assert_eq!(primitive_decomposition(&[5]), (5, vec![1]));
    }

    #[test]
    fn a_constant() {
        let one = LimitCharacter::trivial();
        let c = MonomialConfig::new(1, vec![Entry::new(one, vec![1]), Entry::new(one, vec![2])]).unwrap();
        assert_eq!(c.a_const(), 3);
        let c = MonomialConfig::new(2, vec![Entry::new(one, vec![0, -4]), Entry::new(one, vec![3, 2])]).unwrap();
        assert_eq!(c.a_const(), 6);
    }

    #[test]
    fn rejects_malformed() {
        let one = LimitCharacter::trivial();
        assert!(MonomialConfig::new(1, vec![Entry::new(one, vec![0])]).is_err());
        assert!(MonomialConfig::new(2, vec![Entry::new(one, vec![1])]).is_err());
        let c = MonomialConfig::new(1, vec![Entry::new(LimitCharacter::new(1, 3), vec![1])]).unwrap();
        assert!(c.check_base(5).is_err());
        assert!(c.check_base(7).is_ok());
    }

    proptest! {
        #[test]
        fn decomposition_reconstructs(a in prop::collection::vec(-30i64..30, 1..4)) {
            prop_assume!(a.iter().any(|&x| x != 0));
            let (mu, b) = primitive_decomposition(&a);
            prop_assert!(mu != 0);
            let rebuilt: Vec<i64> = b.iter().map(|x| x * mu).collect();
            prop_assert_eq!(rebuilt, a);
            prop_assert_eq!(b.iter().fold(0u64, |g, &x| gcd(g, x.unsigned_abs())), 1);
            prop_assert!(*b.iter().find(|&&x| x != 0).unwrap() > 0);
        }
    }
}
