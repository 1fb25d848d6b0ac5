//! The independence hypothesis: entries sharing a primitive direction `b`
//! must have linearly independent vectors `v_i = Σ_{ξ^{μ_i} = η_i} ξ`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::config::{primitive_decomposition, MonomialConfig};
use crate::characters::{roots_mu, LimitCharacter};
use crate::linalg::kernel_vector;

/// Rank certificate for one direction `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupCertificate {
    pub b: Vec<i64>,
    /// Positions (in the input) of the entries with this direction.
    pub members: Vec<usize>,
    /// Characters indexing the rows of the matrix, increasing.
    pub basis: Vec<LimitCharacter>,
    pub rank: usize,
    /// Pivot columns found by the exact row reduction.
    pub pivots: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Independence {
    Independent { groups: Vec<GroupCertificate> },
    Dependent { group: GroupCertificate, coeffs: Vec<BigInt> },
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Independence::Independent { .. })
    }
}

/// `v` as a multiset of characters: the `ξ` with `ξ^μ = η` (through `η̄` and
/// `|μ|` when `μ < 0`).
pub fn root_vector(eta: &LimitCharacter, mu: i64, p: u64) -> Vec<LimitCharacter> {
    if mu > 0 {
        roots_mu(eta, mu as u64, p)
    } else {
        roots_mu(&eta.conj(), mu.unsigned_abs(), p)
    }
}

/// Checks the hypothesis for `(η_i, a_i)` pairs; groups are visited in
/// increasing order of `b` and the first dependent one is reported.
pub fn check_terms(terms: &[(LimitCharacter, Vec<i64>)], p: u64) -> Independence {
    let mut groups: BTreeMap<Vec<i64>, Vec<(usize, i64)>> = BTreeMap::new();
    for (i, (_, a)) in terms.iter().enumerate() {
        let (mu, b) = primitive_decomposition(a);
        groups.entry(b).or_default().push((i, mu));
    }
    let mut certs = Vec::new();
    for (b, members) in groups {
        let vecs: Vec<Vec<LimitCharacter>> = members
            .iter()
            .map(|&(i, mu)| root_vector(&terms[i].0, mu, p))
            .collect();
        let mut basis: Vec<LimitCharacter> = vecs.iter().flatten().copied().collect();
        basis.sort();
        basis.dedup();
        // rows: characters, columns: members
        let mut mat = vec![vec![BigRational::zero(); members.len()]; basis.len()];
        for (col, v) in vecs.iter().enumerate() {
            for xi in v {
                let row = basis.binary_search(xi).expect("character in basis");
                mat[row][col] += BigRational::one();
            }
        }
        let (kernel, pivots) = kernel_vector(&mat);
        let cert = GroupCertificate {
            b,
            members: members.iter().map(|&(i, _)| i).collect(),
            basis,
            rank: pivots.len(),
            pivots,
        };
        if let Some(coeffs) = kernel {
            return Independence::Dependent { group: cert, coeffs };
        }
        certs.push(cert);
    }
    Independence::Independent { groups: certs }
}

pub fn check_independence(config: &MonomialConfig, p: u64) -> Independence {
    let terms: Vec<(LimitCharacter, Vec<i64>)> =
        config.entries().iter().map(|e| (e.eta, e.a.clone())).collect();
    check_terms(&terms, p)
}

#[cfg(test)]
mod tests {
    use super::super::config::Entry;
    use super::*;

    fn lc(u: i128, v: u64) -> LimitCharacter {
        LimitCharacter::new(u, v)
    }

    fn config(entries: &[(LimitCharacter, Vec<i64>)]) -> MonomialConfig {
        let r = entries[0].1.len();
        MonomialConfig::new(r, entries.iter().map(|(e, a)| Entry::new(*e, a.clone())).collect()).unwrap()
    }

    #[test]
    fn distinct_characters_same_direction() {
        let c = config(&[(lc(0, 1), vec![1]), (lc(1, 4), vec![1]), (lc(1, 2), vec![1])]);
        assert!(check_independence(&c, 5).is_independent());
    }

    #[test]
    fn powers_of_one_character() {
        let c = config(&[(lc(0, 1), vec![1]), (lc(0, 1), vec![2]), (lc(0, 1), vec![3]), (lc(0, 1), vec![4])]);
        assert!(check_independence(&c, 5).is_independent());
        assert!(check_independence(&c, 7).is_independent());
    }

    #[test]
    fn repeated_entry_is_dependent() {
        let c = config(&[(lc(1, 3), vec![2, 1]), (lc(1, 3), vec![2, 1])]);
        match check_independence(&c, 7) {
            Independence::Dependent { group, coeffs } => {
                assert_eq!(group.b, vec![2, 1]);
                assert_eq!(coeffs, vec![BigInt::from(1), BigInt::from(-1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn conjugate_pair_is_dependent() {
        // (η, a) and (η̄, −a) give the same vector
        let c = config(&[(lc(1, 3), vec![1]), (lc(2, 3), vec![-1])]);
        assert!(!check_independence(&c, 7).is_independent());
    }

    #[test]
    fn hasse_davenport_shape_is_dependent() {
        // v(𝟏, 2) = 𝟏 + 1/2 = v(𝟏, 1) + v(1/2, 1)
        let c = config(&[(lc(0, 1), vec![2]), (lc(0, 1), vec![1]), (lc(1, 2), vec![1])]);
        match check_independence(&c, 5) {
            Independence::Dependent { coeffs, .. } => {
                assert_eq!(coeffs, vec![BigInt::from(1), BigInt::from(-1), BigInt::from(-1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn different_directions_never_interact() {
        let c = config(&[(lc(0, 1), vec![1, 0]), (lc(0, 1), vec![0, 1]), (lc(0, 1), vec![1, 1])]);
        match check_independence(&c, 3) {
            Independence::Independent { groups } => assert_eq!(groups.len(), 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn frobenius_power_gives_the_same_vector() {
        // ξ^5 = 𝟏 has only ξ = 𝟏 when p = 5, so v(𝟏, 5) = v(𝟏, 1)
        let c = config(&[(lc(0, 1), vec![5]), (lc(0, 1), vec![1])]);
        assert!(!check_independence(&c, 5).is_independent());
    }
}
