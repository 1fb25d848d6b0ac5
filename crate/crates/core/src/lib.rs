//! Gauss and Jacobi sums over finite fields, Weyl-sum equidistribution
//! experiments, and the exact decomposition of Gauss-sum monomials into
//! conjugation, Frobenius and Hasse–Davenport relations.

pub mod arith;
pub mod characters;
pub mod charsums;
pub mod dft;
pub mod equidist;
pub mod error;
pub mod field;
pub mod identities;
pub mod linalg;
pub mod poly;
pub mod relations;
pub mod sum;

pub use error::{Error, Result};
