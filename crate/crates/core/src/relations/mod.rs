//! The subgroup `H` of formal Gauss-sum monomials generated by the
//! conjugation, Frobenius and Hasse–Davenport relations, and a decision
//! procedure for membership.

pub mod crosscheck;
pub mod decompose;
pub mod grammar;
pub mod monomial;
pub mod moves;

pub use crosscheck::{constancy_spread, constant_power, numeric_crosscheck, t_grid, CrosscheckReport};
pub use decompose::{constants, decompose, verify_decomposition, Decomposition, SymbolicConstant, Verdict, Witness};
pub use grammar::parse_monomial;
pub use monomial::{combine, GaussMonomial, Key};
pub use moves::{expand_all, expand_move, Move, MoveKind};
