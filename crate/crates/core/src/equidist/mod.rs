//! Weyl sums of normalized Gauss-sum tuples, the explicit bound they are
//! compared against, the independence hypothesis, and the Jacobi-sum
//! experiments derived from them.

pub mod config;
pub mod corollary;
pub mod independence;
pub mod sweep;
pub mod weyl;

pub use config::{primitive_decomposition, Entry, MonomialConfig};
pub use corollary::{corollary_experiment, corollary_values, CorollaryReport, Preset, PresetKind};
pub use independence::{check_independence, check_terms, GroupCertificate, Independence};
pub use sweep::{sweep_primes, AExpr, SweepConfig, SweepEntry, SweepRow};
pub use weyl::{
    bound_rhs, enumerate_s, fitted_constant, phi, weyl_series, weyl_sum, weyl_window, window_vectors, WeylReport,
    WindowReport,
};
