//! Bit-level primitives over GF(2).

pub mod anf;
pub mod bits;
pub mod mobius;
pub mod numerics;
pub mod wset;

pub use anf::{AnfPoly, Domain, TruthTable};
pub use bits::BitTable;
pub use mobius::{evaluate_full, evaluate_on_wset, mobius_full, mobius_mixed, mobius_truncated};
pub use numerics::{
    binary_entropy, level_exponent, symbolic_coefficient_degree, tau, tau_by_maximization,
};
pub use wset::{ball_size, binomial, WSet};
