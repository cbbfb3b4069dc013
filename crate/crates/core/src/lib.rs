//! Solving systems of low-degree polynomial equations over GF(2) by parity
//! counting.
//!
//! The crate is layered: [`algebra`] holds bit tables, weight-bounded point
//! sets and Möbius transforms; [`system`] holds polynomial systems and their
//! manipulations; [`engine`] counts solution parities; [`solver`] builds
//! decision, search and enumeration on top; [`oracle`] is an exhaustive
//! reference used for cross-checking.

pub mod algebra;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod rng;
pub mod solver;
pub mod system;

pub use algebra::{AnfPoly, BitTable, Domain, TruthTable, WSet};
pub use engine::{EngineParams, ParityVector};
pub use error::{Error, Result};
pub use rng::Stream;
pub use solver::{SolveOutcome, SolverParams};
pub use system::{Assignment, F2Matrix, PolySystem};
