//! Finite quantum groups from a finite group `G`: the dual pair
//! `C*(G)`, `C(G)`, the quantum double `D(G)`, its R-matrix and the twisted
//! (Weyl) algebra, with every structural identity checkable on demand.
//!
//! The library is generic over the real scalar (`f32`, `f64`, or an exact
//! rational type); the aliases below fix `f64`, which the verification
//! suites and the command-line tool use.

pub mod double;
pub mod engine;
pub mod error;
pub mod grid;
pub mod group;
pub mod linalg;
pub mod quantum_group;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod twist;

pub use error::{Error, Result};
pub use group::FiniteGroup;

pub type Complex64 = num_complex::Complex<f64>;
pub type QuantumGroupPair = quantum_group::QuantumGroupPair<f64>;
pub type DoubleContext = double::DoubleContext<f64>;
pub type RMatrix = twist::RMatrix<f64>;
pub type Twist = twist::Twist<f64>;
pub type MonomialOperator = engine::MonomialOperator<f64>;
pub type SparseOperator = engine::SparseOperator<f64>;
pub type Functional = engine::Functional<f64>;
pub type GroupFunction = group::GroupFunction<f64>;
pub type PairFunction = grid::PairFunction<f64>;
pub type Matrix = linalg::Matrix<f64>;
