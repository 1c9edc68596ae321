//! Exact normal-ordering kernel and truncated Fock backend for q-oscillator
//! bosonizations of the quantum group GL_q(2).

pub mod algebra;
pub mod config;
pub mod error;
pub mod fock;
pub mod node;
pub mod numeric;
pub mod qdiff;
pub mod quantum_matrix;
pub mod realizations;
pub mod report;
pub mod scalar;
pub mod sparse;
pub mod suite;

pub use algebra::{AlgebraMode, Block, NormalWord, OperatorExpr, Ops, Osc};
pub use error::{Error, Result};
pub use numeric::{Field, Number};
pub use report::{CheckRecord, CheckReport, Status};
pub use scalar::{qfactorial, qnumber, Scalar, Symbol};
