//! Exact computations in tau-tilting theory over finite-dimensional basic algebras.

pub mod algebra;
pub mod complex;
pub mod error;
pub mod explorer;
pub mod field;
pub mod linalg;
pub mod module;
pub mod pair;
pub mod poly;
pub mod proj;
pub mod tau_ops;

pub use algebra::{compile_bound_quiver, BasicAlgebra, Elem, Quiver, Relation};
pub use complex::{ChainMap, Direction, Indec, SiltingStatus, TwoTermComplex};
pub use error::{Error, Result};
pub use explorer::{ExchangeGraph, ReductionData, Suite, SuiteReport, VerifyOptions};
pub use field::{Field, Scalar};
pub use linalg::Matrix;
pub use module::{Module, ModuleMap};
pub use pair::{check_pair, from_tau_pair, to_tau_pair, Role, TauPair};
