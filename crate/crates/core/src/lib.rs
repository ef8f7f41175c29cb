//! Lattice models of Josephson-junction circuit chains in the truncated
//! charge basis, with a DMRG ground-state engine, a dense exact
//! diagonalization oracle, and the criticality diagnostics used to study
//! them: central-charge fits, Casimir scaling, correlator exponents, and
//! boundary-entropy flows.

extern crate blas_src;

pub mod analysis;
pub mod charge;
pub mod error;
pub mod exact;
pub mod harness;
pub mod landscape;
pub mod model;
pub mod tensor;

pub use analysis::{FitParam, FitReport};
pub use charge::{ChargeOperator, CMatrix};
pub use error::{Error, Result};
pub use landscape::{ClassicalPotential, CriticalLocus, Minimum};
pub use model::{Boundary, CircuitParams, FactorizedOperator, Term, TermList, TermOp};
pub use tensor::{DmrgConfig, DmrgResult, Mpo, Mps};
