//! Numerical q-series kernel: q-shifted factorials, the Jacobi theta function, basic
//! (bi)lateral hypergeometric series, lambda-derivatives and the `E_q(y D | q^b)`
//! operators, plus a registry of summation identities checked on random samples.

pub mod cli;
pub mod error;
pub mod hyperseries;
pub mod identities;
pub mod qderivative;
pub mod qfactorial;
pub mod qoperator;
pub mod scalar;
pub mod theta;

pub use error::{QError, QResult};
pub use qfactorial::{QBase, Truncation};
pub use scalar::{c64, ComplexScalar, Scaled};
