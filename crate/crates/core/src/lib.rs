//! Stabilizer codes that correct amplitude-damping errors.
//!
//! - [`pauli`]: bit-packed Pauli operators and exact Pauli sums.
//! - [`stabcode`]: stabilizer codes, validation, distance, code files.
//! - [`concat`]: concatenation with a two-qubit inner code.
//! - [`adverify`]: exact check of the damping error-detection conditions.
//! - [`oracle`]: dense state-vector and density-matrix cross-checks.
//! - [`tables`]: shortest constructible t-codes per `(k, t)`.

pub mod adverify;
mod bits;
pub mod concat;
pub mod error;
pub mod oracle;
pub mod pauli;
pub mod stabcode;
pub mod tables;

pub use bits::BitVec;
pub use error::{Error, Result};
pub use pauli::{Gaussian, Pauli, PauliOperator, PauliSum, Phase};
pub use stabcode::{CodeParams, StabilizerCode};
