//! Three-qubit GHZ-diagonal states: PPT polytope, optimal and nonlinear
//! entanglement witnesses, bound-entanglement classification and the
//! mutually unbiased basis tables behind the state family.

#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod mub;
pub mod pauli_core;
pub mod ppt;
pub mod witness;

pub use error::{Error, Result};
