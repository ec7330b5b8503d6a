//! Moment map, gradient flow and critical-point stratification for complex
//! skew-symmetric algebras given by structure constants.

// `!(x <= tol)` is used on purpose so that NaN fails a check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod catalog;
pub mod classify;
pub mod cli;
pub mod error;
pub mod flow;
pub mod io;
pub mod linalg;
pub mod moment;
pub mod random;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
