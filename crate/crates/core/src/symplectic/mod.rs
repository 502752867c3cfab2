//! Exact integer linear algebra over the standard symplectic lattice.
//!
//! Basis order is interleaved `(e1, f1, ..., eg, fg)` and the form is
//! block-diagonal with blocks `[[0, 1], [-1, 0]]`.

mod form;
mod matrix;
mod snf;
mod symp;

pub use form::{pairing, HomClass, SympForm};
pub use matrix::IntMatrix;
pub use snf::{integer_rank, smith_normal_form, SnfResult};
pub use symp::{transvection, Order, SympMatrix};
