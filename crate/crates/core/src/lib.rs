//! Exact-arithmetic toolkit for weighted generalized inverses in matrix rings
//! over Q, GF(p), and Z_n.
//!
//! Everything follows a construct-and-verify discipline: every returned
//! inverse is re-checked against its defining equations, and brute-force
//! oracles over small finite rings back the linear decision procedures.

pub mod error;
pub mod geninv;
pub mod harness;
pub mod matrix;
pub mod ring;
mod snf;
pub mod solve;
pub mod weighted;

pub use error::Error;
pub use matrix::{prod, Matrix};
pub use ring::{RingSpec, Scalar};
