//! Affine transformations of F_p^d.

pub mod affine;
pub mod arith;
pub mod conjugacy;
pub mod error;
pub mod matrix;
pub mod orbit;
pub mod poly;
pub mod registry;
pub mod tables;
pub mod verify;

#[cfg(test)]
mod proptests;

pub use error::{Error, Result};
pub use matrix::{Matrix, Vector};
pub use poly::{Factorization, Poly};
