//! Exact cohomology of Lie conformal and Poisson vertex superalgebras.
//!
//! The crate builds algebras from generator and λ-bracket tables, constructs their
//! reduced and basic cochain complexes, and computes cohomology slice by slice
//! (degree and conformal weight) with exact rational linear algebra.

pub mod algebra;
pub mod cli;
pub mod complex;
pub mod exact_core;
pub mod zoo;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unbounded slice: {0}")]
    UnboundedSlice(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
