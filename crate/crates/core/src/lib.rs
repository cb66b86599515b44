//! Exact computations in the zero-mode sector of the SU(n)_k WZNW model at
//! `q = exp(-i pi / h)`, `h = n + k`.

pub mod bilinears;
pub mod chiral_fock;
pub mod commands;
pub mod diagrams;
pub mod error;
mod poly;
pub mod qalgebra;
pub mod report;
pub mod scalarfield;
pub mod weights;

pub use error::{Error, Result};
