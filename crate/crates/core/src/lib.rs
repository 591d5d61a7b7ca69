//! Exact Gale duality, dual-defect classification and sparse
//! A-discriminants of toric varieties.

pub mod config;
pub mod defect;
pub mod disc;
pub mod error;
pub mod lattice;
pub mod matroid;
pub mod poly;

pub use error::{Error, Result};
