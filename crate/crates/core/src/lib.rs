//! Exact toolkit for even integral lattices.

// Row operations read one row of a matrix while writing another.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod exact;

pub use error::{Error, Result};
pub mod catalog;
pub mod isometry;
pub mod k3fam;
pub mod lattice;
pub mod shortvec;
