//! Text indexing built on rank-space orthogonal range searching.
//!
//! Each string problem here is answered by translating it into a query on a
//! static point set: document listing becomes bounded range-minimum
//! reporting, one-mismatch search becomes 2D/3D range reporting over a pair
//! of suffix arrays, substring compression becomes 3-sided range successor,
//! and so on. The geometric structures live in [`grid`]; everything else is
//! a reduction onto them.
//!
//! Positions and suffix-array ranks are 1-based in every public API.
#![no_std]
#![forbid(unsafe_code)]
extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod approx;
pub mod bits;
pub mod doc_retrieval;
mod error;
pub mod geo;
pub mod grid;
pub mod lz;
pub mod restricted;
pub mod rmq;
pub mod text;
pub mod weighted_anc;

pub use error::{Error, Result};
pub use text::{DocumentIndex, SaRange, SuffixIndex, SuffixTreeView, Text};
