//! Static point sets answering orthogonal range queries.
//!
//! All bounds are inclusive. Coordinates are plain non-negative integers;
//! rank-space inputs are the common case but not required. Every point keeps
//! the `id` it had in the build list so callers can attach payloads.

mod cube;
mod plane;
mod wavelet;
mod weighted;

pub use cube::{Point3, RankGrid3};
pub use plane::RankGrid2;
pub use weighted::{WeightedGrid, WeightedPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: usize,
    pub y: usize,
    pub id: usize,
}

/// Which side of a y-bound a successor or sorted query looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    /// `y <= bound`, visited from the largest y downwards.
    Below,
    /// `y >= bound`, visited from the smallest y upwards.
    Above,
}

pub(crate) fn to_coord(v: usize) -> crate::Result<u32> {
    u32::try_from(v).map_err(|_| crate::Error::Coordinate(v))
}

pub(crate) fn check_order(lo: usize, hi: usize) -> crate::Result<()> {
    if lo > hi {
        Err(crate::Error::InvertedRange { lo, hi })
    } else {
        Ok(())
    }
}
