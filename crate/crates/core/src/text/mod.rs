//! Suffix arrays and what is derived from them.

mod docs;
mod sort;
mod suffix;
mod tree;

use alloc::vec::Vec;

pub use docs::DocumentIndex;
pub use suffix::SuffixIndex;
pub use tree::{SuffixTreeView, TreeNode};

use crate::{Error, Result};

/// A non-empty byte string that never contains the reserved symbol 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Text(Vec<u8>);

impl Text {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Result<Self> {
        let bytes = bytes.into();
        if bytes.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(at) = bytes.iter().position(|&b| b == 0) {
            return Err(Error::ReservedSymbol(at));
        }
        Ok(Text(bytes))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }
}

impl AsRef<[u8]> for Text {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

/// A contiguous, inclusive range of suffix-array ranks (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SaRange {
    pub lo: usize,
    pub hi: usize,
}

impl SaRange {
    pub const EMPTY: SaRange = SaRange { lo: 1, hi: 0 };

    pub fn new(lo: usize, hi: usize) -> Self {
        SaRange { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.hi - self.lo + 1
        }
    }

    pub fn contains(&self, rank: usize) -> bool {
        self.lo <= rank && rank <= self.hi
    }
}
