//! Position-restricted search over the grid of (suffix rank, position).
//!
//! A pattern's SA-range fixes the x-interval; any constraint on where an
//! occurrence starts is then a y-interval, a y-successor or a y-selection.

use alloc::vec::Vec;

use crate::error::check_range;
use crate::grid::{Dir, RankGrid2};
use crate::text::{SuffixIndex, Text};
use crate::Result;

#[derive(Debug, Clone)]
pub struct RestrictedIndex {
    sidx: SuffixIndex,
    grid: RankGrid2,
}

impl RestrictedIndex {
    pub fn new(text: &Text) -> Self {
        Self::from_index(SuffixIndex::new(text))
    }

    pub fn build(bytes: &[u8]) -> Result<Self> {
        Ok(Self::new(&Text::new(bytes)?))
    }

    pub fn from_index(sidx: SuffixIndex) -> Self {
        let pts: Vec<(usize, usize)> = (1..=sidx.len()).map(|r| (r, sidx.sa(r))).collect();
        let grid = RankGrid2::new_permutation(&pts).expect("sa is a permutation");
        RestrictedIndex { sidx, grid }
    }

    pub fn suffix_index(&self) -> &SuffixIndex {
        &self.sidx
    }

    pub fn grid(&self) -> &RankGrid2 {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.sidx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sidx.is_empty()
    }

    fn x_range(&self, q: &[u8]) -> Option<(usize, usize)> {
        let r = self.sidx.sa_range(q);
        (!r.is_empty()).then_some((r.lo, r.hi))
    }

    /// Start-position window of occurrences lying inside `[i, j]`.
    fn window(&self, q: &[u8], i: usize, j: usize) -> Result<Option<(usize, usize)>> {
        check_range(i, j, self.len())?;
        Ok((j + 1).checked_sub(q.len()).filter(|&hi| hi >= i).map(|hi| (i, hi)))
    }

    /// Occurrences of `q` lying entirely inside `[i, j]`, ascending.
    pub fn pri_report(&self, q: &[u8], i: usize, j: usize) -> Result<Vec<usize>> {
        let (Some((y1, y2)), Some((x1, x2))) = (self.window(q, i, j)?, self.x_range(q)) else {
            return Ok(Vec::new());
        };
        let mut out: Vec<usize> = self.grid.report(x1, x2, y1, y2)?.iter().map(|p| p.y).collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn pri_count(&self, q: &[u8], i: usize, j: usize) -> Result<usize> {
        let (Some((y1, y2)), Some((x1, x2))) = (self.window(q, i, j)?, self.x_range(q)) else {
            return Ok(0);
        };
        self.grid.count(x1, x2, y1, y2)
    }

    /// Number of occurrences starting at or before `k`.
    pub fn substring_rank(&self, q: &[u8], k: usize) -> usize {
        match self.x_range(q) {
            Some((x1, x2)) if k >= 1 => self.grid.count(x1, x2, 1, k).unwrap(),
            _ => 0,
        }
    }

    /// Start of the `k`-th occurrence (1-based) from the left.
    pub fn substring_select(&self, q: &[u8], k: usize) -> Option<usize> {
        let (x1, x2) = self.x_range(q)?;
        self.grid.kth_smallest_y(x1, x2, k).unwrap().map(|p| p.y)
    }

    /// Leftmost occurrence starting at or after `i`.
    pub fn successive(&self, q: &[u8], i: usize) -> Option<usize> {
        let (x1, x2) = self.x_range(q)?;
        self.grid.successor_y(x1, x2, i, Dir::Above).unwrap().map(|p| p.y)
    }

    /// Greedy leftmost set of pairwise non-overlapping occurrences.
    pub fn non_overlapping(&self, q: &[u8]) -> Vec<usize> {
        let mut out = Vec::new();
        if q.is_empty() {
            return out;
        }
        let mut from = 1;
        while let Some(p) = self.successive(q, from) {
            out.push(p);
            from = p + q.len();
        }
        out
    }
}
