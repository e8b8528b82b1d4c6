//! Indexing with one mismatch, and gapped patterns.
//!
//! Both structures pair a suffix array of `T` with one of its reverse. A text
//! position `i` becomes the point (rank of `T[i..]`, rank of the reversed
//! prefix that ends just before the wildcard region). Ranks count the empty
//! suffix as the smallest, so an empty pattern side maps to the full axis.
//!
//! With a mismatch pivot `l`, the right side `q_{l+1..m}` selects an x-range,
//! the reversed left side `q_{l-1}..q_1` a y-range, and every point in the
//! rectangle is an alignment whose only possible mismatch is at `q_l`.

use alloc::vec::Vec;

use crate::grid::{RankGrid2, RankGrid3};
use crate::text::{SuffixIndex, Text};
use crate::{Error, Result};

/// Rank of the suffix at 1-based `pos` in a universe that also contains the
/// empty suffix `n + 1` as rank 1.
fn eps_rank(idx: &SuffixIndex, pos: usize) -> usize {
    if pos == idx.text_len() + 1 {
        1
    } else {
        idx.isa(pos).expect("position inside the text") + 1
    }
}

/// Inclusive rank range, in the same universe, of the suffixes that start
/// with `pattern`.
fn eps_range(idx: &SuffixIndex, pattern: &[u8]) -> Option<(usize, usize)> {
    if pattern.is_empty() {
        return Some((1, idx.text_len() + 1));
    }
    let r = idx.sa_range(pattern);
    (!r.is_empty()).then(|| (r.lo + 1, r.hi + 1))
}

fn reversed(s: &[u8]) -> Vec<u8> {
    s.iter().rev().copied().collect()
}

#[derive(Debug, Clone)]
pub struct OneErrorIndex {
    text: Text,
    fwd: SuffixIndex,
    rev: SuffixIndex,
    alphabet: Vec<u8>,
    plane: RankGrid2,
    cube: RankGrid3,
}

impl OneErrorIndex {
    pub fn new(text: Text) -> Self {
        let fwd = SuffixIndex::new(&text);
        let rev = SuffixIndex::new(&Text::new(reversed(text.as_bytes())).expect("reversal keeps validity"));
        Self::from_parts(text, fwd, rev)
    }

    /// Assembles the index from suffix indexes of `text` and of its reverse.
    pub fn from_indexes(text: Text, fwd: SuffixIndex, rev: SuffixIndex) -> Result<Self> {
        if !fwd.indexes(text.as_bytes()) || !rev.indexes(&reversed(text.as_bytes())) {
            return Err(Error::InvalidSuffixArray);
        }
        Ok(Self::from_parts(text, fwd, rev))
    }

    pub fn build(bytes: &[u8]) -> Result<Self> {
        Ok(Self::new(Text::new(bytes)?))
    }

    pub(crate) fn from_parts(text: Text, fwd: SuffixIndex, rev: SuffixIndex) -> Self {
        let n = text.len();
        let t = text.as_bytes();
        let mut alphabet = t.to_vec();
        alphabet.sort_unstable();
        alphabet.dedup();
        let mut xy = Vec::with_capacity(n);
        let mut xyz = Vec::with_capacity(n);
        for i in 2..=n + 1 {
            let x = eps_rank(&fwd, i);
            let y = eps_rank(&rev, n + 3 - i);
            let z = alphabet.binary_search(&t[i - 2]).unwrap() + 1;
            xy.push((x, y));
            xyz.push((x, y, z));
        }
        let plane = RankGrid2::new_permutation(&xy).expect("ranks are distinct");
        let cube = RankGrid3::new(&xyz).expect("ranks fit the grid");
        OneErrorIndex { text, fwd, rev, alphabet, plane, cube }
    }

    pub fn text(&self) -> &Text {
        &self.text
    }

    pub fn forward(&self) -> &SuffixIndex {
        &self.fwd
    }

    pub fn reverse(&self) -> &SuffixIndex {
        &self.rev
    }

    pub fn plane(&self) -> &RankGrid2 {
        &self.plane
    }

    pub fn cube(&self) -> &RankGrid3 {
        &self.cube
    }

    /// The rectangle of pivot `l` (1-based), if both sides occur.
    fn rectangle(&self, q: &[u8], l: usize) -> Option<((usize, usize), (usize, usize))> {
        let right = eps_range(&self.fwd, &q[l..])?;
        let left = eps_range(&self.rev, &reversed(&q[..l - 1]))?;
        Some((right, left))
    }

    /// Occurrence starts whose single mismatch sits at pivot `l`, found by a
    /// 2D report over the rectangle. Alignments whose text symbol at the
    /// pivot equals `q_l` are exact matches and are skipped.
    pub fn pivot_hits(&self, q: &[u8], l: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let Some(((x1, x2), (y1, y2))) = self.rectangle(q, l) else {
            return out;
        };
        let t = self.text.as_bytes();
        for p in self.plane.report(x1, x2, y1, y2).expect("ranges are ordered") {
            let i = p.id + 2;
            if t[i - 2] != q[l - 1] {
                out.push(i - l);
            }
        }
        out.sort_unstable();
        out
    }

    /// Positions where `q` matches with exactly one mismatch, ascending.
    pub fn query_one_mismatch(&self, q: &[u8]) -> Vec<usize> {
        let mut out: Vec<usize> = (1..=q.len()).flat_map(|l| self.pivot_hits(q, l)).collect();
        out.sort_unstable();
        out
    }

    /// Positions where `q` matches with at most one mismatch, ascending.
    ///
    /// Exact occurrences come from the forward suffix array; mismatching ones
    /// from two 3D queries per pivot that exclude the pivot's own symbol.
    pub fn query_at_most_one(&self, q: &[u8]) -> Vec<usize> {
        if q.is_empty() {
            return Vec::new();
        }
        let mut out = self.fwd.occurrences(q);
        let sigma = self.alphabet.len();
        for l in 1..=q.len() {
            let Some(((x1, x2), (y1, y2))) = self.rectangle(q, l) else {
                continue;
            };
            let zs: Vec<(usize, usize)> = match self.alphabet.binary_search(&q[l - 1]) {
                Ok(a) => alloc::vec![(1, a), (a + 2, sigma)],
                Err(_) => alloc::vec![(1, sigma)],
            };
            for (z1, z2) in zs.into_iter().filter(|(a, b)| a <= b) {
                let hits = self.cube.report(x1, x2, y1, y2, z1, z2).expect("ranges are ordered");
                out.extend(hits.iter().map(|p| p.id + 2 - l));
            }
        }
        out.sort_unstable();
        out
    }
}

/// Index for patterns `q1 · (any d symbols) · q2` with `d` fixed at build.
#[derive(Debug, Clone)]
pub struct GapIndex {
    gap: usize,
    fwd: SuffixIndex,
    rev: SuffixIndex,
    grid: RankGrid2,
}

impl GapIndex {
    pub fn new(text: &Text, gap: usize) -> Self {
        let fwd = SuffixIndex::new(text);
        let rev = SuffixIndex::new(&Text::new(reversed(text.as_bytes())).expect("reversal keeps validity"));
        Self::from_parts(fwd, rev, gap)
    }

    /// Assembles the index from suffix indexes of a text and of its reverse.
    pub fn from_indexes(fwd: SuffixIndex, rev: SuffixIndex, gap: usize) -> Result<Self> {
        let t: Vec<u8> = fwd.symbols().iter().map(|&s| s as u8).collect();
        if !fwd.indexes(&t) || !rev.indexes(&reversed(&t)) {
            return Err(Error::InvalidSuffixArray);
        }
        Ok(Self::from_parts(fwd, rev, gap))
    }

    pub fn build(bytes: &[u8], gap: usize) -> Result<Self> {
        Ok(Self::new(&Text::new(bytes)?, gap))
    }

    pub(crate) fn from_parts(fwd: SuffixIndex, rev: SuffixIndex, gap: usize) -> Self {
        let n = fwd.text_len();
        let points: Vec<(usize, usize)> = (gap + 2..=n + 1)
            .map(|i| (eps_rank(&fwd, i), eps_rank(&rev, n + gap + 2 - i)))
            .collect();
        let grid = RankGrid2::new_permutation(&points).expect("ranks are distinct");
        GapIndex { gap, fwd, rev, grid }
    }

    pub fn gap(&self) -> usize {
        self.gap
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Start positions of `q1`, `gap` arbitrary symbols, then `q2`. Both
    /// pieces must be non-empty.
    pub fn query(&self, q1: &[u8], q2: &[u8]) -> Result<Vec<usize>> {
        if q1.is_empty() || q2.is_empty() {
            return Err(Error::Empty);
        }
        let (Some((x1, x2)), Some((y1, y2))) = (eps_range(&self.fwd, q2), eps_range(&self.rev, &reversed(q1))) else {
            return Ok(Vec::new());
        };
        let mut out: Vec<usize> = self
            .grid
            .report(x1, x2, y1, y2)?
            .iter()
            .map(|p| p.id + 2 - q1.len())
            .collect();
        out.sort_unstable();
        Ok(out)
    }
}
