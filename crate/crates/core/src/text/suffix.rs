use alloc::vec::Vec;
use core::cmp::Ordering;

use super::sort::{is_suffix_array, lcp_array, suffix_array};
use super::{SaRange, Text};
use crate::error::check_range;
use crate::rmq::Rmq;
use crate::{Error, Result};

const ABSENT: u32 = u32::MAX;

/// Suffix array, inverse, adjacent-LCP array and an RMQ over the LCPs.
///
/// Internally the index runs over `u32` symbols so collections can splice in
/// separators; a user byte `b` is the symbol `b + offset`. Suffixes that begin
/// with a symbol below `offset + 1` (separators) are not part of the array.
#[derive(Debug, Clone)]
pub struct SuffixIndex {
    symbols: Vec<u32>,
    offset: u32,
    // sorted positions of separator symbols, 0-based
    ends: Vec<u32>,
    sa: Vec<u32>,
    isa: Vec<u32>,
    lcp: Vec<u32>,
    lcp_rmq: Option<Rmq<u32>>,
}

impl SuffixIndex {
    pub fn new(text: &Text) -> Self {
        let symbols = text.as_bytes().iter().map(|&b| b as u32).collect();
        Self::from_symbols(symbols, 0)
    }

    /// Validates `bytes` as a [`Text`] and indexes it.
    pub fn build(bytes: &[u8]) -> Result<Self> {
        Ok(Self::new(&Text::new(bytes)?))
    }

    /// Rebuilds the index of `text` from its suffix array as returned by
    /// [`raw_suffix_array`](Self::raw_suffix_array). The array is checked.
    pub fn from_suffix_array(text: &Text, sa: Vec<u32>) -> Result<Self> {
        let symbols = text.as_bytes().iter().map(|&b| b as u32).collect();
        Self::from_retained(symbols, 0, sa)
    }

    /// Like [`from_parts`](Self::from_parts) but takes only the suffixes that
    /// the index keeps. Separators must be pairwise distinct symbols; their
    /// suffixes sort first, by symbol.
    pub(crate) fn from_retained(symbols: Vec<u32>, offset: u32, sa: Vec<u32>) -> Result<Self> {
        let mut full: Vec<u32> = (0..symbols.len() as u32).filter(|&i| symbols[i as usize] <= offset).collect();
        full.sort_unstable_by_key(|&i| symbols[i as usize]);
        full.extend(sa);
        if !is_suffix_array(&symbols, &full) {
            return Err(Error::InvalidSuffixArray);
        }
        Ok(Self::from_parts(symbols, offset, full))
    }

    /// Indexes a symbol sequence in which every symbol `<= offset` is a
    /// separator. Separator-initial suffixes are dropped.
    pub(crate) fn from_symbols(symbols: Vec<u32>, offset: u32) -> Self {
        let sa = suffix_array(&symbols);
        Self::from_parts(symbols, offset, sa)
    }

    /// Rebuilds the index from a previously computed suffix array over all
    /// positions of `symbols`.
    pub(crate) fn from_parts(symbols: Vec<u32>, offset: u32, full_sa: Vec<u32>) -> Self {
        let full_lcp = lcp_array(&symbols, &full_sa);
        let ends: Vec<u32> = (0..symbols.len() as u32)
            .filter(|&i| symbols[i as usize] <= offset)
            .collect();
        let mut sa = Vec::with_capacity(full_sa.len());
        let mut lcp = Vec::with_capacity(full_sa.len());
        let mut run = u32::MAX;
        for (r, &p) in full_sa.iter().enumerate() {
            if r > 0 {
                run = run.min(full_lcp[r - 1]);
            }
            if symbols[p as usize] > offset {
                if !sa.is_empty() {
                    lcp.push(run);
                }
                sa.push(p);
                run = u32::MAX;
            }
        }
        let mut isa = alloc::vec![ABSENT; symbols.len()];
        for (r, &p) in sa.iter().enumerate() {
            isa[p as usize] = r as u32;
        }
        let lcp_rmq = if lcp.is_empty() { None } else { Rmq::new(lcp.clone()).ok() };
        SuffixIndex {
            symbols,
            offset,
            ends,
            sa,
            isa,
            lcp,
            lcp_rmq,
        }
    }

    /// Number of indexed suffixes.
    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// Length of the underlying symbol sequence, separators included.
    pub fn text_len(&self) -> usize {
        self.symbols.len()
    }

    pub(crate) fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub(crate) fn offset(&self) -> u32 {
        self.offset
    }

    /// The suffix array as stored: 0-based positions, separators excluded.
    pub fn raw_suffix_array(&self) -> &[u32] {
        &self.sa
    }

    /// Whether this indexes exactly the plain text `bytes`.
    pub(crate) fn indexes(&self, bytes: &[u8]) -> bool {
        self.offset == 0 && self.symbols.len() == bytes.len() && self.symbols.iter().zip(bytes).all(|(&s, &b)| s == b as u32)
    }

    /// The suffix array, as 1-based positions.
    pub fn suffix_array(&self) -> Vec<usize> {
        self.sa.iter().map(|&p| p as usize + 1).collect()
    }

    /// Position of the suffix at 1-based `rank`.
    pub fn sa(&self, rank: usize) -> usize {
        self.sa[rank - 1] as usize + 1
    }

    /// Rank of the suffix at 1-based position `pos`, if it is indexed.
    pub fn isa(&self, pos: usize) -> Option<usize> {
        match self.isa.get(pos.wrapping_sub(1)) {
            Some(&r) if r != ABSENT => Some(r as usize + 1),
            _ => None,
        }
    }

    /// `|LCP|` of the suffixes at ranks `h` and `h + 1` (1-based `h`).
    pub fn lcp(&self, h: usize) -> usize {
        self.lcp[h - 1] as usize
    }

    pub fn lcp_array(&self) -> &[u32] {
        &self.lcp
    }

    /// Symbols from 0-based `pos` up to the next separator or the end.
    pub(crate) fn extent(&self, pos: usize) -> usize {
        let k = self.ends.partition_point(|&e| (e as usize) < pos);
        self.ends.get(k).map_or(self.symbols.len(), |&e| e as usize) - pos
    }

    /// Maps user bytes to symbols; `None` if a byte can never match.
    pub(crate) fn encode(&self, pattern: &[u8]) -> Option<Vec<u32>> {
        pattern
            .iter()
            .map(|&b| (b != 0).then_some(b as u32 + self.offset))
            .collect()
    }

    /// The maximal rank range whose suffixes start with `pattern`.
    pub fn sa_range(&self, pattern: &[u8]) -> SaRange {
        match self.encode(pattern) {
            Some(p) => self.sa_range_symbols(&p),
            None => SaRange::EMPTY,
        }
    }

    pub(crate) fn sa_range_symbols(&self, pattern: &[u32]) -> SaRange {
        let lo = self.bound(pattern, false);
        let hi = self.bound(pattern, true);
        if lo < hi {
            SaRange::new(lo + 1, hi)
        } else {
            SaRange::EMPTY
        }
    }

    /// First 0-based rank whose suffix is not below the pattern (or, with
    /// `upper`, is above it). Comparisons restart from the smaller of the
    /// prefixes already matched at the two ends of the search window.
    fn bound(&self, pattern: &[u32], upper: bool) -> usize {
        let (mut lo, mut hi) = (0, self.sa.len());
        let (mut left_match, mut right_match) = (0, 0);
        while lo < hi {
            let mid = (lo + hi) / 2;
            let (ord, matched) = self.compare(self.sa[mid] as usize, pattern, left_match.min(right_match));
            let right = if upper { ord != Ordering::Greater } else { ord == Ordering::Less };
            if right {
                lo = mid + 1;
                left_match = matched;
            } else {
                hi = mid;
                right_match = matched;
            }
        }
        lo
    }

    /// Compares the suffix at 0-based `pos`, truncated to `|pattern|`, with
    /// the pattern, assuming the first `skip` symbols agree.
    fn compare(&self, pos: usize, pattern: &[u32], skip: usize) -> (Ordering, usize) {
        let mut k = skip;
        while k < pattern.len() {
            let Some(&c) = self.symbols.get(pos + k) else {
                return (Ordering::Less, k);
            };
            match c.cmp(&pattern[k]) {
                Ordering::Equal => k += 1,
                ord => return (ord, k),
            }
        }
        (Ordering::Equal, k)
    }

    /// `|LCP(S_i, S_j)|` for 1-based positions.
    pub fn lcp_len(&self, i: usize, j: usize) -> Result<usize> {
        let n = self.symbols.len();
        let (ri, rj) = match (self.isa(i), self.isa(j)) {
            (Some(a), Some(b)) => (a - 1, b - 1),
            _ => {
                let bad = if self.isa(i).is_none() { i } else { j };
                return Err(Error::OutOfRange { index: bad, len: n });
            }
        };
        Ok(self.lcp_ranks(ri, rj).unwrap_or_else(|| self.extent(i - 1)))
    }

    /// LCP of the suffixes at two distinct 0-based ranks; `None` if equal.
    pub(crate) fn lcp_ranks(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return None;
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let rmq = self.lcp_rmq.as_ref().expect("two ranks imply an LCP array");
        Some(self.lcp[rmq.argmin(a, b - 1)] as usize)
    }

    /// For 0-based ranks `a < b`, the `h` in `[a, b)` minimising the LCP of
    /// ranks `h` and `h + 1`.
    pub(crate) fn min_lcp_at(&self, a: usize, b: usize) -> usize {
        let rmq = self.lcp_rmq.as_ref().expect("two ranks imply an LCP array");
        rmq.argmin(a, b - 1)
    }

    /// Maximal 0-based rank interval around `rank` whose suffixes all share
    /// at least `len` symbols with it.
    pub(crate) fn lcp_interval(&self, rank: usize, len: usize) -> (usize, usize) {
        let Some(rmq) = self.lcp_rmq.as_ref() else {
            return (rank, rank);
        };
        let holds = |a: usize, b: usize| self.lcp[rmq.argmin(a, b)] as usize >= len;
        // gallop outwards to a failing rank, then bisect; the interval is
        // usually narrow
        let (mut left, mut step, mut fail) = (rank, 1, None);
        while left > 0 {
            let cand = left.saturating_sub(step);
            if !holds(cand, rank - 1) {
                fail = Some(cand);
                break;
            }
            left = cand;
            step *= 2;
        }
        if let Some(f) = fail {
            let (mut lo, mut hi) = (f + 1, left);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if holds(mid, rank - 1) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            left = lo;
        }
        let last = self.sa.len() - 1;
        let (mut right, mut step, mut fail) = (rank, 1, None);
        while right < last {
            let cand = (right + step).min(last);
            if !holds(rank, cand - 1) {
                fail = Some(cand);
                break;
            }
            right = cand;
            step *= 2;
        }
        if let Some(f) = fail {
            let (mut lo, mut hi) = (right, f - 1);
            while lo < hi {
                let mid = (lo + hi).div_ceil(2);
                if holds(rank, mid - 1) {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            right = lo;
        }
        (left, right)
    }

    /// Start positions of `pattern`, ascending.
    pub fn occurrences(&self, pattern: &[u8]) -> Vec<usize> {
        let range = self.sa_range(pattern);
        if range.is_empty() {
            return Vec::new();
        }
        let mut out: Vec<usize> = (range.lo..=range.hi).map(|r| self.sa(r)).collect();
        out.sort_unstable();
        out
    }

    /// Checks `1 <= i <= j <= text_len`.
    pub(crate) fn check_span(&self, i: usize, j: usize) -> Result<()> {
        check_range(i, j, self.symbols.len())
    }
}
