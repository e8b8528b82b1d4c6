//! Wavelet matrix over small integer codes.

use alloc::vec::Vec;

use crate::bits::RankBits;

/// Positions are "original" in the input order and "bottom" in the order of
/// the last level, where equal codes are contiguous and keep their original
/// order.
#[derive(Debug, Clone)]
pub(crate) struct WaveletMatrix {
    levels: Vec<RankBits>,
    zeros: Vec<usize>,
    // original position of each bottom slot
    origin: Vec<u32>,
}

impl WaveletMatrix {
    /// `codes` must all be below `sigma`.
    pub fn new(codes: &[u32], sigma: u32) -> Self {
        let depth = (u32::BITS - sigma.saturating_sub(1).leading_zeros()).max(1) as usize;
        let mut cur: Vec<(u32, u32)> = codes.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        let mut levels = Vec::with_capacity(depth);
        let mut zeros = Vec::with_capacity(depth);
        for lvl in 0..depth {
            let shift = depth - 1 - lvl;
            let bits = RankBits::from_bits(cur.iter().map(|&(c, _)| c >> shift & 1 == 1));
            zeros.push(bits.len() - bits.count_ones());
            let (mut lo, hi): (Vec<_>, Vec<_>) = cur.iter().partition(|&&(c, _)| c >> shift & 1 == 0);
            lo.extend(hi);
            cur = lo;
            levels.push(bits);
        }
        WaveletMatrix {
            levels,
            zeros,
            origin: cur.into_iter().map(|(_, i)| i).collect(),
        }
    }

    fn depth(&self) -> usize {
        self.levels.len()
    }

    fn bit(&self, code: u32, lvl: usize) -> bool {
        code >> (self.depth() - 1 - lvl) & 1 == 1
    }

    fn step(&self, lvl: usize, i: usize, one: bool) -> usize {
        let bv = &self.levels[lvl];
        if one {
            self.zeros[lvl] + bv.rank1(i)
        } else {
            bv.rank0(i)
        }
    }

    /// Original position of a bottom slot.
    pub fn origin(&self, bottom: usize) -> usize {
        self.origin[bottom] as usize
    }

    /// Number of codes `< c` in original positions `[l, r)`.
    pub fn count_less(&self, mut l: usize, mut r: usize, c: u32) -> usize {
        if (c as u64) >= 1u64 << self.depth() {
            return r - l;
        }
        let mut acc = 0;
        for lvl in 0..self.depth() {
            let one = self.bit(c, lvl);
            if one {
                acc += self.levels[lvl].rank0(r) - self.levels[lvl].rank0(l);
            }
            l = self.step(lvl, l, one);
            r = self.step(lvl, r, one);
        }
        acc
    }

    /// The `k`-th smallest code (0-based) in `[l, r)` and its bottom slot,
    /// equal codes counted in original order.
    pub fn kth_smallest(&self, mut l: usize, mut r: usize, mut k: usize) -> (u32, usize) {
        debug_assert!(k < r - l);
        let mut code = 0u32;
        for lvl in 0..self.depth() {
            let bv = &self.levels[lvl];
            let z = bv.rank0(r) - bv.rank0(l);
            let one = k >= z;
            if one {
                k -= z;
                code |= 1 << (self.depth() - 1 - lvl);
            }
            l = self.step(lvl, l, one);
            r = self.step(lvl, r, one);
        }
        (code, l + k)
    }

    /// Smallest code `>= c` in `[l, r)`, with the bottom slots of its
    /// occurrences there.
    pub fn next_at_least(&self, l: usize, r: usize, c: u32) -> Option<(u32, usize, usize)> {
        self.seek(0, l, r, 0, c, true)
    }

    /// Largest code `< c` in `[l, r)`, with the bottom slots of its
    /// occurrences there.
    pub fn prev_below(&self, l: usize, r: usize, c: u32) -> Option<(u32, usize, usize)> {
        if c == 0 {
            return None;
        }
        self.seek(0, l, r, 0, c - 1, false)
    }

    // nearest code to `c` on one side, `c` included
    fn seek(&self, lvl: usize, l: usize, r: usize, prefix: u32, c: u32, up: bool) -> Option<(u32, usize, usize)> {
        if l >= r {
            return None;
        }
        let rem = self.depth() - lvl;
        let first = (prefix as u64) << rem;
        let last = first + (1u64 << rem) - 1;
        if (up && last < c as u64) || (!up && first > c as u64) {
            return None;
        }
        if lvl == self.depth() {
            return Some((prefix, l, r));
        }
        let zero = || self.seek(lvl + 1, self.step(lvl, l, false), self.step(lvl, r, false), prefix << 1, c, up);
        let one = || self.seek(lvl + 1, self.step(lvl, l, true), self.step(lvl, r, true), prefix << 1 | 1, c, up);
        if up {
            zero().or_else(one)
        } else {
            one().or_else(zero)
        }
    }

    /// Calls `emit(code, bottom_l, bottom_r)` for each distinct code in
    /// `[lo, hi)` that occurs in positions `[l, r)`, ascending by code.
    pub fn distinct(&self, l: usize, r: usize, lo: u32, hi: u32, emit: &mut impl FnMut(u32, usize, usize)) {
        if lo < hi {
            self.distinct_rec(0, l, r, 0, lo, hi, emit);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn distinct_rec(&self, lvl: usize, l: usize, r: usize, prefix: u32, lo: u32, hi: u32, emit: &mut impl FnMut(u32, usize, usize)) {
        if l >= r {
            return;
        }
        let rem = self.depth() - lvl;
        let first = (prefix as u64) << rem;
        let last = first + (1u64 << rem) - 1;
        if last < lo as u64 || first >= hi as u64 {
            return;
        }
        if lvl == self.depth() {
            emit(prefix, l, r);
            return;
        }
        self.distinct_rec(lvl + 1, self.step(lvl, l, false), self.step(lvl, r, false), prefix << 1, lo, hi, emit);
        self.distinct_rec(lvl + 1, self.step(lvl, l, true), self.step(lvl, r, true), prefix << 1 | 1, lo, hi, emit);
    }
}
