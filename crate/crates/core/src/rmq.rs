//! Position-returning range minimum queries and bounded reporting.
//!
//! The structure is a sparse table over block minima with a linear scan
//! inside blocks, which keeps memory near `N` words for large arrays while
//! answering in `O(BLOCK)` time. Ties always resolve to the leftmost position.

use alloc::vec::Vec;

use crate::error::{check_range, Error, Result};

const BLOCK: usize = 32;

#[derive(Debug, Clone)]
pub struct Rmq<T> {
    values: Vec<T>,
    // table[k][b]: position of the minimum over blocks b .. b + 2^k
    table: Vec<Vec<u32>>,
}

impl<T: Ord + Copy> Rmq<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        let n = values.len();
        let blocks = n.div_ceil(BLOCK);
        let mut base = Vec::with_capacity(blocks);
        for b in 0..blocks {
            let lo = b * BLOCK;
            let hi = (lo + BLOCK).min(n) - 1;
            base.push(scan(&values, lo, hi) as u32);
        }
        let mut table = alloc::vec![base];
        let mut width = 1;
        while 2 * width <= blocks {
            let prev = table.last().unwrap();
            let row: Vec<u32> = (0..=blocks - 2 * width)
                .map(|b| pick(&values, prev[b] as usize, prev[b + width] as usize) as u32)
                .collect();
            table.push(row);
            width *= 2;
        }
        Ok(Rmq { values, table })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// 1-based position of the leftmost minimum of `A[i..=j]`.
    pub fn rmq(&self, i: usize, j: usize) -> Result<usize> {
        check_range(i, j, self.len())?;
        Ok(self.argmin(i - 1, j - 1) + 1)
    }

    /// 1-based positions `p` in `[i, j]` with `A[p] < bound`, ascending.
    pub fn bounded_report(&self, i: usize, j: usize, bound: T) -> Result<Vec<usize>> {
        Ok(self.bounded_report_traced(i, j, bound)?.0)
    }

    /// Same as [`Rmq::bounded_report`], also returning the number of RMQ
    /// evaluations the recursion performed.
    pub fn bounded_report_traced(&self, i: usize, j: usize, bound: T) -> Result<(Vec<usize>, usize)> {
        check_range(i, j, self.len())?;
        let mut out = Vec::new();
        let calls = self.report_below(i - 1, j - 1, bound, |p| out.push(p + 1));
        Ok((out, calls))
    }

    /// 0-based, inclusive.
    pub(crate) fn argmin(&self, l: usize, r: usize) -> usize {
        debug_assert!(l <= r && r < self.values.len());
        let (bl, br) = (l / BLOCK, r / BLOCK);
        if br <= bl + 1 {
            return scan(&self.values, l, r);
        }
        let left = scan(&self.values, l, (bl + 1) * BLOCK - 1);
        let right = scan(&self.values, br * BLOCK, r);
        let (from, to) = (bl + 1, br - 1);
        let k = usize::BITS as usize - 1 - (to - from + 1).leading_zeros() as usize;
        let row = &self.table[k];
        let mid = pick(
            &self.values,
            row[from] as usize,
            row[to + 1 - (1 << k)] as usize,
        );
        pick(&self.values, pick(&self.values, left, mid), right)
    }

    /// 0-based in-order walk of every position in `[l, r]` holding a value
    /// below `bound`. Returns the number of RMQ evaluations.
    pub(crate) fn report_below(&self, l: usize, r: usize, bound: T, mut emit: impl FnMut(usize)) -> usize {
        enum Step {
            Range(usize, usize),
            Emit(usize),
        }
        let mut calls = 0;
        let mut stack = alloc::vec![Step::Range(l, r)];
        while let Some(step) = stack.pop() {
            match step {
                Step::Emit(p) => emit(p),
                Step::Range(lo, hi) => {
                    calls += 1;
                    let p = self.argmin(lo, hi);
                    if self.values[p] >= bound {
                        continue;
                    }
                    if p < hi {
                        stack.push(Step::Range(p + 1, hi));
                    }
                    stack.push(Step::Emit(p));
                    if p > lo {
                        stack.push(Step::Range(lo, p - 1));
                    }
                }
            }
        }
        calls
    }
}

fn scan<T: Ord + Copy>(values: &[T], l: usize, r: usize) -> usize {
    let mut best = l;
    for p in l + 1..=r {
        if values[p] < values[best] {
            best = p;
        }
    }
    best
}

fn pick<T: Ord + Copy>(values: &[T], a: usize, b: usize) -> usize {
    match values[b].cmp(&values[a]) {
        core::cmp::Ordering::Less => b,
        core::cmp::Ordering::Greater => a,
        core::cmp::Ordering::Equal => a.min(b),
    }
}
