//! 2D range reporting answered by pattern matching on a constructed text.
//!
//! Point `(x, y)` becomes `b^R(x) # b(y)`, with points joined by `$`, where
//! `b(v)` is `v - 1` in a fixed number of bits. A value range splits into at
//! most `2 * width` trie nodes; a pair of nodes with labels `c` and `d` turns
//! into the pattern `c^R # d`, whose occurrences are exactly the points with
//! `x` under `c` and `y` under `d`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::check_range;
use crate::grid::Point;
use crate::text::{SuffixIndex, Text};
use crate::{Error, Result};

pub const SYM_DOLLAR: u8 = 1;
pub const SYM_HASH: u8 = 2;
pub const SYM_ZERO: u8 = 3;
pub const SYM_ONE: u8 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrieNode {
    /// Bit label from the root, as an integer of `bits` bits.
    pub prefix: u64,
    pub bits: usize,
    /// Half-open range into the sorted values.
    pub lo: usize,
    pub hi: usize,
    pub children: Vec<usize>,
}

/// Path-compressed binary trie over fixed-width codes, node 0 the root.
#[derive(Debug, Clone)]
pub struct BitTrie {
    width: usize,
    universe: usize,
    // (code, point id), sorted
    codes: Vec<(u64, usize)>,
    nodes: Vec<TrieNode>,
}

impl BitTrie {
    /// `values` are in `1..=universe`; the code of `v` is `v - 1`.
    fn new(values: &[usize], universe: usize, width: usize) -> Self {
        let mut codes: Vec<(u64, usize)> = values.iter().enumerate().map(|(id, &v)| ((v - 1) as u64, id)).collect();
        codes.sort_unstable();
        let mut trie = BitTrie { width, universe, codes, nodes: Vec::new() };
        if !trie.codes.is_empty() {
            trie.grow(0, trie.codes.len());
        }
        trie
    }

    fn grow(&mut self, lo: usize, hi: usize) -> usize {
        let w = self.width;
        let (first, last) = (self.codes[lo].0, self.codes[hi - 1].0);
        let bits = if first == last {
            w
        } else {
            w - 1 - (63 - (first ^ last).leading_zeros() as usize)
        };
        let id = self.nodes.len();
        self.nodes.push(TrieNode {
            prefix: if bits == 0 { 0 } else { first >> (w - bits) },
            bits,
            lo,
            hi,
            children: Vec::new(),
        });
        if bits < w {
            let shift = w - 1 - bits;
            let mid = lo + self.codes[lo..hi].partition_point(|c| (c.0 >> shift) & 1 == 0);
            let a = self.grow(lo, mid);
            let b = self.grow(mid, hi);
            self.nodes[id].children = alloc::vec![a, b];
        }
        id
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn nodes(&self) -> &[TrieNode] {
        &self.nodes
    }

    pub fn node(&self, v: usize) -> &TrieNode {
        &self.nodes[v]
    }

    /// Values in trie order.
    pub fn values(&self) -> Vec<usize> {
        self.codes.iter().map(|c| c.0 as usize + 1).collect()
    }

    /// Point ids in trie order.
    pub fn ids(&self) -> Vec<usize> {
        self.codes.iter().map(|c| c.1).collect()
    }

    /// Disjoint nodes whose ranges together hold exactly the values in
    /// `[q, r]`: the highest nodes with no value outside it.
    pub fn decompose(&self, q: usize, r: usize) -> Result<Vec<usize>> {
        check_range(q, r, self.universe)?;
        let (a, b) = ((q - 1) as u64, (r - 1) as u64);
        let mut out = Vec::new();
        let mut stack = Vec::new();
        if !self.nodes.is_empty() {
            stack.push(0);
        }
        while let Some(v) = stack.pop() {
            let n = &self.nodes[v];
            let (min, max) = (self.codes[n.lo].0, self.codes[n.hi - 1].0);
            if max < a || min > b {
                continue;
            }
            if a <= min && max <= b {
                out.push(v);
            } else {
                stack.extend(n.children.iter().rev());
            }
        }
        Ok(out)
    }
}

pub fn node_range_decompose(trie: &BitTrie, q: usize, r: usize) -> Result<Vec<usize>> {
    trie.decompose(q, r)
}

#[derive(Debug, Clone)]
pub struct GeoTextIndex {
    width: usize,
    points: Vec<(usize, usize)>,
    tidx: SuffixIndex,
    xtrie: BitTrie,
    ytrie: BitTrie,
}

fn push_bits(out: &mut Vec<u8>, code: u64, bits: usize, reversed: bool) {
    let start = out.len();
    for k in (0..bits).rev() {
        out.push(if (code >> k) & 1 == 1 { SYM_ONE } else { SYM_ZERO });
    }
    if reversed {
        out[start..].reverse();
    }
}

impl GeoTextIndex {
    /// Points must lie in `[1, n]^2` with `n` the number of points.
    pub fn new(points: &[(usize, usize)]) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if let Some(&(x, y)) = points.iter().find(|&&(x, y)| !(1..=n).contains(&x) || !(1..=n).contains(&y)) {
            return Err(Error::Coordinate(if (1..=n).contains(&x) { y } else { x }));
        }
        let width = (usize::BITS - (n - 1).leading_zeros()).max(1) as usize;
        let mut text = Vec::with_capacity(n * (2 * width + 2));
        for (i, &(x, y)) in points.iter().enumerate() {
            if i > 0 {
                text.push(SYM_DOLLAR);
            }
            push_bits(&mut text, (x - 1) as u64, width, true);
            text.push(SYM_HASH);
            push_bits(&mut text, (y - 1) as u64, width, false);
        }
        let tidx = SuffixIndex::new(&Text::new(text)?);
        let xs: Vec<usize> = points.iter().map(|p| p.0).collect();
        let ys: Vec<usize> = points.iter().map(|p| p.1).collect();
        Ok(GeoTextIndex {
            width,
            points: points.to_vec(),
            xtrie: BitTrie::new(&xs, n, width),
            ytrie: BitTrie::new(&ys, n, width),
            tidx,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn points(&self) -> &[(usize, usize)] {
        &self.points
    }

    pub fn suffix_index(&self) -> &SuffixIndex {
        &self.tidx
    }

    pub fn xtrie(&self) -> &BitTrie {
        &self.xtrie
    }

    pub fn ytrie(&self) -> &BitTrie {
        &self.ytrie
    }

    /// The text as `$`, `#`, `0` and `1`.
    pub fn render(&self) -> String {
        (1..=self.tidx.text_len())
            .map(|i| match self.tidx.symbols()[i - 1] as u8 {
                SYM_DOLLAR => '$',
                SYM_HASH => '#',
                SYM_ZERO => '0',
                _ => '1',
            })
            .collect()
    }

    /// Points inside the rectangle, ordered by `(x, y, id)`.
    pub fn report(&self, x1: usize, x2: usize, y1: usize, y2: usize) -> Result<Vec<Point>> {
        Ok(self.report_counted(x1, x2, y1, y2)?.0)
    }

    /// Like [`report`](Self::report), also returning how many pattern
    /// queries were issued.
    pub fn report_counted(&self, x1: usize, x2: usize, y1: usize, y2: usize) -> Result<(Vec<Point>, usize)> {
        let cs = self.xtrie.decompose(x1, x2)?;
        let ds = self.ytrie.decompose(y1, y2)?;
        let stride = 2 * self.width + 2;
        let mut out = Vec::new();
        let mut queries = 0;
        for &c in &cs {
            let cn = self.xtrie.node(c);
            for &d in &ds {
                let dn = self.ytrie.node(d);
                let mut pattern = Vec::with_capacity(cn.bits + dn.bits + 1);
                push_bits(&mut pattern, cn.prefix, cn.bits, true);
                pattern.push(SYM_HASH);
                push_bits(&mut pattern, dn.prefix, dn.bits, false);
                queries += 1;
                for p in self.tidx.occurrences(&pattern) {
                    let hash = p + cn.bits;
                    let id = (hash - self.width - 1) / stride;
                    let (x, y) = self.points[id];
                    out.push(Point { x, y, id });
                }
            }
        }
        out.sort_unstable_by_key(|p| (p.x, p.y, p.id));
        Ok((out, queries))
    }
}

pub fn build_geo_text(points: &[(usize, usize)]) -> Result<GeoTextIndex> {
    GeoTextIndex::new(points)
}

pub fn geo_range_report(g: &GeoTextIndex, x1: usize, x2: usize, y1: usize, y2: usize) -> Result<Vec<Point>> {
    g.report(x1, x2, y1, y2)
}
