//! LZ77 parsing, conditional parsing, substring compression queries and
//! primary-occurrence search over a parse.
//!
//! Phrases are `(F, L, C)`: copy `L` symbols from `F` positions back, then
//! emit the literal `C`. The copy may overlap the phrase itself. The last
//! phrase has no literal when its copy reaches the end of the string. Among
//! equally long sources the nearest one is chosen.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::check_range;
use crate::grid::{Dir, RankGrid2};
use crate::text::{SuffixIndex, Text};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phrase {
    /// Back-distance to the copy source; 0 when nothing is copied.
    pub f: usize,
    /// Copy length.
    pub l: usize,
    /// Literal after the copy, absent only at the end of the string.
    pub c: Option<u8>,
}

impl Phrase {
    pub fn literal(c: u8) -> Self {
        Phrase { f: 0, l: 0, c: Some(c) }
    }

    /// Symbols this phrase produces.
    pub fn span(&self) -> usize {
        self.l + usize::from(self.c.is_some())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LzParse {
    phrases: Vec<Phrase>,
    source_len: usize,
}

impl LzParse {
    /// Wraps a phrase list; the source length is the total span.
    pub fn new(phrases: Vec<Phrase>) -> Self {
        let source_len = phrases.iter().map(Phrase::span).sum();
        LzParse { phrases, source_len }
    }

    pub fn phrases(&self) -> &[Phrase] {
        &self.phrases
    }

    pub fn len(&self) -> usize {
        self.phrases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    pub fn source_len(&self) -> usize {
        self.source_len
    }

    /// 1-based start of every phrase.
    pub fn starts(&self) -> Vec<usize> {
        let mut u = 1;
        self.phrases
            .iter()
            .map(|p| {
                let s = u;
                u += p.span();
                s
            })
            .collect()
    }

    pub fn into_phrases(self) -> Vec<Phrase> {
        self.phrases
    }
}

/// Expands `parse` after the already decoded `context`, returning only the
/// new symbols.
fn expand(context: &[u8], parse: &LzParse) -> Result<Vec<u8>> {
    let mut out = context.to_vec();
    let last = parse.phrases.len().saturating_sub(1);
    for (i, p) in parse.phrases.iter().enumerate() {
        if p.f == 0 && p.l > 0 {
            return Err(Error::MalformedParse("copy without a source"));
        }
        if p.f > out.len() {
            return Err(Error::MalformedParse("source before the start"));
        }
        if p.c.is_none() && i != last {
            return Err(Error::MalformedParse("missing literal before the end"));
        }
        let from = out.len() - p.f;
        for k in 0..p.l {
            let b = out[from + k];
            out.push(b);
        }
        if let Some(c) = p.c {
            out.push(c);
        }
    }
    if out.len() - context.len() != parse.source_len {
        return Err(Error::MalformedParse("length does not match the phrases"));
    }
    Ok(out.split_off(context.len()))
}

pub fn lz_decompress(parse: &LzParse) -> Result<Text> {
    Text::new(expand(&[], parse)?)
}

/// Decompresses a conditional parse against the context it was made with.
pub fn lz_decompress_conditional(parse: &LzParse, context: &[u8]) -> Result<Text> {
    // the separator sits between the context and the parsed string
    let mut ctx = context.to_vec();
    ctx.push(0);
    Text::new(expand(&ctx, parse)?)
}

pub fn lz_parse(s: &Text) -> LzParse {
    let idx = ScqIndex::new(s);
    idx.parse_span(1, s.len(), 1)
}

/// Parse of `s` given the context `t`: the part covering `s` of the parse of
/// `t`, a separator below every symbol, then `s`.
pub fn lz_conditional(s: &Text, t: &[u8]) -> LzParse {
    let mut symbols: Vec<u32> = Vec::with_capacity(t.len() + 1 + s.len());
    symbols.extend(t.iter().map(|&b| b as u32 + 1));
    symbols.push(1);
    symbols.extend(s.as_bytes().iter().map(|&b| b as u32 + 1));
    let idx = ScqIndex::from_index(SuffixIndex::from_symbols(symbols, 1));
    idx.parse_span(t.len() + 2, t.len() + 1 + s.len(), 1)
}

/// Suffix index plus the grids that answer interval-restricted LCP queries.
#[derive(Debug, Clone)]
pub struct ScqIndex {
    sidx: SuffixIndex,
    // (position, rank)
    pos_grid: RankGrid2,
    // (rank, position)
    rank_grid: RankGrid2,
}

impl ScqIndex {
    pub fn new(text: &Text) -> Self {
        Self::from_index(SuffixIndex::new(text))
    }

    pub fn build(bytes: &[u8]) -> Result<Self> {
        Ok(Self::new(&Text::new(bytes)?))
    }

    pub fn from_index(sidx: SuffixIndex) -> Self {
        let pts: Vec<(usize, usize)> = (1..=sidx.text_len())
            .filter_map(|i| sidx.isa(i).map(|r| (i, r)))
            .collect();
        let pos_grid = RankGrid2::new_permutation(&pts).expect("isa is injective");
        let flipped: Vec<(usize, usize)> = pts.iter().map(|&(i, r)| (r, i)).collect();
        let rank_grid = RankGrid2::new_permutation(&flipped).expect("isa is injective");
        ScqIndex { sidx, pos_grid, rank_grid }
    }

    pub fn suffix_index(&self) -> &SuffixIndex {
        &self.sidx
    }

    pub fn pos_grid(&self) -> &RankGrid2 {
        &self.pos_grid
    }

    pub fn len(&self) -> usize {
        self.sidx.text_len()
    }

    pub fn is_empty(&self) -> bool {
        self.sidx.text_len() == 0
    }

    /// The position `t` in `[l, r]` whose suffix shares the longest prefix
    /// with the suffix at `k`, and that length. The best suffix is either the
    /// nearest one ranked below `k` or the nearest ranked above; a tie goes
    /// to the one below.
    pub fn ilcp(&self, k: usize, l: usize, r: usize) -> Result<(usize, usize)> {
        let n = self.len();
        check_range(l, r, n)?;
        check_range(k, k, n)?;
        Ok(self.ilcp_inner(k, l, r))
    }

    fn ilcp_inner(&self, k: usize, l: usize, r: usize) -> (usize, usize) {
        if (l..=r).contains(&k) {
            return (k, self.sidx.extent(k - 1));
        }
        let yk = self.sidx.isa(k).expect("k is a text position");
        let lcp_with = |t: usize| self.sidx.lcp_ranks(yk - 1, self.sidx.isa(t).unwrap() - 1).unwrap();
        let below = if yk > 1 {
            self.pos_grid.successor_y(l, r, yk - 1, Dir::Below).unwrap()
        } else {
            None
        };
        let above = self.pos_grid.successor_y(l, r, yk + 1, Dir::Above).unwrap();
        match (below, above) {
            (Some(b), Some(a)) => {
                let (lb, la) = (lcp_with(b.x), lcp_with(a.x));
                if lb >= la {
                    (b.x, lb)
                } else {
                    (a.x, la)
                }
            }
            (Some(p), None) | (None, Some(p)) => (p.x, lcp_with(p.x)),
            // only separators in range
            (None, None) => (l, 0),
        }
    }

    /// The parse of `S[i..=j]`, identical to parsing the extracted substring.
    pub fn scq(&self, i: usize, j: usize) -> Result<LzParse> {
        check_range(i, j, self.len())?;
        Ok(self.parse_span(i, j, i))
    }

    /// Parses positions `i..=j`, drawing sources from `src_lo` onwards.
    fn parse_span(&self, i: usize, j: usize, src_lo: usize) -> LzParse {
        let sym = |k: usize| (self.sidx.symbols()[k - 1] - self.sidx.offset()) as u8;
        let mut phrases = Vec::new();
        let mut k = i;
        while k <= j {
            let len = if k > src_lo {
                self.ilcp_inner(k, src_lo, k - 1).1.min(j - k + 1)
            } else {
                0
            };
            if len == 0 {
                phrases.push(Phrase::literal(sym(k)));
                k += 1;
                continue;
            }
            let rank = self.sidx.isa(k).unwrap() - 1;
            let (lo, hi) = self.sidx.lcp_interval(rank, len);
            let t = self
                .rank_grid
                .successor_y(lo + 1, hi + 1, k - 1, Dir::Below)
                .unwrap()
                .expect("a source of this length exists")
                .y;
            debug_assert!(t >= src_lo);
            let next = k + len;
            let c = (next <= j).then(|| sym(next));
            phrases.push(Phrase { f: k - t, l: len, c });
            k = next + 1;
        }
        LzParse::new(phrases)
    }
}

/// Index over an LZ77 parse that finds the primary occurrences of a
/// pattern: those that contain the last symbol of some phrase.
///
/// For a split `j`, the pattern's first `j` symbols must end a phrase and the
/// rest must start the suffix after it. Phrases are sorted by their reversed
/// text on one axis and by the suffix following them on the other.
#[derive(Debug, Clone)]
pub struct Lz77Index {
    text: Text,
    parse: LzParse,
    starts: Vec<usize>,
    sidx: SuffixIndex,
    // suffix-array rank of the suffix after each phrase, 0 for the empty one,
    // in boundary order
    boundary_ranks: Vec<usize>,
    // phrase ids sorted by reversed phrase text
    rev_order: Vec<usize>,
    grid: RankGrid2,
}

impl Lz77Index {
    pub fn new(text: Text) -> Self {
        let sidx = SuffixIndex::new(&text);
        Self::from_parts(text, sidx)
    }

    /// Builds on an existing suffix index of `text`.
    pub fn from_index(text: Text, sidx: SuffixIndex) -> Result<Self> {
        if !sidx.indexes(text.as_bytes()) {
            return Err(Error::InvalidSuffixArray);
        }
        Ok(Self::from_parts(text, sidx))
    }

    fn from_parts(text: Text, sidx: SuffixIndex) -> Self {
        let scq = ScqIndex::from_index(sidx);
        let parse = scq.parse_span(1, text.len(), 1);
        let sidx = scq.sidx;
        let starts = parse.starts();
        let n = text.len();
        let c = parse.len();
        let next_start = |i: usize| if i + 1 < c { starts[i + 1] } else { n + 1 };
        let rank_after = |i: usize| sidx.isa(next_start(i)).unwrap_or(0);

        let mut boundary: Vec<usize> = (0..c).collect();
        boundary.sort_by_key(|&i| rank_after(i));
        let boundary_ranks: Vec<usize> = boundary.iter().map(|&i| rank_after(i)).collect();

        let t = text.as_bytes();
        let phrase_text = |i: usize| &t[starts[i] - 1..next_start(i) - 1];
        let mut rev_order: Vec<usize> = (0..c).collect();
        rev_order.sort_by(|&a, &b| phrase_text(a).iter().rev().cmp(phrase_text(b).iter().rev()));

        let mut pts = alloc::vec![(0, 0); c];
        for (x, &i) in boundary.iter().enumerate() {
            pts[i].0 = x + 1;
        }
        for (y, &i) in rev_order.iter().enumerate() {
            pts[i].1 = y + 1;
        }
        let grid = RankGrid2::new_permutation(&pts).expect("orders are permutations");
        Lz77Index {
            text,
            parse,
            starts,
            sidx,
            boundary_ranks,
            rev_order,
            grid,
        }
    }

    pub fn build(bytes: &[u8]) -> Result<Self> {
        Ok(Self::new(Text::new(bytes)?))
    }

    pub fn text(&self) -> &Text {
        &self.text
    }

    pub fn parse(&self) -> &LzParse {
        &self.parse
    }

    pub fn suffix_index(&self) -> &SuffixIndex {
        &self.sidx
    }

    pub fn grid(&self) -> &RankGrid2 {
        &self.grid
    }

    /// Phrase ids in reversed-text order.
    pub fn rev_phrase_order(&self) -> &[usize] {
        &self.rev_order
    }

    fn phrase_end(&self, i: usize) -> usize {
        self.starts.get(i + 1).copied().unwrap_or(self.text.len() + 1)
    }

    /// Compares the reversed text of phrase `i`, cut to `|p|`, against `p`.
    fn cmp_reversed(&self, i: usize, p: &[u8]) -> Ordering {
        let t = self.text.as_bytes();
        let phrase = &t[self.starts[i] - 1..self.phrase_end(i) - 1];
        for (a, b) in phrase.iter().rev().zip(p) {
            match a.cmp(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        if phrase.len() >= p.len() {
            Ordering::Equal
        } else {
            Ordering::Less
        }
    }

    /// Start positions of primary occurrences of `q`, ascending.
    pub fn primary_occurrences(&self, q: &[u8]) -> Vec<usize> {
        let mut out = Vec::new();
        let m = q.len();
        for j in 1..=m {
            let (x1, x2) = if j == m {
                (1, self.boundary_ranks.len())
            } else {
                let r = self.sidx.sa_range(&q[j..]);
                if r.is_empty() {
                    continue;
                }
                let a = self.boundary_ranks.partition_point(|&b| b < r.lo);
                let b = self.boundary_ranks.partition_point(|&b| b <= r.hi);
                (a + 1, b)
            };
            if x1 > x2 {
                continue;
            }
            let head: Vec<u8> = q[..j].iter().rev().copied().collect();
            let y1 = self.rev_order.partition_point(|&i| self.cmp_reversed(i, &head) == Ordering::Less);
            let y2 = self.rev_order.partition_point(|&i| self.cmp_reversed(i, &head) != Ordering::Greater);
            if y1 == y2 {
                continue;
            }
            for p in self.grid.report(x1, x2, y1 + 1, y2).unwrap() {
                out.push(self.phrase_end(p.id) - j);
            }
        }
        out.sort_unstable();
        out
    }
}
