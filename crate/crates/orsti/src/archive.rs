//! Index archives.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! "ORSTI" | version u8 | kind u8 | wide u8 | sections...
//! ```
//!
//! A byte string is a `u64` length and the bytes. An array is a `u64` length
//! and entries of 4 bytes, or 8 when `wide` is 1. A signed array always uses
//! 8-byte entries. Archives store the inputs and suffix arrays; the remaining
//! structures are rebuilt on load.

use std::fmt;

use orsti_core::approx::OneErrorIndex;
use orsti_core::doc_retrieval::{RelevanceMeasure, TopKIndex};
use orsti_core::geo::GeoTextIndex;
use orsti_core::lz::{Lz77Index, ScqIndex};
use orsti_core::restricted::RestrictedIndex;
use orsti_core::weighted_anc::WeightedTree;
use orsti_core::{DocumentIndex, SuffixIndex, Text};

use crate::formats::{parse_points, parse_tree};
use crate::{Error, Result};

pub const MAGIC: &[u8; 5] = b"ORSTI";
pub const VERSION: u8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Kind {
    Sa,
    Docs,
    OneError,
    Lz,
    Scq,
    Restricted,
    Topk,
    Wanc,
    Geo,
}

const KINDS: [Kind; 9] = [
    Kind::Sa,
    Kind::Docs,
    Kind::OneError,
    Kind::Lz,
    Kind::Scq,
    Kind::Restricted,
    Kind::Topk,
    Kind::Wanc,
    Kind::Geo,
];

impl Kind {
    pub fn tag(self) -> u8 {
        KINDS.iter().position(|&k| k == self).unwrap() as u8 + 1
    }

    pub fn from_tag(tag: u8) -> Option<Kind> {
        KINDS.get((tag as usize).checked_sub(1)?).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Sa => "sa",
            Kind::Docs => "docs",
            Kind::OneError => "one-error",
            Kind::Lz => "lz",
            Kind::Scq => "scq",
            Kind::Restricted => "restricted",
            Kind::Topk => "topk",
            Kind::Wanc => "wanc",
            Kind::Geo => "geo",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub enum Index {
    Sa { text: Text, index: SuffixIndex },
    Docs(DocumentIndex),
    OneError(OneErrorIndex),
    Lz(Lz77Index),
    Scq { text: Text, index: ScqIndex },
    Restricted { text: Text, index: RestrictedIndex },
    Topk(TopKIndex),
    Wanc { nodes: Vec<(Option<usize>, u64)>, tree: WeightedTree },
    Geo(GeoTextIndex),
}

fn single(inputs: &[Vec<u8>], kind: Kind) -> Result<Text> {
    match inputs {
        [one] => Ok(Text::new(one.clone())?),
        _ => Err(Error::Usage(format!("kind {kind} takes exactly one input"))),
    }
}

fn collection(inputs: &[Vec<u8>]) -> Result<Vec<Text>> {
    if inputs.is_empty() {
        return Err(Error::Usage("no documents given".into()));
    }
    Ok(inputs.iter().map(|d| Text::new(d.clone())).collect::<orsti_core::Result<_>>()?)
}

fn reversed(text: &Text) -> Text {
    Text::new(text.as_bytes().iter().rev().copied().collect::<Vec<u8>>()).unwrap()
}

impl Index {
    /// Builds an index of `kind` from raw input files. `doc_ranks` switches
    /// top-k from term frequency to fixed per-document scores.
    pub fn build(kind: Kind, inputs: &[Vec<u8>], doc_ranks: Option<Vec<i64>>) -> Result<Index> {
        if inputs.iter().any(|i| i.is_empty()) {
            return Err(Error::Format("input is empty".into()));
        }
        if doc_ranks.is_some() && kind != Kind::Topk {
            return Err(Error::Usage("document ranks apply to topk archives only".into()));
        }
        Ok(match kind {
            Kind::Sa => {
                let text = single(inputs, kind)?;
                Index::Sa { index: SuffixIndex::new(&text), text }
            }
            Kind::Docs => Index::Docs(DocumentIndex::new(collection(inputs)?)?),
            Kind::OneError => Index::OneError(OneErrorIndex::new(single(inputs, kind)?)),
            Kind::Lz => Index::Lz(Lz77Index::new(single(inputs, kind)?)),
            Kind::Scq => {
                let text = single(inputs, kind)?;
                Index::Scq { index: ScqIndex::new(&text), text }
            }
            Kind::Restricted => {
                let text = single(inputs, kind)?;
                Index::Restricted { index: RestrictedIndex::new(&text), text }
            }
            Kind::Topk => {
                let measure = doc_ranks.map_or(RelevanceMeasure::TermFrequency, RelevanceMeasure::DocRank);
                Index::Topk(TopKIndex::new(DocumentIndex::new(collection(inputs)?)?, measure)?)
            }
            Kind::Wanc => {
                let nodes = parse_tree(one_input(inputs, kind)?)?;
                Index::Wanc { tree: WeightedTree::new(&nodes)?, nodes }
            }
            Kind::Geo => Index::Geo(GeoTextIndex::new(&parse_points(one_input(inputs, kind)?)?)?),
        })
    }

    pub fn kind(&self) -> Kind {
        match self {
            Index::Sa { .. } => Kind::Sa,
            Index::Docs(_) => Kind::Docs,
            Index::OneError(_) => Kind::OneError,
            Index::Lz(_) => Kind::Lz,
            Index::Scq { .. } => Kind::Scq,
            Index::Restricted { .. } => Kind::Restricted,
            Index::Topk(_) => Kind::Topk,
            Index::Wanc { .. } => Kind::Wanc,
            Index::Geo(_) => Kind::Geo,
        }
    }

    /// The suffix index of the single text, for kinds that have one.
    pub fn text_index(&self) -> Option<&SuffixIndex> {
        match self {
            Index::Sa { index, .. } => Some(index),
            Index::OneError(i) => Some(i.forward()),
            Index::Lz(i) => Some(i.suffix_index()),
            Index::Scq { index, .. } => Some(index.suffix_index()),
            Index::Restricted { index, .. } => Some(index.suffix_index()),
            _ => None,
        }
    }

    /// The document collection, for kinds that have one.
    pub fn documents(&self) -> Option<&DocumentIndex> {
        match self {
            Index::Docs(d) => Some(d),
            Index::Topk(t) => Some(t.document_index()),
            _ => None,
        }
    }

    pub fn save(&self) -> Vec<u8> {
        let size = match self {
            Index::Docs(d) => d.gsa().text_len(),
            Index::Topk(t) => t.document_index().gsa().text_len(),
            Index::Wanc { nodes, .. } => nodes.len(),
            Index::Geo(g) => g.points().len(),
            other => other.text_index().map_or(0, |s| s.text_len()),
        };
        let mut w = Writer { buf: Vec::new(), wide: size >= 1 << 31 };
        w.buf.extend_from_slice(MAGIC);
        w.buf.push(VERSION);
        w.buf.push(self.kind().tag());
        w.buf.push(u8::from(w.wide));
        match self {
            Index::Sa { text, index } => w.text_and_sa(text, index),
            Index::Docs(d) => w.collection(d),
            Index::OneError(i) => {
                w.text_and_sa(i.text(), i.forward());
                w.sa(i.reverse());
            }
            Index::Lz(i) => w.text_and_sa(i.text(), i.suffix_index()),
            Index::Scq { text, index } => w.text_and_sa(text, index.suffix_index()),
            Index::Restricted { text, index } => w.text_and_sa(text, index.suffix_index()),
            Index::Topk(t) => {
                w.collection(t.document_index());
                match t.measure() {
                    RelevanceMeasure::TermFrequency => {
                        w.buf.push(0);
                        w.signed(&[]);
                    }
                    RelevanceMeasure::DocRank(r) => {
                        w.buf.push(1);
                        w.signed(r);
                    }
                }
            }
            Index::Wanc { nodes, .. } => {
                w.words(nodes.iter().map(|n| n.0.map_or(0, |p| p as u64 + 1)));
                w.longs(nodes.iter().map(|n| n.1));
            }
            Index::Geo(g) => {
                w.words(g.points().iter().map(|p| p.0 as u64));
                w.words(g.points().iter().map(|p| p.1 as u64));
            }
        }
        w.buf
    }
}

fn one_input(inputs: &[Vec<u8>], kind: Kind) -> Result<&[u8]> {
    match inputs {
        [one] => Ok(one),
        _ => Err(Error::Usage(format!("kind {kind} takes exactly one input"))),
    }
}

struct Writer {
    buf: Vec<u8>,
    wide: bool,
}

impl Writer {
    fn len(&mut self, n: usize) {
        self.buf.extend_from_slice(&(n as u64).to_le_bytes());
    }

    fn bytes(&mut self, b: &[u8]) {
        self.len(b.len());
        self.buf.extend_from_slice(b);
    }

    fn words(&mut self, v: impl ExactSizeIterator<Item = u64>) {
        self.len(v.len());
        for x in v {
            if self.wide {
                self.buf.extend_from_slice(&x.to_le_bytes());
            } else {
                self.buf.extend_from_slice(&(x as u32).to_le_bytes());
            }
        }
    }

    fn longs(&mut self, v: impl ExactSizeIterator<Item = u64>) {
        self.len(v.len());
        for x in v {
            self.buf.extend_from_slice(&x.to_le_bytes());
        }
    }

    fn sa(&mut self, idx: &SuffixIndex) {
        self.words(idx.raw_suffix_array().iter().map(|&v| v as u64));
    }

    fn text_and_sa(&mut self, text: &Text, idx: &SuffixIndex) {
        self.bytes(text.as_bytes());
        self.sa(idx);
    }

    fn collection(&mut self, d: &DocumentIndex) {
        self.len(d.num_docs());
        for doc in d.docs() {
            self.bytes(doc.as_bytes());
        }
        self.words(d.raw_suffix_array().iter().map(|&v| v as u64));
    }

    fn signed(&mut self, v: &[i64]) {
        self.len(v.len());
        for x in v {
            self.buf.extend_from_slice(&x.to_le_bytes());
        }
    }
}

fn corrupt(what: &str) -> Error {
    Error::Format(format!("corrupt archive: {what}"))
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
    wide: bool,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.data.len() - self.pos < n {
            return Err(corrupt("truncated"));
        }
        let out = &self.data[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    fn byte(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    /// A length whose `unit`-byte entries must still fit in the archive.
    fn len(&mut self, unit: usize) -> Result<usize> {
        let n = self.u64()?;
        match usize::try_from(n).ok().and_then(|n| n.checked_mul(unit)) {
            Some(bytes) if bytes <= self.data.len() - self.pos => Ok(n as usize),
            _ => Err(corrupt("length runs past the end")),
        }
    }

    fn bytes(&mut self) -> Result<&'a [u8]> {
        let n = self.len(1)?;
        self.take(n)
    }

    fn words(&mut self) -> Result<Vec<u64>> {
        let unit = if self.wide { 8 } else { 4 };
        let n = self.len(unit)?;
        let raw = self.take(n * unit)?;
        Ok(raw
            .chunks_exact(unit)
            .map(|c| if self.wide { u64::from_le_bytes(c.try_into().unwrap()) } else { u32::from_le_bytes(c.try_into().unwrap()) as u64 })
            .collect())
    }

    fn longs(&mut self) -> Result<Vec<u64>> {
        let n = self.len(8)?;
        Ok(self.take(n * 8)?.chunks_exact(8).map(|c| u64::from_le_bytes(c.try_into().unwrap())).collect())
    }

    fn signed(&mut self) -> Result<Vec<i64>> {
        Ok(self.longs()?.into_iter().map(|v| v as i64).collect())
    }

    fn sa(&mut self) -> Result<Vec<u32>> {
        self.words()?
            .into_iter()
            .map(|v| u32::try_from(v).map_err(|_| corrupt("suffix array entry too large")))
            .collect()
    }

    fn text(&mut self) -> Result<Text> {
        Ok(Text::new(self.bytes()?)?)
    }

    fn text_and_index(&mut self) -> Result<(Text, SuffixIndex)> {
        let text = self.text()?;
        let sa = self.sa()?;
        let idx = SuffixIndex::from_suffix_array(&text, sa)?;
        Ok((text, idx))
    }

    fn collection(&mut self) -> Result<DocumentIndex> {
        let k = self.len(8)?;
        let docs = (0..k).map(|_| self.text()).collect::<Result<Vec<_>>>()?;
        let sa = self.sa()?;
        Ok(DocumentIndex::from_suffix_array(docs, sa)?)
    }
}

impl Index {
    pub fn load(data: &[u8]) -> Result<Index> {
        if data.len() < 8 || &data[..5] != MAGIC {
            return Err(Error::Format("not an index archive (bad magic)".into()));
        }
        if data[5] != VERSION {
            return Err(Error::Format(format!("unsupported archive version {}", data[5])));
        }
        let kind = Kind::from_tag(data[6]).ok_or_else(|| corrupt("unknown kind"))?;
        let wide = match data[7] {
            0 => false,
            1 => true,
            _ => return Err(corrupt("bad width flag")),
        };
        let mut r = Reader { data, pos: 8, wide };
        let index = match kind {
            Kind::Sa => {
                let (text, index) = r.text_and_index()?;
                Index::Sa { text, index }
            }
            Kind::Docs => Index::Docs(r.collection()?),
            Kind::OneError => {
                let (text, fwd) = r.text_and_index()?;
                let rev = SuffixIndex::from_suffix_array(&reversed(&text), r.sa()?)?;
                Index::OneError(OneErrorIndex::from_indexes(text, fwd, rev)?)
            }
            Kind::Lz => {
                let (text, idx) = r.text_and_index()?;
                Index::Lz(Lz77Index::from_index(text, idx)?)
            }
            Kind::Scq => {
                let (text, idx) = r.text_and_index()?;
                Index::Scq { text, index: ScqIndex::from_index(idx) }
            }
            Kind::Restricted => {
                let (text, idx) = r.text_and_index()?;
                Index::Restricted { text, index: RestrictedIndex::from_index(idx) }
            }
            Kind::Topk => {
                let docs = r.collection()?;
                let tag = r.byte()?;
                let ranks = r.signed()?;
                let measure = match tag {
                    0 if ranks.is_empty() => RelevanceMeasure::TermFrequency,
                    1 => RelevanceMeasure::DocRank(ranks),
                    _ => return Err(corrupt("bad relevance measure")),
                };
                Index::Topk(TopKIndex::new(docs, measure)?)
            }
            Kind::Wanc => {
                let parents = r.words()?;
                let weights = r.longs()?;
                if parents.len() != weights.len() {
                    return Err(corrupt("tree arrays differ in length"));
                }
                let nodes: Vec<(Option<usize>, u64)> = parents
                    .iter()
                    .zip(&weights)
                    .map(|(&p, &w)| ((p as usize).checked_sub(1), w))
                    .collect();
                Index::Wanc { tree: WeightedTree::new(&nodes)?, nodes }
            }
            Kind::Geo => {
                let xs = r.words()?;
                let ys = r.words()?;
                if xs.len() != ys.len() {
                    return Err(corrupt("point arrays differ in length"));
                }
                let pts: Vec<(usize, usize)> = xs.iter().zip(&ys).map(|(&x, &y)| (x as usize, y as usize)).collect();
                Index::Geo(GeoTextIndex::new(&pts)?)
            }
        };
        if r.pos != data.len() {
            return Err(corrupt("trailing bytes"));
        }
        Ok(index)
    }
}
