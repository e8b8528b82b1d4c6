use alloc::vec::Vec;

use super::{SaRange, SuffixIndex, Text};
use crate::rmq::Rmq;
use crate::{Error, Result};

/// Generalized suffix array over a document collection, with the document
/// array and the predecessor document array.
///
/// Documents are concatenated as `D_1 $_1 D_2 $_2 ... D_k $_k` where each
/// `$_d` is a distinct separator below every byte; separator-initial suffixes
/// are dropped, so ranks cover exactly the positions inside documents.
#[derive(Debug, Clone)]
pub struct DocumentIndex {
    docs: Vec<Text>,
    starts: Vec<usize>,
    gsa: SuffixIndex,
    da: Vec<u32>,
    psi: Vec<i64>,
    psi_rmq: Rmq<i64>,
}

impl DocumentIndex {
    pub fn new(docs: Vec<Text>) -> Result<Self> {
        if docs.is_empty() {
            return Err(Error::Empty);
        }
        let (symbols, offset, _) = Self::concatenate(&docs);
        Ok(Self::from_gsa(docs, SuffixIndex::from_symbols(symbols, offset)))
    }

    pub fn build<B: AsRef<[u8]>>(docs: &[B]) -> Result<Self> {
        let docs = docs.iter().map(|d| Text::new(d.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::new(docs)
    }

    /// Rebuilds from the documents and the generalized suffix array as
    /// returned by [`raw_suffix_array`](Self::raw_suffix_array). The array is
    /// checked.
    pub fn from_suffix_array(docs: Vec<Text>, sa: Vec<u32>) -> Result<Self> {
        if docs.is_empty() {
            return Err(Error::Empty);
        }
        let (symbols, offset, _) = Self::concatenate(&docs);
        Ok(Self::from_gsa(docs, SuffixIndex::from_retained(symbols, offset, sa)?))
    }

    pub fn raw_suffix_array(&self) -> &[u32] {
        self.gsa.raw_suffix_array()
    }

    fn concatenate(docs: &[Text]) -> (Vec<u32>, u32, Vec<usize>) {
        let k = docs.len() as u32;
        let mut symbols = Vec::with_capacity(docs.iter().map(|d| d.len() + 1).sum());
        let mut starts = Vec::with_capacity(docs.len());
        for (d, doc) in docs.iter().enumerate() {
            starts.push(symbols.len());
            symbols.extend(doc.as_bytes().iter().map(|&b| b as u32 + k));
            symbols.push(d as u32 + 1);
        }
        (symbols, k, starts)
    }

    fn from_gsa(docs: Vec<Text>, gsa: SuffixIndex) -> Self {
        let (_, _, starts) = Self::concatenate(&docs);
        let da: Vec<u32> = (1..=gsa.len())
            .map(|r| starts.partition_point(|&s| s < gsa.sa(r)) as u32)
            .collect();
        let mut last = alloc::vec![-1i64; docs.len() + 1];
        let mut psi = Vec::with_capacity(da.len());
        for (r, &d) in da.iter().enumerate() {
            psi.push(last[d as usize]);
            last[d as usize] = r as i64 + 1;
        }
        let psi_rmq = Rmq::new(psi.clone()).expect("documents are non-empty");
        DocumentIndex {
            docs,
            starts,
            gsa,
            da,
            psi,
            psi_rmq,
        }
    }

    pub fn docs(&self) -> &[Text] {
        &self.docs
    }

    pub fn num_docs(&self) -> usize {
        self.docs.len()
    }

    pub fn gsa(&self) -> &SuffixIndex {
        &self.gsa
    }

    /// Document id (1-based) of the suffix at each rank.
    pub fn da(&self) -> &[u32] {
        &self.da
    }

    /// Predecessor document array: for each rank, the previous rank with the
    /// same document, or -1.
    pub fn psi(&self) -> &[i64] {
        &self.psi
    }

    /// Maps a 1-based position in the concatenation to `(doc, offset)`, both
    /// 1-based.
    pub fn locate(&self, pos: usize) -> (usize, usize) {
        let d = self.starts.partition_point(|&s| s < pos);
        (d, pos - self.starts[d - 1])
    }

    pub fn sa_range(&self, pattern: &[u8]) -> SaRange {
        self.gsa.sa_range(pattern)
    }

    /// Ranks `r` in `range` with `psi[r] < range.lo`: one per distinct
    /// document in the range.
    pub(crate) fn first_in_range(&self, range: SaRange) -> Vec<usize> {
        let mut out = Vec::new();
        if !range.is_empty() {
            self.psi_rmq
                .report_below(range.lo - 1, range.hi - 1, range.lo as i64, |p| out.push(p + 1));
        }
        out
    }
}
