//! Document listing and top-k document retrieval.
//!
//! Listing reports, within the SA-range of the pattern, the ranks whose
//! predecessor document lies left of the range: exactly one per document.
//!
//! Top-k flattens the per-document induced trees ("d-trees") of the
//! generalized suffix tree into an array of slots in preorder. Each slot
//! remembers the depth of its d-parent; for a locus `v`, every document
//! containing the pattern owns exactly one slot inside `v`'s slot interval
//! whose d-parent lies above `v`, and that slot carries the document's weight.

use alloc::vec::Vec;

use crate::grid::WeightedGrid;
use crate::text::{DocumentIndex, SuffixTreeView, Text};
use crate::{Error, Result};

/// Document ids (1-based, ascending) of the documents containing `pattern`.
pub fn list_documents(idx: &DocumentIndex, pattern: &[u8]) -> Vec<usize> {
    let range = idx.sa_range(pattern);
    let mut docs: Vec<usize> = idx
        .first_in_range(range)
        .into_iter()
        .map(|r| idx.da()[r - 1] as usize)
        .collect();
    docs.sort_unstable();
    docs
}

/// A relevance measure that depends only on where a string occurs in a
/// document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelevanceMeasure {
    /// Number of occurrences.
    TermFrequency,
    /// A fixed score per document (1-based ids map to index `id - 1`).
    DocRank(Vec<i64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    /// Tree depth of the d-parent, -1 for the virtual parent of the root.
    pub parent_depth: i64,
    pub weight: i64,
    pub doc: usize,
    pub node: usize,
}

#[derive(Debug, Clone)]
pub struct TopKIndex {
    docidx: DocumentIndex,
    tree: SuffixTreeView,
    measure: RelevanceMeasure,
    slots: Vec<Slot>,
    // 1-based inclusive slot interval per node
    bounds: Vec<(usize, usize)>,
    grid: WeightedGrid,
}

impl TopKIndex {
    pub fn build<B: AsRef<[u8]>>(docs: &[B], measure: RelevanceMeasure) -> Result<Self> {
        let docs = docs.iter().map(|d| Text::new(d.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::new(DocumentIndex::new(docs)?, measure)
    }

    pub fn new(docidx: DocumentIndex, measure: RelevanceMeasure) -> Result<Self> {
        if let RelevanceMeasure::DocRank(table) = &measure {
            if table.len() != docidx.num_docs() {
                return Err(Error::OutOfRange { index: table.len(), len: docidx.num_docs() });
            }
        }
        let gsa = docidx.gsa();
        let tree = SuffixTreeView::new(gsa);
        let nodes = tree.nodes();
        let mut subtree_end: Vec<usize> = (0..nodes.len()).collect();
        for v in (1..nodes.len()).rev() {
            let p = nodes[v].parent.unwrap();
            subtree_end[p] = subtree_end[p].max(subtree_end[v]);
        }
        let is_ancestor = |u: usize, v: usize| u <= v && v <= subtree_end[u];

        let k = docidx.num_docs();
        let mut leaf_ranks: Vec<Vec<usize>> = alloc::vec![Vec::new(); k + 1];
        for (r, &d) in docidx.da().iter().enumerate() {
            leaf_ranks[d as usize].push(r + 1);
        }

        // (node, doc, d-parent depth, weight)
        let mut entries: Vec<(usize, usize, i64, i64)> = Vec::new();
        for (d, ranks) in leaf_ranks.iter().enumerate().skip(1) {
            let mut dnodes: Vec<usize> = ranks.iter().map(|&r| tree.leaf(r)).collect();
            for w in ranks.windows(2) {
                dnodes.push(lca_of_ranks(&docidx, &tree, w[0], w[1]));
            }
            dnodes.sort_unstable();
            dnodes.dedup();
            let mut stack: Vec<usize> = Vec::new();
            for &v in &dnodes {
                while stack.last().is_some_and(|&u| !is_ancestor(u, v)) {
                    stack.pop();
                }
                let parent_depth = stack.last().map_or(-1, |&u| nodes[u].depth as i64);
                let weight = match &measure {
                    RelevanceMeasure::TermFrequency => {
                        let range = nodes[v].range;
                        let a = ranks.partition_point(|&r| r < range.lo);
                        let b = ranks.partition_point(|&r| r <= range.hi);
                        (b - a) as i64
                    }
                    RelevanceMeasure::DocRank(table) => table[d - 1],
                };
                entries.push((v, d, parent_depth, weight));
                stack.push(v);
            }
        }
        entries.sort_unstable_by_key(|e| (e.0, e.1));
        let slots: Vec<Slot> = entries
            .iter()
            .map(|&(node, doc, parent_depth, weight)| Slot { parent_depth, weight, doc, node })
            .collect();
        let bounds = (0..nodes.len())
            .map(|v| {
                let l = slots.partition_point(|s| s.node < v);
                let r = slots.partition_point(|s| s.node <= subtree_end[v]);
                (l + 1, r)
            })
            .collect();
        let points: Vec<(usize, usize, i64)> = slots
            .iter()
            .enumerate()
            .map(|(j, s)| (j + 1, (s.parent_depth + 1) as usize, s.weight))
            .collect();
        let grid = WeightedGrid::new(&points)?;
        Ok(TopKIndex { docidx, tree, measure, slots, bounds, grid })
    }

    pub fn document_index(&self) -> &DocumentIndex {
        &self.docidx
    }

    pub fn tree(&self) -> &SuffixTreeView {
        &self.tree
    }

    pub fn measure(&self) -> &RelevanceMeasure {
        &self.measure
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// Inclusive 1-based slot interval `[l_v, r_v]` of node `v`.
    pub fn node_bounds(&self, v: usize) -> (usize, usize) {
        self.bounds[v]
    }

    /// The `min(k, docs containing pattern)` documents of highest weight, as
    /// `(doc, weight)` by decreasing weight and then increasing doc id.
    pub fn topk(&self, pattern: &[u8], k: usize) -> Vec<(usize, i64)> {
        let range = self.docidx.sa_range(pattern);
        let Some(v) = self.tree.locus(range, pattern.len()) else {
            return Vec::new();
        };
        let (l, r) = self.bounds[v];
        let depth = self.tree.node(v).depth;
        let mut hits: Vec<(usize, i64)> = self
            .grid
            .report(l, r, depth)
            .expect("slot bounds are ordered")
            .into_iter()
            .map(|p| (self.slots[p.x - 1].doc, p.weight))
            .collect();
        let order = |h: &(usize, i64)| (core::cmp::Reverse(h.1), h.0);
        if k < hits.len() {
            if k == 0 {
                return Vec::new();
            }
            hits.select_nth_unstable_by_key(k - 1, order);
            hits.truncate(k);
        }
        hits.sort_unstable_by_key(order);
        hits
    }
}

/// Lowest common ancestor of the leaves at two distinct 1-based ranks.
fn lca_of_ranks(docidx: &DocumentIndex, tree: &SuffixTreeView, a: usize, b: usize) -> usize {
    tree.split_node(docidx.gsa().min_lcp_at(a - 1, b - 1) + 1)
}
