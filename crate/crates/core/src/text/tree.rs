use alloc::vec::Vec;

use super::{SaRange, SuffixIndex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub range: SaRange,
    /// Length of the path label. A leaf's label counts the terminator that
    /// ends its suffix, so leaves are strictly deeper than their parents.
    pub string_depth: usize,
    /// Depth in edges from the root.
    pub depth: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

impl TreeNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// The suffix tree as nested suffix-array intervals.
///
/// Internal nodes are the LCP intervals; node 0 is the root and nodes are
/// numbered in preorder with children ordered by rank. When every suffix
/// shares a first symbol the root has a single child with the same interval.
#[derive(Debug, Clone)]
pub struct SuffixTreeView {
    nodes: Vec<TreeNode>,
    leaf_of: Vec<usize>,
    // node where the leaves of ranks h and h + 1 part, at h - 1
    split: Vec<usize>,
}

impl SuffixTreeView {
    pub fn new(idx: &SuffixIndex) -> Self {
        let n = idx.len();
        let lcp = idx.lcp_array();
        // (lo, hi, string_depth), 0-based ranks
        let mut spans: Vec<(usize, usize, usize)> = Vec::with_capacity(2 * n);
        spans.push((0, n - 1, 0));
        let mut stack: Vec<(usize, usize)> = alloc::vec![(0, 0)];
        for i in 1..=n {
            let h = if i < n { lcp[i - 1] as usize } else { 0 };
            let mut lb = i - 1;
            while h < stack.last().unwrap().0 {
                let (depth, start) = stack.pop().unwrap();
                spans.push((start, i - 1, depth));
                lb = start;
            }
            if h > stack.last().unwrap().0 {
                stack.push((h, lb));
            }
        }
        for r in 0..n {
            let pos = idx.sa(r + 1) - 1;
            spans.push((r, r, idx.extent(pos) + 1));
        }
        // preorder: by left end, wider first, shallower first
        spans.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)).then(a.2.cmp(&b.2)));

        let mut nodes: Vec<TreeNode> = Vec::with_capacity(spans.len());
        let mut leaf_of = alloc::vec![0; n];
        let mut path: Vec<usize> = Vec::new();
        for (id, &(lo, hi, string_depth)) in spans.iter().enumerate() {
            while let Some(&top) = path.last() {
                let t = &nodes[top].range;
                if t.lo <= lo + 1 && hi < t.hi {
                    break;
                }
                path.pop();
            }
            let parent = path.last().copied();
            let depth = parent.map_or(0, |p| nodes[p].depth + 1);
            if let Some(p) = parent {
                nodes[p].children.push(id);
            }
            nodes.push(TreeNode {
                range: SaRange::new(lo + 1, hi + 1),
                string_depth,
                depth,
                parent,
                children: Vec::new(),
            });
            if lo == hi && (id + 1 == spans.len() || spans[id + 1].0 != lo || spans[id + 1].1 != hi) {
                leaf_of[lo] = id;
            }
            path.push(id);
        }
        let mut split = alloc::vec![0; n - 1];
        for (v, node) in nodes.iter().enumerate() {
            for &c in node.children.iter().skip(1) {
                split[nodes[c].range.lo - 2] = v;
            }
        }
        SuffixTreeView { nodes, leaf_of, split }
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> usize {
        0
    }

    /// Leaf node of the suffix at 1-based `rank`.
    pub fn leaf(&self, rank: usize) -> usize {
        self.leaf_of[rank - 1]
    }

    /// Lowest common ancestor of the leaves of 1-based ranks `h` and `h + 1`.
    pub fn split_node(&self, h: usize) -> usize {
        self.split[h - 1]
    }

    /// Highest node whose interval is `range` and whose string depth is at
    /// least `len`: the locus of any pattern of length `len` with that range.
    pub fn locus(&self, range: SaRange, len: usize) -> Option<usize> {
        if range.is_empty() {
            return None;
        }
        // nodes are sorted by (lo asc, hi desc, string depth asc)
        let key = |n: &TreeNode| (n.range.lo, core::cmp::Reverse(n.range.hi), n.string_depth);
        let target = (range.lo, core::cmp::Reverse(range.hi), len);
        let at = self.nodes.partition_point(|n| key(n) < target);
        self.nodes.get(at).filter(|n| n.range == range).map(|_| at)
    }
}
