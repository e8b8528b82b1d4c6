//! Weighted ancestor queries.
//!
//! Leaves are numbered left to right and `nw(j)` is the weight of the LCA of
//! leaves `j` and `j + 1`. The subtree of the answer `v` is a leaf interval
//! whose bordering `nw` entries are the nearest ones below the threshold; the
//! larger of the two is `w(p(v))` and names the parent, from which one step
//! down through a child table gives `v`.

use alloc::vec::Vec;

use crate::grid::RankGrid2;
use crate::text::{SaRange, SuffixIndex, SuffixTreeView, Text};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct WeightedTree {
    real: usize,
    root: usize,
    parent: Vec<Option<usize>>,
    weight: Vec<u64>,
    // leaf index of each leaf node, in left-to-right order
    leaves: Vec<usize>,
    leftmost: Vec<usize>,
    nw: Vec<u64>,
    nw_node: Vec<usize>,
    // children's leftmost-leaf indexes, grouped per node
    child_start: Vec<usize>,
    child_first: Vec<usize>,
    child_id: Vec<usize>,
    // sorted distinct nw values; grid x-coordinates are ranks into this
    nw_values: Vec<u64>,
    left: RankGrid2,
    right: RankGrid2,
}

impl WeightedTree {
    /// Builds from `(parent, edge weight)` per node, node ids `0..len`. The
    /// root has no parent and its weight entry is ignored. A node with one
    /// child gets an extra leaf child of edge weight 1.
    pub fn new(nodes: &[(Option<usize>, u64)]) -> Result<Self> {
        let real = nodes.len();
        if real == 0 {
            return Err(Error::Empty);
        }
        let mut roots = nodes.iter().enumerate().filter(|(_, n)| n.0.is_none());
        let root = roots.next().ok_or(Error::MalformedTree("no root"))?.0;
        if roots.next().is_some() {
            return Err(Error::MalformedTree("more than one root"));
        }
        let mut parent: Vec<Option<usize>> = Vec::with_capacity(real + 1);
        let mut edge: Vec<u64> = Vec::with_capacity(real + 1);
        let mut children: Vec<Vec<usize>> = alloc::vec![Vec::new(); real];
        for (v, &(p, w)) in nodes.iter().enumerate() {
            if let Some(p) = p {
                if p >= real {
                    return Err(Error::MalformedTree("parent id out of range"));
                }
                if w == 0 {
                    return Err(Error::MalformedTree("edge weights must be positive"));
                }
                children[p].push(v);
            }
            parent.push(p);
            edge.push(if p.is_some() { w } else { 0 });
        }
        for v in 0..real {
            if children[v].len() == 1 {
                let d = parent.len();
                parent.push(Some(v));
                edge.push(1);
                children[v].push(d);
                children.push(Vec::new());
            }
        }
        let total = parent.len();

        let mut weight = alloc::vec![0u64; total];
        let mut leftmost = alloc::vec![usize::MAX; total];
        let mut leaves = Vec::new();
        let mut preorder = Vec::with_capacity(total);
        let mut stack = alloc::vec![root];
        while let Some(v) = stack.pop() {
            preorder.push(v);
            if let Some(p) = parent[v] {
                weight[v] = weight[p]
                    .checked_add(edge[v])
                    .ok_or(Error::MalformedTree("node weight overflows"))?;
            }
            if children[v].is_empty() {
                leftmost[v] = leaves.len();
                leaves.push(v);
            }
            stack.extend(children[v].iter().rev());
        }
        // nodes on a cycle are unreachable from the root
        if preorder.len() != total {
            return Err(Error::MalformedTree("cycle"));
        }
        for &v in preorder.iter().rev() {
            if leftmost[v] == usize::MAX {
                leftmost[v] = leftmost[children[v][0]];
            }
        }

        let k = leaves.len();
        let mut nw = alloc::vec![0u64; k.saturating_sub(1)];
        let mut nw_node = alloc::vec![0usize; k.saturating_sub(1)];
        let mut child_start = Vec::with_capacity(total + 1);
        let mut child_first = Vec::new();
        let mut child_id = Vec::new();
        for v in 0..total {
            child_start.push(child_first.len());
            for (s, &c) in children[v].iter().enumerate() {
                child_first.push(leftmost[c]);
                child_id.push(c);
                if s > 0 {
                    nw[leftmost[c] - 1] = weight[v];
                    nw_node[leftmost[c] - 1] = v;
                }
            }
        }
        child_start.push(child_first.len());

        let mut nw_values = nw.clone();
        nw_values.sort_unstable();
        nw_values.dedup();
        let xs: Vec<usize> = nw.iter().map(|w| nw_values.binary_search(w).unwrap() + 1).collect();
        let left_pts: Vec<(usize, usize)> = xs.iter().enumerate().map(|(j, &x)| (x, j + 1)).collect();
        let right_pts: Vec<(usize, usize)> = xs.iter().enumerate().map(|(j, &x)| (x, k - 1 - j)).collect();
        Ok(WeightedTree {
            real,
            root,
            parent,
            weight,
            leaves,
            leftmost,
            nw,
            nw_node,
            child_start,
            child_first,
            child_id,
            nw_values,
            left: RankGrid2::new(&left_pts)?,
            right: RankGrid2::new(&right_pts)?,
        })
    }

    /// Nodes including inserted leaves.
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Number of nodes given at build time; ids at or above are inserted.
    pub fn real_len(&self) -> usize {
        self.real
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weight[v]
    }

    /// Leaf node ids, left to right.
    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    pub fn nw(&self) -> &[u64] {
        &self.nw
    }

    fn children(&self, v: usize) -> (&[usize], &[usize]) {
        let (a, b) = (self.child_start[v], self.child_start[v + 1]);
        (&self.child_first[a..b], &self.child_id[a..b])
    }

    /// The ancestor `v` of `u` (possibly `u`) with `w(v) >= t > w(parent(v))`.
    pub fn weighted_ancestor(&self, u: usize, t: u64) -> Result<usize> {
        if u >= self.len() {
            return Err(Error::OutOfRange { index: u, len: self.len() });
        }
        if t == 0 || t > self.weight[u] {
            return Err(Error::Threshold { t, max: self.weight[u] });
        }
        // leaf index, 1-based, and number of nw values below t
        let i = self.leftmost[u] + 1;
        let k = self.leaves.len();
        let xmax = self.nw_values.partition_point(|&w| w < t);
        let left = self.left.sorted_2sided(xmax, i - 1, Some(1)).pop().map(|p| p.y);
        let right = self.right.sorted_2sided(xmax, k - i, Some(1)).pop().map(|p| k - p.y);
        let j = match (left, right) {
            (Some(a), Some(b)) => {
                if self.nw[a - 1] >= self.nw[b - 1] {
                    a
                } else {
                    b
                }
            }
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("the root weighs 0 and has two children"),
        };
        let p = self.nw_node[j - 1];
        let (firsts, ids) = self.children(p);
        Ok(ids[firsts.partition_point(|&f| f < i) - 1])
    }
}

/// Finds the suffix-tree locus of any text substring by a weighted ancestor
/// query from the leaf of its first suffix, with string depths as weights.
#[derive(Debug, Clone)]
pub struct LocusIndex {
    sidx: SuffixIndex,
    view: SuffixTreeView,
    tree: WeightedTree,
}

impl LocusIndex {
    pub fn new(text: &Text) -> Self {
        Self::from_index(SuffixIndex::new(text))
    }

    pub fn build(bytes: &[u8]) -> Result<Self> {
        Ok(Self::new(&Text::new(bytes)?))
    }

    pub fn from_index(sidx: SuffixIndex) -> Self {
        let view = SuffixTreeView::new(&sidx);
        let nodes: Vec<(Option<usize>, u64)> = view
            .nodes()
            .iter()
            .map(|n| {
                let up = n.parent.map_or(0, |p| view.node(p).string_depth);
                (n.parent, (n.string_depth - up) as u64)
            })
            .collect();
        let tree = WeightedTree::new(&nodes).expect("string depths increase downwards");
        LocusIndex { sidx, view, tree }
    }

    pub fn suffix_index(&self) -> &SuffixIndex {
        &self.sidx
    }

    pub fn tree(&self) -> &WeightedTree {
        &self.tree
    }

    /// SA-range of `T[i..=j]`.
    pub fn locus(&self, i: usize, j: usize) -> Result<SaRange> {
        self.sidx.check_span(i, j)?;
        let leaf = self.view.leaf(self.sidx.isa(i).unwrap());
        let v = self.tree.weighted_ancestor(leaf, (j - i + 1) as u64)?;
        Ok(self.view.node(v).range)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_gets_dummies() {
        // 0 - 1 - 2 with weights 2, 3
        let t = WeightedTree::new(&[(None, 0), (Some(0), 2), (Some(1), 3)]).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.weight(2), 5);
        assert_eq!(t.leaves(), &[2, 4, 3]);
        assert_eq!(t.nw(), &[2, 0]);
        assert_eq!(t.weighted_ancestor(2, 5).unwrap(), 2);
        assert_eq!(t.weighted_ancestor(2, 3).unwrap(), 2);
        assert_eq!(t.weighted_ancestor(2, 2).unwrap(), 1);
        assert_eq!(t.weighted_ancestor(2, 1).unwrap(), 1);
        assert_eq!(t.weighted_ancestor(4, 3).unwrap(), 4);
        assert!(t.weighted_ancestor(2, 6).is_err());
        assert!(t.weighted_ancestor(2, 0).is_err());
        assert!(t.weighted_ancestor(0, 1).is_err());
    }

    #[test]
    fn star() {
        let t = WeightedTree::new(&[(None, 0), (Some(0), 4), (Some(0), 1)]).unwrap();
        assert_eq!(t.nw(), &[0]);
        assert_eq!(t.weighted_ancestor(1, 1).unwrap(), 1);
        // a non-leaf query maps to its leftmost leaf
        let t = WeightedTree::new(&[(None, 0), (Some(0), 4), (Some(1), 1), (Some(1), 1), (Some(0), 2)]).unwrap();
        assert_eq!(t.weighted_ancestor(1, 2).unwrap(), 1);
        assert_eq!(t.weighted_ancestor(3, 5).unwrap(), 3);
    }

    #[test]
    fn rejects_bad_trees() {
        assert!(WeightedTree::new(&[]).is_err());
        assert!(WeightedTree::new(&[(Some(1), 1), (Some(0), 1)]).is_err());
        assert!(WeightedTree::new(&[(None, 0), (Some(2), 1), (Some(1), 1)]).is_err());
        assert!(WeightedTree::new(&[(None, 0), (None, 0)]).is_err());
        assert!(WeightedTree::new(&[(None, 0), (Some(0), 0)]).is_err());
        assert!(WeightedTree::new(&[(None, 0), (Some(5), 1)]).is_err());
        assert_eq!(WeightedTree::new(&[(None, 0)]).unwrap().leaves(), &[0]);
    }

    #[test]
    fn locus_mississippi() {
        let s = b"mississippi";
        let idx = LocusIndex::build(s).unwrap();
        assert_eq!(idx.locus(2, 5).unwrap(), SaRange::new(3, 4));
        for i in 1..=s.len() {
            for j in i..=s.len() {
                assert_eq!(idx.locus(i, j).unwrap(), idx.suffix_index().sa_range(&s[i - 1..j]), "{i} {j}");
            }
        }
        assert!(idx.locus(3, 2).is_err());
        assert!(idx.locus(1, 12).is_err());
        let idx = LocusIndex::build(b"aaa").unwrap();
        assert_eq!(idx.locus(1, 1).unwrap(), SaRange::new(1, 3));
    }
}
