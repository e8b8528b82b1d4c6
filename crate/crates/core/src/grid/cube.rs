use alloc::vec::Vec;

use super::{check_order, to_coord, RankGrid2};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point3 {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub id: usize,
}

/// 3D point set for queries bounded on all six sides.
///
/// A segment tree over the distinct z-values; every node holds a [`RankGrid2`]
/// of the points whose z falls in its span, so a z-interval decomposes into
/// O(log σ_z) planar reports.
#[derive(Debug, Clone)]
pub struct RankGrid3 {
    zvals: Vec<u32>,
    zs: Vec<u32>,
    // heap-ordered: node 1 is the root, children of v are 2v and 2v+1
    nodes: Vec<Option<RankGrid2>>,
}

impl RankGrid3 {
    pub fn new(points: &[(usize, usize, usize)]) -> Result<Self> {
        let mut zs = Vec::with_capacity(points.len());
        for p in points {
            zs.push(to_coord(p.2)?);
        }
        let mut zvals = zs.clone();
        zvals.sort_unstable();
        zvals.dedup();
        let codes: Vec<usize> = zs.iter().map(|z| zvals.binary_search(z).unwrap()).collect();
        let mut nodes = Vec::new();
        if !zvals.is_empty() {
            nodes.resize(4 * zvals.len(), None);
            let ids: Vec<usize> = (0..points.len()).collect();
            build(&mut nodes, 1, 0, zvals.len() - 1, points, &codes, ids)?;
        }
        Ok(RankGrid3 { zvals, zs, nodes })
    }

    pub fn len(&self) -> usize {
        self.zs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zs.is_empty()
    }

    /// Points in `[x1, x2] x [y1, y2] x [z1, z2]`, ordered by `(x, y, z, id)`.
    pub fn report(&self, x1: usize, x2: usize, y1: usize, y2: usize, z1: usize, z2: usize) -> Result<Vec<Point3>> {
        check_order(x1, x2)?;
        check_order(y1, y2)?;
        check_order(z1, z2)?;
        let mut out = Vec::new();
        let a = self.zvals.partition_point(|&z| (z as usize) < z1);
        let b = self.zvals.partition_point(|&z| (z as usize) <= z2);
        if a >= b {
            return Ok(out);
        }
        let mut stack = alloc::vec![(1usize, 0usize, self.zvals.len() - 1)];
        while let Some((v, lo, hi)) = stack.pop() {
            if hi < a || lo >= b {
                continue;
            }
            if a <= lo && hi < b {
                if let Some(grid) = &self.nodes[v] {
                    for p in grid.report(x1, x2, y1, y2)? {
                        out.push(Point3 {
                            x: p.x,
                            y: p.y,
                            z: self.zs[p.id] as usize,
                            id: p.id,
                        });
                    }
                }
                continue;
            }
            let mid = (lo + hi) / 2;
            stack.push((2 * v, lo, mid));
            stack.push((2 * v + 1, mid + 1, hi));
        }
        out.sort_unstable();
        Ok(out)
    }
}

fn build(
    nodes: &mut Vec<Option<RankGrid2>>,
    v: usize,
    lo: usize,
    hi: usize,
    points: &[(usize, usize, usize)],
    codes: &[usize],
    ids: Vec<usize>,
) -> Result<()> {
    if ids.is_empty() {
        return Ok(());
    }
    let xy: Vec<(usize, usize)> = ids.iter().map(|&i| (points[i].0, points[i].1)).collect();
    nodes[v] = Some(RankGrid2::with_ids(&xy, &ids)?);
    if lo == hi {
        return Ok(());
    }
    let mid = (lo + hi) / 2;
    let (left, right): (Vec<usize>, Vec<usize>) = ids.into_iter().partition(|&i| codes[i] <= mid);
    build(nodes, 2 * v, lo, mid, points, codes, left)?;
    build(nodes, 2 * v + 1, mid + 1, hi, points, codes, right)
}
