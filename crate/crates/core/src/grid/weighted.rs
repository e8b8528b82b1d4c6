use alloc::vec::Vec;

use super::{check_order, to_coord};
use crate::rmq::Rmq;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightedPoint {
    pub x: usize,
    pub y: usize,
    pub weight: i64,
    pub id: usize,
}

/// Weighted points with pairwise distinct x, answering 3-sided top-k queries
/// `[x1, x2] x [0, ymax]`.
///
/// Points are laid out by x; a range-minimum structure over their y-values
/// enumerates everything under `ymax` in the x-span, and the heaviest `k` are
/// selected from that.
#[derive(Debug, Clone)]
pub struct WeightedGrid {
    xs: Vec<u32>,
    ids: Vec<u32>,
    weights: Vec<i64>,
    ys: Option<Rmq<u32>>,
}

impl WeightedGrid {
    pub fn new(points: &[(usize, usize, i64)]) -> Result<Self> {
        let mut pts = Vec::with_capacity(points.len());
        for (id, &(x, y, w)) in points.iter().enumerate() {
            pts.push((to_coord(x)?, to_coord(y)?, w, id as u32));
        }
        pts.sort_unstable_by_key(|p| p.0);
        if let Some(w) = pts.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Coordinate(w[0].0 as usize));
        }
        let ys = if pts.is_empty() {
            None
        } else {
            Some(Rmq::new(pts.iter().map(|p| p.1).collect())?)
        };
        Ok(WeightedGrid {
            xs: pts.iter().map(|p| p.0).collect(),
            ids: pts.iter().map(|p| p.3).collect(),
            weights: pts.iter().map(|p| p.2).collect(),
            ys,
        })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Every point with x in `[x1, x2]` and `y <= ymax`, by increasing x.
    pub fn report(&self, x1: usize, x2: usize, ymax: usize) -> Result<Vec<WeightedPoint>> {
        check_order(x1, x2)?;
        let mut out = Vec::new();
        let Some(ys) = &self.ys else { return Ok(out) };
        let lo = self.xs.partition_point(|&x| (x as usize) < x1);
        let hi = self.xs.partition_point(|&x| (x as usize) <= x2);
        if lo >= hi {
            return Ok(out);
        }
        let at = |pos: usize| WeightedPoint {
            x: self.xs[pos] as usize,
            y: ys.values()[pos] as usize,
            weight: self.weights[pos],
            id: self.ids[pos] as usize,
        };
        if ymax >= u32::MAX as usize {
            out.extend((lo..hi).map(at));
        } else {
            ys.report_below(lo, hi - 1, ymax as u32 + 1, |pos| out.push(at(pos)));
        }
        Ok(out)
    }

    /// The `min(k, hits)` heaviest points of the range, by decreasing weight
    /// and then increasing x.
    pub fn topk_3sided(&self, x1: usize, x2: usize, ymax: usize, k: usize) -> Result<Vec<WeightedPoint>> {
        let mut hits = self.report(x1, x2, ymax)?;
        let order = |p: &WeightedPoint| (core::cmp::Reverse(p.weight), p.x);
        if k < hits.len() {
            if k == 0 {
                return Ok(Vec::new());
            }
            hits.select_nth_unstable_by_key(k - 1, order);
            hits.truncate(k);
        }
        hits.sort_unstable_by_key(order);
        Ok(hits)
    }
}
