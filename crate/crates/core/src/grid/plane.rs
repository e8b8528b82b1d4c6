use alloc::vec::Vec;

use super::wavelet::WaveletMatrix;
use super::{check_order, to_coord, Dir, Point};
use crate::{Error, Result};

/// 2D point set. Points are kept sorted by `(x, y, id)`; the y-values, mapped
/// to their rank among distinct y's, sit in a wavelet matrix indexed by that
/// sorted position.
#[derive(Debug, Clone)]
pub struct RankGrid2 {
    xs: Vec<u32>,
    // for dense x-coordinates, the first sorted position with x >= v at v
    xstart: Option<Vec<u32>>,
    ids: Vec<u32>,
    yvals: Vec<u32>,
    wm: WaveletMatrix,
}

impl RankGrid2 {
    pub fn new(points: &[(usize, usize)]) -> Result<Self> {
        let ids: Vec<usize> = (0..points.len()).collect();
        Self::with_ids(points, &ids)
    }

    /// Builds a grid whose x- and y-coordinates are each pairwise distinct.
    pub fn new_permutation(points: &[(usize, usize)]) -> Result<Self> {
        for coord in [0, 1] {
            let mut seen: Vec<usize> = points.iter().map(|p| if coord == 0 { p.0 } else { p.1 }).collect();
            seen.sort_unstable();
            if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Coordinate(w[0]));
            }
        }
        Self::new(points)
    }

    pub(crate) fn with_ids(points: &[(usize, usize)], ids: &[usize]) -> Result<Self> {
        let mut pts: Vec<(u32, u32, u32)> = Vec::with_capacity(points.len());
        for (&(x, y), &id) in points.iter().zip(ids) {
            pts.push((to_coord(x)?, to_coord(y)?, to_coord(id)?));
        }
        pts.sort_unstable();
        let mut yvals: Vec<u32> = pts.iter().map(|p| p.1).collect();
        yvals.sort_unstable();
        yvals.dedup();
        let codes: Vec<u32> = pts
            .iter()
            .map(|p| yvals.binary_search(&p.1).unwrap() as u32)
            .collect();
        let wm = WaveletMatrix::new(&codes, yvals.len() as u32);
        let xs: Vec<u32> = pts.iter().map(|p| p.0).collect();
        let max_x = xs.last().map_or(0, |&x| x as usize);
        let xstart = (max_x <= 2 * xs.len() + 64).then(|| {
            (0..=max_x + 1)
                .map(|v| xs.partition_point(|&x| (x as usize) < v) as u32)
                .collect()
        });
        Ok(RankGrid2 {
            xs,
            xstart,
            ids: pts.iter().map(|p| p.2).collect(),
            yvals,
            wm,
        })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// All points, in `(x, y, id)` order.
    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.len());
        self.wm.distinct(0, self.len(), 0, self.yvals.len() as u32, &mut |code, a, b| self.emit(code, a, b, &mut out));
        out.sort_unstable_by_key(|p| (p.x, p.y, p.id));
        out
    }

    fn point(&self, pos: usize, code: u32) -> Point {
        Point {
            x: self.xs[pos] as usize,
            y: self.yvals[code as usize] as usize,
            id: self.ids[pos] as usize,
        }
    }

    /// Sorted positions with `x < v`.
    fn x_below(&self, v: usize) -> usize {
        match &self.xstart {
            Some(t) => t[v.min(t.len() - 1)] as usize,
            None => self.xs.partition_point(|&x| (x as usize) < v),
        }
    }

    fn x_span(&self, x1: usize, x2: usize) -> (usize, usize) {
        let lo = self.x_below(x1);
        let hi = self.x_below(x2.saturating_add(1));
        (lo, hi.max(lo))
    }

    /// Codes whose y-value is `<= bound` are exactly `[0, returned)`.
    fn codes_upto(&self, bound: usize) -> u32 {
        self.yvals.partition_point(|&y| (y as usize) <= bound) as u32
    }

    fn codes_below(&self, bound: usize) -> u32 {
        self.yvals.partition_point(|&y| (y as usize) < bound) as u32
    }

    /// Pushes the points in bottom slots `[a, b)`, all with y-code `code`.
    fn emit(&self, code: u32, a: usize, b: usize, out: &mut Vec<Point>) {
        out.extend((a..b).map(|s| self.point(self.wm.origin(s), code)));
    }

    /// Points in `[x1, x2] x [y1, y2]`, ordered by `(x, y, id)`.
    pub fn report(&self, x1: usize, x2: usize, y1: usize, y2: usize) -> Result<Vec<Point>> {
        check_order(x1, x2)?;
        check_order(y1, y2)?;
        let (lo, hi) = self.x_span(x1, x2);
        let (a, b) = (self.codes_below(y1), self.codes_upto(y2));
        let mut out = Vec::new();
        self.wm.distinct(lo, hi, a, b, &mut |code, s, e| self.emit(code, s, e, &mut out));
        out.sort_unstable_by_key(|p| (p.x, p.y, p.id));
        Ok(out)
    }

    pub fn count(&self, x1: usize, x2: usize, y1: usize, y2: usize) -> Result<usize> {
        check_order(x1, x2)?;
        check_order(y1, y2)?;
        let (lo, hi) = self.x_span(x1, x2);
        let (a, b) = (self.codes_below(y1), self.codes_upto(y2));
        Ok(self.wm.count_less(lo, hi, b) - self.wm.count_less(lo, hi, a))
    }

    /// The point with x in `[x1, x2]` whose y is closest to `bound` on the
    /// given side (inclusive). Equal y's resolve to the smallest x.
    pub fn successor_y(&self, x1: usize, x2: usize, bound: usize, dir: Dir) -> Result<Option<Point>> {
        Ok(self.sorted_3sided(x1, x2, bound, dir, Some(1))?.pop())
    }

    /// Points with x in `[x1, x2]` on one side of `ybound`, sorted by y away
    /// from the bound (decreasing for `Below`, increasing for `Above`), equal
    /// y's by increasing x. At most `limit` points are returned.
    pub fn sorted_3sided(&self, x1: usize, x2: usize, ybound: usize, dir: Dir, limit: Option<usize>) -> Result<Vec<Point>> {
        check_order(x1, x2)?;
        let (lo, hi) = self.x_span(x1, x2);
        Ok(self.sorted_span(lo, hi, ybound, dir, limit.unwrap_or(usize::MAX)))
    }

    /// Points with `x <= xmax` and `y <= ymax`, by decreasing y.
    pub fn sorted_2sided(&self, xmax: usize, ymax: usize, limit: Option<usize>) -> Vec<Point> {
        let hi = self.x_below(xmax.saturating_add(1));
        self.sorted_span(0, hi, ymax, Dir::Below, limit.unwrap_or(usize::MAX))
    }

    fn sorted_span(&self, lo: usize, hi: usize, ybound: usize, dir: Dir, limit: usize) -> Vec<Point> {
        let mut out = Vec::new();
        if lo >= hi {
            return out;
        }
        let mut edge = match dir {
            Dir::Below => self.codes_upto(ybound),
            Dir::Above => self.codes_below(ybound),
        };
        while out.len() < limit {
            let next = match dir {
                Dir::Below => self.wm.prev_below(lo, hi, edge),
                Dir::Above => self.wm.next_at_least(lo, hi, edge),
            };
            let Some((code, a, b)) = next else { break };
            self.emit(code, a, a + (b - a).min(limit - out.len()), &mut out);
            edge = match dir {
                Dir::Below => code,
                Dir::Above => code + 1,
            };
        }
        out
    }

    /// The `k`-th point (1-based) with x in `[x1, x2]` in `(y, x)` order.
    pub fn kth_smallest_y(&self, x1: usize, x2: usize, k: usize) -> Result<Option<Point>> {
        check_order(x1, x2)?;
        let (lo, hi) = self.x_span(x1, x2);
        if k == 0 || k > hi - lo {
            return Ok(None);
        }
        let (code, slot) = self.wm.kth_smallest(lo, hi, k - 1);
        Ok(Some(self.point(self.wm.origin(slot), code)))
    }
}
