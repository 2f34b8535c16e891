//! Range-predecessor queries over a point set in rank space: among points
//! with `x ∈ [x1, x2]` and `y ≤ y2`, the one with the largest `y`.
//!
//! The `⌈log2 n⌉`-bit y-codes are cut into chunks by up to `c` nested tiers of
//! trees with geometrically shrinking chunk widths; the finest tier falls back
//! to a binary wavelet tree. A query walks the coarsest tier along the chunks
//! of `y2`, drops into the next tier only at the single level where the walk
//! must turn to a smaller chunk, and completes the remaining chunks with
//! range-maximum queries.

mod tier;

use tier::{Inner, TierTree};

use crate::succinct::PackedInts;
use crate::wavelet::WaveletTree;
use crate::{bits_for, ceil_log2, Error, Execution, Result, SpaceUsage};

/// `n` points with pairwise distinct coordinates in `[1, n]²`, stored as the
/// permutation `Y[x] = y` and its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    y_of_x: PackedInts,
    x_of_y: PackedInts,
}

impl PointSet {
    /// From the 1-based permutation `Y` (`y_of_x[x - 1] = y`).
    pub fn from_y_of_x(y_of_x: &[usize]) -> Result<Self> {
        let n = y_of_x.len();
        let width = bits_for(n as u64);
        let mut x_of_y = PackedInts::with_len(width, n);
        let mut seen = vec![false; n];
        for (x0, &y) in y_of_x.iter().enumerate() {
            if y == 0 || y > n {
                return Err(Error::Domain(format!("y = {y} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[y - 1], true) {
                return Err(Error::Domain(format!("duplicate y = {y}")));
            }
            x_of_y.set(y - 1, x0 as u64 + 1);
        }
        let ys: Vec<u64> = y_of_x.iter().map(|&y| y as u64).collect();
        Ok(Self {
            y_of_x: PackedInts::from_slice(&ys, width),
            x_of_y,
        })
    }

    /// From `(x, y)` pairs in any order.
    pub fn from_points(points: &[(usize, usize)]) -> Result<Self> {
        let n = points.len();
        let mut y_of_x = vec![0usize; n];
        for &(x, y) in points {
            if x == 0 || x > n {
                return Err(Error::Domain(format!("x = {x} outside 1..={n}")));
            }
            if y_of_x[x - 1] != 0 {
                return Err(Error::Domain(format!("duplicate x = {x}")));
            }
            y_of_x[x - 1] = y;
        }
        Self::from_y_of_x(&y_of_x)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.y_of_x.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.y_of_x.is_empty()
    }

    #[inline]
    pub fn y_of(&self, x: usize) -> usize {
        self.y_of_x.get(x - 1) as usize
    }

    #[inline]
    pub fn x_of(&self, y: usize) -> usize {
        self.x_of_y.get(y - 1) as usize
    }
}

impl SpaceUsage for PointSet {
    fn size_in_bits(&self) -> usize {
        self.y_of_x.size_in_bits() + self.x_of_y.size_in_bits()
    }
}

#[derive(Debug, Clone)]
pub struct RangePredIndex {
    points: PointSet,
    c: usize,
    bits: u32,
    tiers: Vec<u32>,
    root: Inner,
}

impl RangePredIndex {
    /// Largest useful granularity for `n` points.
    pub fn max_granularity(n: usize) -> usize {
        let l = ceil_log2(n).max(1) as usize;
        ceil_log2(l) as usize + 1
    }

    /// Chunk widths of the tree tiers for `c` levels of granularity over
    /// `l`-bit codes: `⌈l^((c-i)/c)⌉` for `i = 1..c`. The wavelet tree below
    /// the last tier is not listed.
    pub fn tier_widths(l: u32, c: usize) -> Vec<u32> {
        let c = c as u32;
        (1..c)
            .map(|i| {
                // Smallest t with t^c ≥ l^(c - i).
                let target = (l as u128).pow(c - i);
                let mut t = (l as f64).powf((c - i) as f64 / c as f64).floor().max(1.0) as u32;
                while (t as u128).pow(c) < target {
                    t += 1;
                }
                while t > 1 && ((t - 1) as u128).pow(c) >= target {
                    t -= 1;
                }
                t.min(l)
            })
            .collect()
    }

    /// Builds with granularity `c`, clamped to `[1, max_granularity(n)]`.
    pub fn build(points: PointSet, c: usize, exec: Execution) -> Self {
        let n = points.len();
        let c = c.clamp(1, Self::max_granularity(n));
        let bits = ceil_log2(n).max(1);
        let tiers = Self::tier_widths(bits, c);
        let codes: Vec<u64> = (1..=n).map(|x| points.y_of(x) as u64 - 1).collect();
        let root = if tiers.is_empty() {
            Inner::Wavelet(WaveletTree::build(&codes, n.max(1) as u64).expect("codes below n"))
        } else {
            Inner::Tree(Box::new(TierTree::build(codes, bits, &tiers, exec)))
        };
        Self {
            points,
            c,
            bits,
            tiers,
            root,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn granularity(&self) -> usize {
        self.c
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    /// Chunk widths per tier, coarsest first, ending with the 1-bit levels of
    /// the wavelet tree.
    pub fn level_plan(&self) -> Vec<u32> {
        let mut plan = self.tiers.clone();
        plan.push(1);
        plan
    }

    /// Chunk widths of the levels of the coarsest tree, or `None` for `c = 1`.
    pub fn top_level_chunks(&self) -> Option<Vec<u32>> {
        match &self.root {
            Inner::Tree(t) => Some(t.chunks.clone()),
            Inner::Wavelet(_) => None,
        }
    }

    /// For each level of the coarsest tree: the node sizes, in label order,
    /// with the labels.
    pub fn top_level_nodes(&self) -> Vec<Vec<(u64, usize)>> {
        let Inner::Tree(t) = &self.root else {
            return vec![];
        };
        t.levels
            .iter()
            .map(|lv| {
                (0..lv.labels.len())
                    .map(|i| (lv.labels.get(i), (lv.starts.get(i + 1) - lv.starts.get(i)) as usize))
                    .collect()
            })
            .collect()
    }

    /// Chunk sequence of the node with `label` at `level` of the coarsest
    /// tree.
    pub fn node_sequence(&self, level: usize, label: u64) -> Option<Vec<u64>> {
        let Inner::Tree(t) = &self.root else {
            return None;
        };
        let lv = t.levels.get(level)?;
        let i = (0..lv.labels.len()).find(|&i| lv.labels.get(i) == label)?;
        let (s, e) = (lv.starts.get(i) as usize, lv.starts.get(i + 1) as usize);
        Some((s..e).map(|p| lv.seq.get(p)).collect())
    }

    /// The point with `x ∈ [x1, x2]`, `y ≤ y2` and the largest such `y`.
    pub fn query(&self, x1: usize, x2: usize, y2: usize) -> Result<Option<(usize, usize)>> {
        Error::check_range(x1, x2, self.len())?;
        Ok(self.query_unchecked(x1, x2, y2))
    }

    #[inline]
    pub fn query_unchecked(&self, x1: usize, x2: usize, y2: usize) -> Option<(usize, usize)> {
        let y2 = y2.min(self.len());
        if y2 == 0 {
            return None;
        }
        let x = self.points.x_of(y2);
        if x1 <= x && x <= x2 {
            return Some((x, y2));
        }
        let v = self.root.range_pred_value(x1 - 1, x2, y2 as u64 - 1)?;
        let y = v as usize + 1;
        Some((self.points.x_of(y), y))
    }

    /// Points in the box `[x1, x2] × [y1, y2]` by decreasing `y`, at most
    /// `limit` of them.
    pub fn report_sorted(&self, x1: usize, x2: usize, y1: usize, y2: usize, limit: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if x1 == 0 || x1 > x2 || x2 > self.len() || y1 > y2 {
            return out;
        }
        let mut y = y2;
        while out.len() < limit && y >= y1.max(1) {
            match self.query_unchecked(x1, x2, y) {
                Some(p) if p.1 >= y1 => {
                    out.push(p);
                    y = p.1 - 1;
                }
                _ => break,
            }
        }
        out
    }

    /// Bits of the index excluding the point set.
    pub fn index_bits(&self) -> usize {
        self.root.size_in_bits() + 64 * (4 + self.tiers.len())
    }

    pub fn code_bits(&self) -> u32 {
        self.bits
    }
}

impl SpaceUsage for RangePredIndex {
    fn size_in_bits(&self) -> usize {
        self.index_bits() + self.points.size_in_bits()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let ps = PointSet::from_points(&[(1, 3), (2, 1), (3, 2)]).unwrap();
        for c in 1..=3 {
            let idx = RangePredIndex::build(ps.clone(), c, Execution::Sequential);
            assert_eq!(idx.query(1, 3, 2), Ok(Some((3, 2))));
            assert_eq!(idx.query(1, 1, 2), Ok(None));
            assert_eq!(idx.query(2, 2, 3), Ok(Some((2, 1))));
            assert_eq!(idx.report_sorted(1, 3, 1, 3, 10), vec![(1, 3), (3, 2), (2, 1)]);
            assert!(idx.report_sorted(1, 3, 1, 3, 0).is_empty());
            assert!(idx.report_sorted(1, 3, 3, 2, 5).is_empty());
            assert!(idx.query(3, 2, 1).is_err());
        }
        let one = RangePredIndex::build(PointSet::from_y_of_x(&[1]).unwrap(), 2, Execution::Sequential);
        assert_eq!(one.query(1, 1, 1), Ok(Some((1, 1))));

        assert!(PointSet::from_y_of_x(&[1, 1]).is_err());
        assert!(PointSet::from_y_of_x(&[0]).is_err());
        assert!(PointSet::from_points(&[(1, 1), (1, 2)]).is_err());
    }

    #[test]
    fn identity_single_wavelet_tree() {
        let ys: Vec<usize> = (1..=8).collect();
        let idx = RangePredIndex::build(PointSet::from_y_of_x(&ys).unwrap(), 1, Execution::Sequential);
        assert_eq!(idx.level_plan(), vec![1]);
        let wt = WaveletTree::build(&(0..8).collect::<Vec<u64>>(), 8).unwrap();
        for x1 in 1..=8 {
            for x2 in x1..=8 {
                for y2 in 1..=8 {
                    let want = wt.range_pred(x1, x2, y2 as u64 - 1).unwrap().map(|(x, v)| (x, v as usize + 1));
                    assert_eq!(idx.query(x1, x2, y2).unwrap(), want);
                }
            }
        }
    }

    #[test]
    fn tier_widths_are_exact_ceilings() {
        assert_eq!(RangePredIndex::tier_widths(20, 1), Vec::<u32>::new());
        assert_eq!(RangePredIndex::tier_widths(20, 2), vec![5]);
        assert_eq!(RangePredIndex::tier_widths(16, 2), vec![4]);
        assert_eq!(RangePredIndex::tier_widths(27, 3), vec![9, 3]);
        assert_eq!(RangePredIndex::tier_widths(20, 3), vec![8, 3]);
    }
}
