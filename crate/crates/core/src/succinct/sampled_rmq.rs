//! Block-sampled range-minimum over a packed small-alphabet sequence.
//!
//! The sequence is cut into blocks of `block_size` elements. The per-block
//! extrema form a reduced sequence indexed by an [`RmqIndex`]; head and tail
//! pieces of a query are resolved with the shared prefix-argmin tables over
//! 16-bit lanes of packed elements. The values themselves are not stored here:
//! callers pass the same [`PackedInts`] the index was built from.

use super::packed::PackedInts;
use super::rmq::{Direction, RmqIndex};
use super::tables::{argmin_table, ArgminTable};
use crate::{Error, Result, SpaceUsage};

#[derive(Debug, Clone)]
pub struct SampledRmq {
    block_size: usize,
    dir: Direction,
    reduced: RmqIndex,
}

impl SampledRmq {
    pub fn min(values: &PackedInts, block_size: usize) -> Self {
        Self::build(values, block_size, Direction::Min)
    }

    pub fn max(values: &PackedInts, block_size: usize) -> Self {
        Self::build(values, block_size, Direction::Max)
    }

    /// Block size matching one table lane for the sequence's element width.
    pub fn default_block_size(values: &PackedInts) -> usize {
        let w = values.width();
        if (1..=8).contains(&w) {
            (16 / w) as usize
        } else {
            1
        }
    }

    pub fn build(values: &PackedInts, block_size: usize, dir: Direction) -> Self {
        assert!(block_size >= 1, "block size must be positive");
        let n = values.len();
        let mut sampled = Vec::with_capacity(n.div_ceil(block_size));
        let mut lo = 0;
        while lo < n {
            let hi = (lo + block_size).min(n) - 1;
            let p = scan(values, dir, lo, hi);
            sampled.push(values.get(p));
            lo += block_size;
        }
        Self {
            block_size,
            dir,
            reduced: RmqIndex::build(&sampled, dir),
        }
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    /// 1-based query over `[i, j]`.
    pub fn query(&self, values: &PackedInts, i: usize, j: usize) -> Result<usize> {
        Error::check_range(i, j, values.len())?;
        Ok(self.query0(values, i - 1, j - 1) + 1)
    }

    /// 0-based inclusive query.
    pub fn query0(&self, values: &PackedInts, i: usize, j: usize) -> usize {
        debug_assert!(i <= j && j < values.len());
        let b = self.block_size;
        let (bi, bj) = (i / b, j / b);
        if bj <= bi + 1 {
            return scan(values, self.dir, i, j);
        }
        let better = |cand: usize, best: usize| match self.dir {
            Direction::Min => values.get(cand) < values.get(best),
            Direction::Max => values.get(cand) > values.get(best),
        };
        let mut best = scan(values, self.dir, i, bi * b + b - 1);
        let block = self.reduced.query0(bi + 1, bj - 1);
        let central = scan(values, self.dir, block * b, block * b + b - 1);
        if better(central, best) {
            best = central;
        }
        let tail = scan(values, self.dir, bj * b, j);
        if better(tail, best) {
            best = tail;
        }
        best
    }
}

impl SpaceUsage for SampledRmq {
    fn size_in_bits(&self) -> usize {
        self.reduced.size_in_bits() + 64
    }
}

/// Leftmost extremum of `values[lo..=hi]`, one table lookup per 16-bit lane.
#[inline]
fn scan(values: &PackedInts, dir: Direction, lo: usize, hi: usize) -> usize {
    let w = values.width();
    if (1..=8).contains(&w) {
        scan_lanes(values, argmin_table(w), dir, lo, hi)
    } else {
        let mut best = lo;
        let mut best_v = values.get(lo);
        for p in lo + 1..=hi {
            let v = values.get(p);
            let wins = match dir {
                Direction::Min => v < best_v,
                Direction::Max => v > best_v,
            };
            if wins {
                best = p;
                best_v = v;
            }
        }
        best
    }
}

#[inline]
fn scan_lanes(values: &PackedInts, table: &ArgminTable, dir: Direction, lo: usize, hi: usize) -> usize {
    let mut best = usize::MAX;
    let mut best_v = 0;
    let mut p = lo;
    while p <= hi {
        let len = table.lane.min(hi - p + 1);
        let mut key = values.get_run(p, len);
        if dir == Direction::Max {
            key = !key & ((1u64 << (len as u32 * table.width)) - 1);
        }
        let cand = p + table.prefix_argmin(key as usize, len);
        let v = values.get(cand);
        let wins = best == usize::MAX
            || match dir {
                Direction::Min => v < best_v,
                Direction::Max => v > best_v,
            };
        if wins {
            best = cand;
            best_v = v;
        }
        p += len;
    }
    best
}
