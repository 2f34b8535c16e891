//! Range-minimum (and, by negation, range-maximum) index.
//!
//! Block-decomposed: the array is cut into blocks of 32 elements, a sparse
//! table over block arg-minima answers whole-block spans, and the at most two
//! partial blocks are scanned. Ties go to the leftmost index.

use super::packed::PackedInts;
use crate::{bits_for, Error, Result, SpaceUsage};

const BLOCK: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Min,
    Max,
}

#[derive(Debug, Clone)]
pub struct RmqIndex {
    /// Keys: the values themselves for `Min`, `max − v` for `Max`.
    keys: PackedInts,
    max_value: u64,
    dir: Direction,
    /// `levels[k][b]` = position of the leftmost minimum of blocks `b..b+2^k`.
    levels: Vec<PackedInts>,
}

impl RmqIndex {
    pub fn min(values: &[u64]) -> Self {
        Self::build(values, Direction::Min)
    }

    pub fn max(values: &[u64]) -> Self {
        Self::build(values, Direction::Max)
    }

    pub fn build(values: &[u64], dir: Direction) -> Self {
        let max_value = values.iter().copied().max().unwrap_or(0);
        let keys: Vec<u64> = match dir {
            Direction::Min => values.to_vec(),
            Direction::Max => values.iter().map(|&v| max_value - v).collect(),
        };
        let keys = PackedInts::from_slice_auto(&keys);
        let n = values.len();
        let nblocks = n.div_ceil(BLOCK);
        let pos_width = bits_for(n.saturating_sub(1) as u64);
        let mut levels = Vec::new();
        if nblocks > 0 {
            let mut base = PackedInts::with_len(pos_width, nblocks);
            for b in 0..nblocks {
                let lo = b * BLOCK;
                let hi = (lo + BLOCK).min(n);
                base.set(b, scan_argmin(&keys, lo, hi - 1) as u64);
            }
            levels.push(base);
            let mut k = 1;
            while (1usize << k) <= nblocks {
                let prev = &levels[k - 1];
                let half = 1usize << (k - 1);
                let count = nblocks - (1 << k) + 1;
                let mut next = PackedInts::with_len(pos_width, count);
                for b in 0..count {
                    let (a, c) = (prev.get(b), prev.get(b + half));
                    next.set(b, pick(&keys, a as usize, c as usize) as u64);
                }
                levels.push(next);
                k += 1;
            }
        }
        Self {
            keys,
            max_value,
            dir,
            levels,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Bits of the packed keys alone.
    pub fn key_bits(&self) -> usize {
        self.keys.size_in_bits()
    }

    pub fn direction(&self) -> Direction {
        self.dir
    }

    /// Value at 0-based index `i`.
    #[inline]
    pub fn value0(&self, i: usize) -> u64 {
        let k = self.keys.get(i);
        match self.dir {
            Direction::Min => k,
            Direction::Max => self.max_value - k,
        }
    }

    /// Value at 1-based position `p`.
    pub fn value(&self, p: usize) -> Result<u64> {
        Error::check_index(p, 1, self.len())?;
        Ok(self.value0(p - 1))
    }

    /// 1-based query over `[i, j]`.
    pub fn query(&self, i: usize, j: usize) -> Result<usize> {
        Error::check_range(i, j, self.len())?;
        Ok(self.query0(i - 1, j - 1) + 1)
    }

    /// 0-based inclusive query; `i ≤ j < len`.
    #[inline]
    pub fn query0(&self, i: usize, j: usize) -> usize {
        debug_assert!(i <= j && j < self.len());
        let (bi, bj) = (i / BLOCK, j / BLOCK);
        if bi == bj {
            return scan_argmin(&self.keys, i, j);
        }
        let mut best = scan_argmin(&self.keys, i, bi * BLOCK + BLOCK - 1);
        if bi + 1 < bj {
            let (l, r) = (bi + 1, bj - 1);
            let k = (usize::BITS - 1 - (r - l + 1).leading_zeros()) as usize;
            let lvl = &self.levels[k];
            let a = lvl.get(l) as usize;
            let c = lvl.get(r + 1 - (1 << k)) as usize;
            best = pick(&self.keys, best, pick(&self.keys, a, c));
        }
        let tail = scan_argmin(&self.keys, bj * BLOCK, j);
        pick(&self.keys, best, tail)
    }
}

impl SpaceUsage for RmqIndex {
    fn size_in_bits(&self) -> usize {
        self.keys.size_in_bits() + self.levels.iter().map(|l| l.size_in_bits()).sum::<usize>() + 128
    }
}

#[inline]
fn scan_argmin(keys: &PackedInts, lo: usize, hi: usize) -> usize {
    let mut best = lo;
    let mut best_key = keys.get(lo);
    for p in lo + 1..=hi {
        let k = keys.get(p);
        if k < best_key {
            best_key = k;
            best = p;
        }
    }
    best
}

/// Leftmost of two candidate minima.
#[inline]
fn pick(keys: &PackedInts, a: usize, b: usize) -> usize {
    let (ka, kb) = (keys.get(a), keys.get(b));
    if kb < ka || (kb == ka && b < a) {
        b
    } else {
        a
    }
}
