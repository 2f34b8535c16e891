//! Balanced wavelet tree over an integer alphabet.
//!
//! Levels follow the bits of the `⌈log2 σ⌉`-bit code, most significant first.
//! Each level stores one bitvector that is the concatenation of its nodes'
//! bitvectors in prefix order, so node boundaries are recovered with rank and
//! never stored.

mod split;

pub use split::{split_digits, wt_split_core};

use crate::succinct::{BitVector, RawBits};
use crate::{ceil_log2, Error, Result, SpaceUsage};

#[derive(Debug, Clone)]
pub struct WaveletTree {
    sigma: u64,
    depth: u32,
    n: usize,
    levels: Vec<BitVector>,
}

/// A node (`[ns, ne)`) together with a query range (`[a, b)`), in the global
/// coordinates of one level.
#[derive(Debug, Clone, Copy)]
struct Frame {
    ns: usize,
    ne: usize,
    a: usize,
    b: usize,
}

impl Frame {
    #[inline]
    fn is_empty(&self) -> bool {
        self.a == self.b
    }
}

impl WaveletTree {
    pub fn build(seq: &[u64], sigma: u64) -> Result<Self> {
        if sigma == 0 {
            return Err(Error::Domain("alphabet size must be at least 1".into()));
        }
        if let Some(&bad) = seq.iter().find(|&&c| c >= sigma) {
            return Err(Error::Domain(format!("symbol {bad} outside alphabet of size {sigma}")));
        }
        let depth = ceil_log2(sigma as usize);
        let mut levels = Vec::with_capacity(depth as usize);
        let mut nodes: Vec<Vec<u64>> = if seq.is_empty() { vec![] } else { vec![seq.to_vec()] };
        for l in 0..depth {
            let bit = depth - 1 - l;
            let mut plane = RawBits::with_capacity(seq.len());
            let mut next = Vec::with_capacity(nodes.len() * 2);
            for node in nodes {
                for &v in &node {
                    plane.push(v >> bit & 1 == 1);
                }
                if l + 1 < depth {
                    let (z, o) = split::split_by_bit(&node, bit);
                    if !z.is_empty() {
                        next.push(z);
                    }
                    if !o.is_empty() {
                        next.push(o);
                    }
                }
            }
            levels.push(BitVector::from(plane));
            nodes = next;
        }
        Ok(Self {
            sigma,
            depth,
            n: seq.len(),
            levels,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn level(&self, l: usize) -> &BitVector {
        &self.levels[l]
    }

    #[inline]
    fn child(&self, l: usize, f: Frame, bit: bool) -> Frame {
        let bv = &self.levels[l];
        let (zns, zne) = (bv.rank0(f.ns), bv.rank0(f.ne));
        let (za, zb) = (bv.rank0(f.a), bv.rank0(f.b));
        if !bit {
            Frame {
                ns: f.ns,
                ne: f.ns + (zne - zns),
                a: f.ns + (za - zns),
                b: f.ns + (zb - zns),
            }
        } else {
            let cns = f.ns + (zne - zns);
            Frame {
                ns: cns,
                ne: f.ne,
                a: cns + (f.a - f.ns) - (za - zns),
                b: cns + (f.b - f.ns) - (zb - zns),
            }
        }
    }

    /// Symbol at 0-based offset `i`.
    pub fn access0(&self, i: usize) -> u64 {
        debug_assert!(i < self.n);
        let mut f = Frame {
            ns: 0,
            ne: self.n,
            a: i,
            b: i + 1,
        };
        let mut v = 0;
        for l in 0..self.depth as usize {
            let bit = self.levels[l].get0(f.a);
            v = v << 1 | bit as u64;
            f = self.child(l, f, bit);
        }
        v
    }

    /// Occurrences of `c` among the first `i` symbols. Unchecked.
    pub fn rank0(&self, c: u64, i: usize) -> usize {
        debug_assert!(c < self.sigma && i <= self.n);
        let mut f = Frame {
            ns: 0,
            ne: self.n,
            a: 0,
            b: i,
        };
        for l in 0..self.depth as usize {
            let bit = c >> (self.depth as usize - 1 - l) & 1 == 1;
            f = self.child(l, f, bit);
            if f.is_empty() {
                return 0;
            }
        }
        f.b - f.a
    }

    /// Symbol `c` and an LF-style rank in one descent: returns the symbol at
    /// 0-based `i` and the number of its occurrences in `[0, i)`.
    pub fn inverse_select0(&self, i: usize) -> (u64, usize) {
        debug_assert!(i < self.n);
        let mut f = Frame {
            ns: 0,
            ne: self.n,
            a: i,
            b: i + 1,
        };
        let mut v = 0;
        for l in 0..self.depth as usize {
            let bit = self.levels[l].get0(f.a);
            v = v << 1 | bit as u64;
            f = self.child(l, f, bit);
        }
        (v, f.a - f.ns)
    }

    /// 0-based offset of the occurrence of `c` with 0-based ordinal `k`.
    pub fn select0(&self, c: u64, k: usize) -> Option<usize> {
        let depth = self.depth as usize;
        let mut path = Vec::with_capacity(depth + 1);
        let mut f = Frame {
            ns: 0,
            ne: self.n,
            a: 0,
            b: self.n,
        };
        for l in 0..depth {
            path.push(f);
            let bit = c >> (depth - 1 - l) & 1 == 1;
            f = self.child(l, f, bit);
        }
        if k >= f.ne - f.ns {
            return None;
        }
        Some(self.climb(&path, c, f.ns, f.ns + k))
    }

    /// Maps a position in the leaf of `c` back to the root.
    fn climb(&self, path: &[Frame], c: u64, leaf_ns: usize, mut pos: usize) -> usize {
        let depth = self.depth as usize;
        let mut child_ns = leaf_ns;
        for l in (0..depth).rev() {
            let parent = path[l];
            let bv = &self.levels[l];
            let bit = c >> (depth - 1 - l) & 1 == 1;
            let off = pos - child_ns;
            pos = if bit {
                bv.select1_0(bv.rank1(parent.ns) + off)
            } else {
                bv.select0_0(bv.rank0(parent.ns) + off)
            };
            child_ns = parent.ns;
        }
        pos
    }

    /// 1-based access.
    pub fn access(&self, i: usize) -> Result<u64> {
        Error::check_index(i, 1, self.n)?;
        Ok(self.access0(i - 1))
    }

    /// Occurrences of `c` in positions `1..=i`.
    pub fn rank(&self, c: u64, i: usize) -> Result<usize> {
        Error::check_index(i, 0, self.n)?;
        if c >= self.sigma {
            return Err(Error::Domain(format!("symbol {c} outside alphabet of size {}", self.sigma)));
        }
        Ok(self.rank0(c, i))
    }

    /// 1-based position of the `k`-th occurrence of `c`.
    pub fn select(&self, c: u64, k: usize) -> Result<usize> {
        if c >= self.sigma || k == 0 {
            return Err(Error::NotFound(format!("occurrence {k} of symbol {c}")));
        }
        self.select0(c, k - 1)
            .map(|p| p + 1)
            .ok_or_else(|| Error::NotFound(format!("occurrence {k} of symbol {c}")))
    }

    /// Among positions `x1..=x2` (1-based), a position holding the largest
    /// value `≤ y2`, with that value.
    pub fn range_pred(&self, x1: usize, x2: usize, y2: u64) -> Result<Option<(usize, u64)>> {
        Error::check_range(x1, x2, self.n)?;
        Ok(self.range_pred0(x1 - 1, x2, y2).map(|(x, y)| (x + 1, y)))
    }

    /// Half-open 0-based version of [`WaveletTree::range_pred`]: returns the
    /// leftmost position in `[a, b)` of the answer value.
    pub fn range_pred0(&self, a: usize, b: usize, y2: u64) -> Option<(usize, u64)> {
        if a >= b {
            return None;
        }
        let depth = self.depth as usize;
        let top = if depth == 0 { 0 } else { (1u64 << depth) - 1 };
        let y2 = y2.min(top);
        let mut path: Vec<Frame> = Vec::with_capacity(depth);
        let mut f = Frame { ns: 0, ne: self.n, a, b };
        let bit_of = |v: u64, l: usize| v >> (depth - 1 - l) & 1 == 1;

        // Phase 1: follow y2's bits while the range stays non-empty.
        let mut failed_at = None;
        for l in 0..depth {
            path.push(f);
            let next = self.child(l, f, bit_of(y2, l));
            if next.is_empty() {
                failed_at = Some(l);
                break;
            }
            f = next;
        }
        let value = match failed_at {
            None => y2,
            Some(fail) => {
                // Deepest ancestor where y2 has a 1 and the 0-branch is non-empty.
                let mut pivot = None;
                for l in (0..=fail).rev() {
                    if bit_of(y2, l) {
                        let z = self.child(l, path[l], false);
                        if !z.is_empty() {
                            pivot = Some((l, z));
                            break;
                        }
                    }
                }
                let (pl, zf) = pivot?;
                path.truncate(pl + 1);
                let mut v = (y2 >> (depth - pl)) << 1;
                f = zf;
                // Phase 2: greedily take the 1-branch whenever it is non-empty.
                for l in pl + 1..depth {
                    path.push(f);
                    let one = self.child(l, f, true);
                    if !one.is_empty() {
                        v = v << 1 | 1;
                        f = one;
                    } else {
                        v <<= 1;
                        f = self.child(l, f, false);
                    }
                }
                v
            }
        };
        Some((self.climb(&path, value, f.ns, f.a), value))
    }
}

impl WaveletTree {
    /// Decomposes the values `[lo, hi]` of positions `[a, b)` (0-based) into
    /// canonical nodes. For each non-empty one, calls `visit(level, start,
    /// end)` with the node's slice in the global order of `level`; level
    /// `depth` is the leaf order.
    pub fn cover<F: FnMut(usize, usize, usize)>(&self, a: usize, b: usize, lo: u64, hi: u64, mut visit: F) {
        if a >= b || lo > hi {
            return;
        }
        let root = Frame { ns: 0, ne: self.n, a, b };
        let top = if self.depth == 0 { 0 } else { (1u64 << self.depth) - 1 };
        self.cover_rec(0, root, 0, top, lo, hi, &mut visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn cover_rec<F: FnMut(usize, usize, usize)>(
        &self,
        l: usize,
        f: Frame,
        vlo: u64,
        vhi: u64,
        lo: u64,
        hi: u64,
        visit: &mut F,
    ) {
        if f.is_empty() || vhi < lo || vlo > hi {
            return;
        }
        if lo <= vlo && vhi <= hi {
            visit(l, f.a, f.b);
            return;
        }
        let mid = vlo + (1u64 << (self.depth as usize - 1 - l));
        self.cover_rec(l + 1, self.child(l, f, false), vlo, mid - 1, lo, hi, visit);
        self.cover_rec(l + 1, self.child(l, f, true), mid, vhi, lo, hi, visit);
    }
}

impl SpaceUsage for WaveletTree {
    fn size_in_bits(&self) -> usize {
        self.levels.iter().map(|b| b.size_in_bits()).sum::<usize>() + 192
    }
}
