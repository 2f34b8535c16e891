//! Long factors: every occurrence of a phrase of length `≥ r` crosses a
//! sample point `jr + 1`, so the rightmost source is the best of `r`
//! alignments, each a five-sided 3D range-maximum query.

use crate::succinct::RmqIndex;
use crate::text_index::TextIndex;
use crate::wavelet::WaveletTree;
use crate::{bits_for, Error, Result, SpaceUsage};

/// Point counts at or below which a stratum is scanned instead of indexed.
const SMALL: usize = 32;

/// Reverses strings of up to `g` packed `k`-bit symbols with one lookup.
#[derive(Debug, Clone)]
pub struct ReverseTable {
    k: u32,
    g: u32,
    table: Vec<u32>,
}

impl ReverseTable {
    pub fn new(k: u32) -> Self {
        let g = (16 / k).max(1);
        let table = if g == 1 {
            Vec::new()
        } else {
            let mask = (1u32 << k) - 1;
            (0..1u32 << (g * k))
                .map(|v| (0..g).fold(0, |acc, s| acc | ((v >> (s * k)) & mask) << ((g - 1 - s) * k)))
                .collect()
        };
        Self { k, g, table }
    }

    pub fn symbols_per_lookup(&self) -> u32 {
        self.g
    }

    /// Reverses the `count ≤ g` symbols packed most-significant-first in `v`.
    #[inline]
    pub fn reverse(&self, v: u64, count: u32) -> u64 {
        if self.g == 1 || count <= 1 {
            return v;
        }
        let shifted = v << ((self.g - count) * self.k);
        self.table[shifted as usize] as u64 & low_mask(count * self.k)
    }

    /// `reverse(codes)` packed most-significant-first into `words` words.
    pub fn reversed_packed(&self, codes: &[u32], words: usize) -> Vec<u64> {
        let mut w = MsbWriter::new(words);
        let g = self.g as usize;
        let mut end = codes.len();
        let last = codes.len() % g;
        let mut size = if last == 0 { g } else { last };
        while end > 0 {
            let chunk = &codes[end - size..end];
            let v = chunk.iter().fold(0u64, |acc, &c| acc << self.k | c as u64);
            w.push(self.reverse(v, size as u32), size as u32 * self.k);
            end -= size;
            size = g;
        }
        w.words
    }
}

#[inline]
fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

struct MsbWriter {
    words: Vec<u64>,
    pos: usize,
}

impl MsbWriter {
    fn new(words: usize) -> Self {
        Self {
            words: vec![0; words],
            pos: 0,
        }
    }

    fn push(&mut self, value: u64, nbits: u32) {
        if nbits == 0 {
            return;
        }
        let value = value & low_mask(nbits);
        let (w, off) = (self.pos / 64, (self.pos % 64) as u32);
        let avail = 64 - off;
        if nbits <= avail {
            self.words[w] |= value << (avail - nbits);
        } else {
            let spill = nbits - avail;
            self.words[w] |= value >> spill;
            self.words[w + 1] |= value << (64 - spill);
        }
        self.pos += nbits as usize;
    }
}

fn read_msb(words: &[u64], pos: usize, nbits: u32) -> u64 {
    let (w, off) = (pos / 64, (pos % 64) as u32);
    let avail = 64 - off;
    if nbits <= avail {
        (words[w] >> (avail - nbits)) & low_mask(nbits)
    } else {
        let spill = nbits - avail;
        ((words[w] & low_mask(avail)) << spill) | words[w + 1] >> (64 - spill)
    }
}

/// Max-`z` over points in an x-range and y-range: a wavelet tree over y in
/// x order with a range-max over z at every level.
#[derive(Debug, Clone)]
struct RangeMax2D {
    xs: Vec<u32>,
    ys: Vec<u32>,
    wt: WaveletTree,
    zmax: Vec<RmqIndex>,
}

impl RangeMax2D {
    fn build(points: &[(u32, u32, u32)]) -> Self {
        let mut by_x = points.to_vec();
        by_x.sort_unstable_by_key(|p| p.0);
        let mut ys: Vec<u32> = points.iter().map(|p| p.1).collect();
        ys.sort_unstable();
        let yr: Vec<u64> = by_x.iter().map(|p| ys.partition_point(|&y| y < p.1) as u64).collect();
        let wt = WaveletTree::build(&yr, by_x.len() as u64).expect("ranks are below the point count");
        let depth = wt.depth();
        let mut order: Vec<usize> = (0..by_x.len()).collect();
        let zmax = (0..=depth)
            .map(|l| {
                order.sort_by_key(|&p| yr[p] >> (depth - l));
                let zs: Vec<u64> = order.iter().map(|&p| by_x[p].2 as u64).collect();
                RmqIndex::max(&zs)
            })
            .collect();
        Self {
            xs: by_x.iter().map(|p| p.0).collect(),
            ys,
            wt,
            zmax,
        }
    }

    fn query(&self, x1: u32, x2: u32, y1: u32, y2: u32) -> Option<u32> {
        let a = self.xs.partition_point(|&x| x < x1);
        let b = self.xs.partition_point(|&x| x <= x2);
        let lo = self.ys.partition_point(|&y| y < y1);
        let hi = self.ys.partition_point(|&y| y <= y2);
        if a >= b || lo >= hi {
            return None;
        }
        let mut best = None;
        self.wt.cover(a, b, lo as u64, hi as u64 - 1, |l, s, e| {
            let r = &self.zmax[l];
            let z = r.value0(r.query0(s, e - 1)) as u32;
            best = best.max(Some(z));
        });
        best
    }

    fn size_in_bits(&self) -> usize {
        32 * (self.xs.len() + self.ys.len()) + self.wt.size_in_bits() + self.zmax.size_in_bits()
    }
}

/// Binary tree over `z`; each node indexes the points of its z-range.
#[derive(Debug, Clone)]
struct Stratum {
    /// Points of this node have `z` in `[lo, hi]`.
    lo: u32,
    hi: u32,
    body: StratumBody,
}

#[derive(Debug, Clone)]
enum StratumBody {
    Small(Vec<(u32, u32, u32)>),
    Split {
        grid: RangeMax2D,
        left: Box<Stratum>,
        right: Box<Stratum>,
    },
}

impl Stratum {
    /// `points` sorted by z, with distinct z values.
    fn build(points: &[(u32, u32, u32)]) -> Self {
        let (lo, hi) = (points[0].2, points[points.len() - 1].2);
        let body = if points.len() <= SMALL {
            StratumBody::Small(points.to_vec())
        } else {
            let mid = points.len() / 2;
            StratumBody::Split {
                grid: RangeMax2D::build(points),
                left: Box::new(Self::build(&points[..mid])),
                right: Box::new(Self::build(&points[mid..])),
            }
        };
        Self { lo, hi, body }
    }

    fn query(&self, x: (u32, u32), y: (u32, u32), z: u32) -> Option<u32> {
        if z < self.lo {
            return None;
        }
        match &self.body {
            StratumBody::Small(pts) => pts
                .iter()
                .filter(|p| x.0 <= p.0 && p.0 <= x.1 && y.0 <= p.1 && p.1 <= y.1 && p.2 <= z)
                .map(|p| p.2)
                .max(),
            StratumBody::Split { grid, left, right } => {
                if self.hi <= z {
                    return grid.query(x.0, x.1, y.0, y.1);
                }
                right.query(x, y, z).or_else(|| left.query(x, y, z))
            }
        }
    }

    fn size_in_bits(&self) -> usize {
        64 + match &self.body {
            StratumBody::Small(p) => 96 * p.len(),
            StratumBody::Split { grid, left, right } => grid.size_in_bits() + left.size_in_bits() + right.size_in_bits(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LongFactorIndex {
    r: usize,
    ell: usize,
    /// Bits per symbol code.
    k: u32,
    key_words: usize,
    lt: ReverseTable,
    /// Sorted reversed blocks, `key_words` words each.
    ts_keys: Vec<u64>,
    /// Block number of each sorted entry.
    ts_block: Vec<u32>,
    strata: Option<Stratum>,
}

impl LongFactorIndex {
    /// `codes` is the text including its sentinel; `isa[t - 1]` = SA row of
    /// suffix `t`.
    pub fn build(codes: &[u32], sigma: usize, isa: &[u32], r: usize, ell: usize) -> Result<Self> {
        if r == 0 || r > ell {
            return Err(Error::Config(format!("need 1 ≤ r ≤ ℓ, got r = {r}, ℓ = {ell}")));
        }
        let m = codes.len() - 1;
        let k = bits_for(sigma.saturating_sub(1) as u64);
        let key_words = (r * k as usize).div_ceil(64);
        let lt = ReverseTable::new(k);
        let nblocks = m / r;
        let mut keyed: Vec<(Vec<u64>, u32)> = (1..=nblocks)
            .map(|j| (lt.reversed_packed(&codes[(j - 1) * r..j * r], key_words), j as u32))
            .collect();
        keyed.sort_unstable();
        let mut rank_of = vec![0u32; nblocks + 1];
        for (x, (_, j)) in keyed.iter().enumerate() {
            rank_of[*j as usize] = x as u32 + 1;
        }
        let points: Vec<(u32, u32, u32)> = (1..=nblocks).map(|j| (rank_of[j], isa[j * r], j as u32)).collect();
        let strata = (!points.is_empty()).then(|| Stratum::build(&points));
        let ts_block = keyed.iter().map(|e| e.1).collect();
        let ts_keys = keyed.into_iter().flat_map(|e| e.0).collect();
        Ok(Self {
            r,
            ell,
            k,
            key_words,
            lt,
            ts_keys,
            ts_block,
            strata,
        })
    }

    pub fn sample_stride(&self) -> usize {
        self.r
    }

    pub fn threshold(&self) -> usize {
        self.ell
    }

    /// Number of entries of the reversed-block table.
    pub fn table_len(&self) -> usize {
        self.ts_block.len()
    }

    /// Block numbers in sorted order of their reversals.
    pub fn table_blocks(&self) -> &[u32] {
        &self.ts_block
    }

    fn key(&self, x: usize) -> &[u64] {
        &self.ts_keys[x * self.key_words..(x + 1) * self.key_words]
    }

    /// 1-based range of table entries whose reversed block starts with
    /// `pattern` (given most-significant-first, `len` symbols).
    pub fn table_range(&self, pattern: &[u64], len: usize) -> Option<(usize, usize)> {
        let bits = len * self.k as usize;
        let total = self.key_words * 64;
        let pad = |ones: bool| {
            let mut w = MsbWriter::new(self.key_words);
            let mut p = 0;
            while p < bits {
                let nb = (bits - p).min(64) as u32;
                w.push(read_msb(pattern, p, nb), nb);
                p += nb as usize;
            }
            if ones {
                while p < total {
                    let nb = (total - p).min(64) as u32;
                    w.push(u64::MAX, nb);
                    p += nb as usize;
                }
            }
            w.words
        };
        let (lo_key, hi_key) = (pad(false), pad(true));
        let n = self.table_len();
        let lower = partition(n, |x| self.key(x) < lo_key.as_slice());
        let upper = partition(n, |x| self.key(x) <= hi_key.as_slice());
        (lower < upper).then_some((lower + 1, upper))
    }

    /// Rightmost source of the phrase at `i` of length `len`.
    pub fn query(&self, ti: &TextIndex, codes: &[u32], i: usize, len: usize) -> Result<usize> {
        if len < self.ell {
            return Err(Error::Domain(format!("phrase length {len} below the long threshold {}", self.ell)));
        }
        let r = self.r;
        let p = &codes[i - 1..i - 1 + len];
        let rev = self.lt.reversed_packed(&p[..r], self.key_words);
        // y[o] = SA interval of p[o+1..len].
        let mut y = vec![(0, 0); r + 1];
        let mut cur = (1, ti.len());
        for &c in p[r..].iter().rev() {
            cur = ti.backward_search_step(cur.0, cur.1, c).expect("substring of the text");
        }
        y[r] = cur;
        for o in (1..r).rev() {
            cur = ti.backward_search_step(cur.0, cur.1, p[o]).expect("substring of the text");
            y[o] = cur;
        }
        let strata = self.strata.as_ref();
        let mut best = None;
        for o in 1..=r {
            let zmax = (i + o - 2) / r;
            if zmax == 0 {
                continue;
            }
            // reverse(p[1..o]) is the last o symbols of reverse(p[1..r]).
            let start = (r - o) * self.k as usize;
            let mut w = MsbWriter::new(self.key_words);
            let mut q = 0;
            let bits = o * self.k as usize;
            while q < bits {
                let nb = (bits - q).min(64) as u32;
                w.push(read_msb(&rev, start + q, nb), nb);
                q += nb as usize;
            }
            let Some(x) = self.table_range(&w.words, o) else {
                continue;
            };
            let hit = strata.and_then(|s| {
                s.query(
                    (x.0 as u32, x.1 as u32),
                    (y[o].0 as u32, y[o].1 as u32),
                    zmax.min(u32::MAX as usize) as u32,
                )
            });
            if let Some(z) = hit {
                best = best.max(Some(z as usize * r + 1 - o));
            }
        }
        best.ok_or_else(|| Error::NotFound(format!("no earlier occurrence of the phrase at {i}")))
    }
}

fn partition(n: usize, pred: impl Fn(usize) -> bool) -> usize {
    let (mut lo, mut hi) = (0, n);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

impl SpaceUsage for LongFactorIndex {
    fn size_in_bits(&self) -> usize {
        64 * self.ts_keys.len()
            + 32 * self.ts_block.len()
            + 32 * self.lt.table.len()
            + self.strata.as_ref().map_or(0, Stratum::size_in_bits)
            + 256
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reverse_table() {
        let lt = ReverseTable::new(2);
        assert_eq!(lt.symbols_per_lookup(), 8);
        assert_eq!(lt.reverse(0b01_10_11, 3), 0b11_10_01);
        let codes = [1, 2, 3, 1, 2, 3, 3, 2, 1, 1];
        let packed = lt.reversed_packed(&codes, 1);
        let expect = codes.iter().rev().fold(0u64, |a, &c| a << 2 | c as u64) << (64 - 20);
        assert_eq!(packed, vec![expect]);
        let wide = ReverseTable::new(9);
        assert_eq!(wide.reversed_packed(&[256, 1], 1)[0] >> 46, 1 << 9 | 256);
    }

    #[test]
    fn range_max_2d_against_scan() {
        let pts: Vec<(u32, u32, u32)> = (1..=200u32).map(|z| ((z * 37) % 211, (z * 91) % 223, z)).collect();
        let grid = RangeMax2D::build(&pts);
        let strata = Stratum::build(&pts);
        for (x1, x2, y1, y2, z) in [(0, 300, 0, 300, 200), (10, 90, 40, 180, 150), (5, 5, 0, 300, 200), (50, 120, 0, 60, 37)] {
            let expect = |zm: u32| {
                pts.iter()
                    .filter(|p| x1 <= p.0 && p.0 <= x2 && y1 <= p.1 && p.1 <= y2 && p.2 <= zm)
                    .map(|p| p.2)
                    .max()
            };
            assert_eq!(grid.query(x1, x2, y1, y2), expect(u32::MAX));
            assert_eq!(strata.query((x1, x2), (y1, y2), z), expect(z));
        }
    }
}
