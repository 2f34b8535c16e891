//! Elias–Fano coding of increasing integer sequences, and per-symbol position
//! sets built on it.

mod cps;

pub use cps::CharPredecessorSet;

use crate::succinct::{BitVector, PackedInts, RawBits};
use crate::{ceil_log2, Error, Result, SpaceUsage};

/// Strictly increasing keys in `1..=u`. Keys are stored as `x - 1`, split into
/// a high part (bucket number, written in unary gaps into `high`) and a
/// `low_width`-bit tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliasFanoSeq {
    u: u64,
    log_u: u32,
    log_v: u32,
    low_width: u32,
    n_keys: usize,
    low: PackedInts,
    high: BitVector,
    samples: Samples,
}

/// Every `stride`-th key, with a directory on the top bits of the samples so
/// that finding the enclosing sample takes O(1) expected probes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Samples {
    stride: usize,
    keys: PackedInts,
    dir_shift: u32,
    dir: PackedInts,
}

impl EliasFanoSeq {
    /// `v` is the number of buckets; both `u` and `v` are rounded up to powers
    /// of two, and `v` is capped at the rounded universe.
    pub fn build(keys: &[u64], u: u64, v: u64) -> Result<Self> {
        let (log_u, log_v) = Self::geometry(u, v);
        let low_width = log_u - log_v;
        let mut low = PackedInts::new(low_width);
        let mut high = RawBits::zeros(keys.len() + (1usize << log_v));
        let mut prev = 0u64;
        for (k, &x) in keys.iter().enumerate() {
            if x == 0 || x > u {
                return Err(Error::Domain(format!("key {x} outside 1..={u}")));
            }
            if k > 0 && x <= prev {
                return Err(Error::Domain(format!("keys not strictly increasing at {x}")));
            }
            prev = x;
            let xc = x - 1;
            low.push(xc & low_mask(low_width));
            high.set((xc >> low_width) as usize + k, true);
        }
        Ok(Self::from_parts(u, log_u, log_v, low, high))
    }

    /// `(⌈log2 u⌉, log2 of rounded v)` with `v` capped at the rounded universe.
    pub(crate) fn geometry(u: u64, v: u64) -> (u32, u32) {
        let log_u = ceil_log2(u.max(1) as usize);
        let log_v = ceil_log2(v.max(1) as usize).min(log_u);
        (log_u, log_v)
    }

    pub(crate) fn from_parts(u: u64, log_u: u32, log_v: u32, low: PackedInts, high: RawBits) -> Self {
        let n_keys = low.len();
        let high = BitVector::from(high);
        let mut ef = Self {
            u,
            log_u,
            log_v,
            low_width: log_u - log_v,
            n_keys,
            low,
            high,
            samples: Samples::default(),
        };
        ef.samples = ef.build_samples();
        ef
    }

    fn build_samples(&self) -> Samples {
        let stride = ((self.log_u as usize).pow(2)).max(1);
        let count = self.n_keys.div_ceil(stride);
        let mut keys = PackedInts::new(self.log_u.max(1));
        for j in 0..count {
            keys.push(self.select0(j * stride));
        }
        let log_d = ceil_log2(count.max(1)).min(self.log_u);
        let dir_shift = self.log_u - log_d;
        let mut dir = PackedInts::new(crate::bits_for(count as u64));
        let mut j = 0;
        for h in 0..=(1u64 << log_d) {
            while j < count && keys.get(j) >> dir_shift < h {
                j += 1;
            }
            dir.push(j as u64);
        }
        Samples {
            stride,
            keys,
            dir_shift,
            dir,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n_keys
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n_keys == 0
    }

    pub fn universe(&self) -> u64 {
        self.u
    }

    pub fn buckets(&self) -> u64 {
        1 << self.log_v
    }

    pub fn low_width(&self) -> u32 {
        self.low_width
    }

    /// Stored value (`key - 1`) of the 0-based `k`-th key.
    #[inline]
    fn select0(&self, k: usize) -> u64 {
        let bucket = (self.high.select1_0(k) - k) as u64;
        bucket << self.low_width | self.low.get(k)
    }

    /// `k`-th smallest key (1-based). Unchecked.
    #[inline]
    pub fn select_unchecked(&self, k: usize) -> u64 {
        self.select0(k - 1) + 1
    }

    pub fn select(&self, k: usize) -> Result<u64> {
        if k == 0 || k > self.n_keys {
            return Err(Error::NotFound(format!("key {k} of {}", self.n_keys)));
        }
        Ok(self.select_unchecked(k))
    }

    /// Number of keys `≤ q`.
    pub fn rank(&self, q: u64) -> usize {
        if q == 0 || self.n_keys == 0 {
            return 0;
        }
        let qc = q - 1;
        if qc >> self.log_u != 0 {
            return self.n_keys;
        }
        let s = &self.samples;
        let h = (qc >> s.dir_shift) as usize;
        // Samples with top bits below h are all ≤ qc; search the rest of the
        // directory bucket for the last sample ≤ qc.
        let (mut lo, mut hi) = (s.dir.get(h) as usize, s.dir.get(h + 1) as usize);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if s.keys.get(mid) <= qc {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if lo == 0 {
            return 0;
        }
        // Keys at indices [start, end) straddle qc.
        let start = (lo - 1) * s.stride;
        let (mut a, mut b) = (start + 1, (lo * s.stride).min(self.n_keys));
        while a < b {
            let mid = (a + b) / 2;
            if self.select0(mid) <= qc {
                a = mid + 1;
            } else {
                b = mid;
            }
        }
        a
    }

    /// Largest key `≤ q`.
    pub fn predecessor(&self, q: u64) -> Option<u64> {
        match self.rank(q) {
            0 => None,
            r => Some(self.select_unchecked(r)),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.n_keys).map(move |k| self.select0(k) + 1)
    }

    /// Raw encoding: universe, geometry and the two arrays, little-endian.
    pub(crate) fn write_canonical(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.u.to_le_bytes());
        out.extend_from_slice(&self.log_u.to_le_bytes());
        out.extend_from_slice(&self.log_v.to_le_bytes());
        out.extend_from_slice(&(self.n_keys as u64).to_le_bytes());
        for w in self.low.words() {
            out.extend_from_slice(&w.to_le_bytes());
        }
        out.extend_from_slice(&(self.high.len() as u64).to_le_bytes());
        for w in self.high.words() {
            out.extend_from_slice(&w.to_le_bytes());
        }
    }
}

#[inline]
fn low_mask(w: u32) -> u64 {
    if w == 64 {
        u64::MAX
    } else {
        (1u64 << w) - 1
    }
}

impl SpaceUsage for EliasFanoSeq {
    fn size_in_bits(&self) -> usize {
        self.low.size_in_bits()
            + self.high.size_in_bits()
            + self.samples.keys.size_in_bits()
            + self.samples.dir.size_in_bits()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let ef = EliasFanoSeq::build(&[2, 3, 7], 8, 4).unwrap();
        assert_eq!(ef.select(2), Ok(3));
        assert_eq!(ef.select(3), Ok(7));
        assert_eq!(ef.rank(5), 2);
        assert_eq!(ef.rank(1), 0);
        assert!(ef.select(4).is_err());

        let empty = EliasFanoSeq::build(&[], 8, 4).unwrap();
        for q in 0..=8 {
            assert_eq!(empty.rank(q), 0);
        }

        let full: Vec<u64> = (1..=8).collect();
        let ef = EliasFanoSeq::build(&full, 8, 4).unwrap();
        for k in 1..=8 {
            assert_eq!(ef.select(k), Ok(k as u64));
        }

        assert!(EliasFanoSeq::build(&[3, 3], 8, 4).is_err());
        assert!(EliasFanoSeq::build(&[9], 8, 4).is_err());
        assert!(EliasFanoSeq::build(&[0], 8, 4).is_err());
    }

    #[test]
    fn non_power_of_two_universe() {
        let keys: Vec<u64> = (1..=1000).filter(|x| x % 7 == 3).collect();
        let ef = EliasFanoSeq::build(&keys, 1000, 37).unwrap();
        for q in 0..=1001 {
            assert_eq!(ef.rank(q), keys.iter().filter(|&&k| k <= q).count());
        }
    }
}
