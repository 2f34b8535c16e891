//! One Elias–Fano set per symbol, holding the 1-based positions of that
//! symbol in a sequence.

use super::{low_mask, EliasFanoSeq};
use crate::succinct::tables::{route8, split8};
use crate::succinct::{PackedInts, RawBits};
use crate::{ceil_log2, Error, Result, SpaceUsage};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPredecessorSet {
    sigma: u64,
    n: usize,
    /// Symbols that occur, increasing.
    present: Vec<u64>,
    sets: Vec<EliasFanoSeq>,
}

impl CharPredecessorSet {
    /// Bucket count shared by every per-symbol set: the rounded universe
    /// divided by the rounded alphabet size.
    fn buckets(n: usize, sigma: u64) -> u64 {
        let log_u = ceil_log2(n.max(1));
        let log_s = ceil_log2(sigma.max(1) as usize);
        1u64 << log_u.saturating_sub(log_s)
    }

    /// Gathers the position lists in one scan, then encodes each.
    pub fn build_simple(seq: &[u64], sigma: u64) -> Result<Self> {
        check_symbols(seq, sigma)?;
        let n = seq.len();
        let v = Self::buckets(n, sigma);
        let mut counts = vec![0usize; sigma as usize];
        for &c in seq {
            counts[c as usize] += 1;
        }
        let mut lists: Vec<Vec<u64>> = counts.iter().map(|&k| Vec::with_capacity(k)).collect();
        for (i, &c) in seq.iter().enumerate() {
            lists[c as usize].push(i as u64 + 1);
        }
        let mut present = Vec::new();
        let mut sets = Vec::new();
        for (c, list) in lists.into_iter().enumerate() {
            if !list.is_empty() {
                present.push(c as u64);
                sets.push(EliasFanoSeq::build(&list, n as u64, v)?);
            }
        }
        Ok(Self {
            sigma,
            n,
            present,
            sets,
        })
    }

    /// Starts from the encoding of all positions `1..=n` and splits it
    /// `log2 σ` times, once per symbol bit from the most significant. Each
    /// split routes the tails with the 8-element split table and the unary
    /// high part one byte at a time with the routing table.
    pub fn build_bitparallel(seq: &[u64], sigma: u64) -> Result<Self> {
        if !sigma.is_power_of_two() {
            return Err(Error::Domain(format!("alphabet size {sigma} is not a power of two")));
        }
        check_symbols(seq, sigma)?;
        let n = seq.len();
        let bits = sigma.trailing_zeros();
        let (log_u, log_v) = EliasFanoSeq::geometry(n as u64, Self::buckets(n, sigma));
        let mut groups = vec![initial_group(seq, log_u, log_v)];
        for phase in 0..bits {
            groups = split_phase(groups, bits - 1 - phase);
        }
        let mut present = Vec::new();
        let mut sets = Vec::new();
        for g in groups {
            if g.y.is_empty() {
                continue;
            }
            present.push(g.label);
            sets.push(EliasFanoSeq::from_parts(n as u64, log_u, log_v, g.a, g.v));
        }
        Ok(Self {
            sigma,
            n,
            present,
            sets,
        })
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn present_symbols(&self) -> &[u64] {
        &self.present
    }

    /// Index of `c` among the present symbols.
    #[inline]
    pub fn index_of(&self, c: u64) -> Option<usize> {
        self.present.binary_search(&c).ok()
    }

    /// The set of the `idx`-th present symbol.
    #[inline]
    pub fn set_at(&self, idx: usize) -> &EliasFanoSeq {
        &self.sets[idx]
    }

    #[inline]
    pub fn set(&self, c: u64) -> Option<&EliasFanoSeq> {
        self.present.binary_search(&c).ok().map(|i| &self.sets[i])
    }

    /// Occurrences of `c` in positions `1..=q`.
    #[inline]
    pub fn rank(&self, c: u64, q: usize) -> usize {
        self.set(c).map_or(0, |e| e.rank(q as u64))
    }

    /// Position of the `k`-th occurrence of `c`.
    pub fn select(&self, c: u64, k: usize) -> Result<usize> {
        match self.set(c) {
            Some(e) => e.select(k).map(|p| p as usize),
            None => Err(Error::NotFound(format!("occurrence {k} of symbol {c}"))),
        }
    }

    /// Leftmost and rightmost occurrence of `c` within `[x1, x2]`.
    #[inline]
    pub fn range_occ(&self, c: u64, x1: usize, x2: usize) -> Option<(usize, usize)> {
        let e = self.set(c)?;
        let before = e.rank(x1 as u64 - 1);
        let upto = e.rank(x2 as u64);
        if upto == before {
            return None;
        }
        Some((
            e.select_unchecked(before + 1) as usize,
            e.select_unchecked(upto) as usize,
        ))
    }

    /// Byte encoding that depends only on the stored sets, used to compare
    /// the two builders.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&self.sigma.to_le_bytes());
        out.extend_from_slice(&(self.n as u64).to_le_bytes());
        for (c, e) in self.present.iter().zip(&self.sets) {
            out.extend_from_slice(&c.to_le_bytes());
            e.write_canonical(&mut out);
        }
        out
    }
}

impl SpaceUsage for CharPredecessorSet {
    fn size_in_bits(&self) -> usize {
        self.sets.iter().map(|s| s.size_in_bits()).sum::<usize>() + self.present.len() * 64 + 128
    }
}

fn check_symbols(seq: &[u64], sigma: u64) -> Result<()> {
    match seq.iter().find(|&&c| c >= sigma) {
        Some(c) => Err(Error::Domain(format!("symbol {c} outside alphabet of size {sigma}"))),
        None => Ok(()),
    }
}

/// Elias–Fano encoding (tails `a`, unary high part `v`) of the positions
/// whose symbols `y` share the prefix `label`.
#[derive(Debug, Clone)]
pub(crate) struct Group {
    pub(crate) label: u64,
    pub(crate) a: PackedInts,
    pub(crate) v: RawBits,
    pub(crate) y: Vec<u64>,
}

/// Encoding of every position `1..=n`, each tagged with its symbol.
pub(crate) fn initial_group(seq: &[u64], log_u: u32, log_v: u32) -> Group {
    let n = seq.len();
    let w = log_u - log_v;
    let mut a = PackedInts::with_len(w, n);
    let mut v = RawBits::zeros(n + (1usize << log_v));
    for i in 0..n {
        a.set(i, i as u64 & low_mask(w));
        v.set((i >> w) + i, true);
    }
    Group {
        label: 0,
        a,
        v,
        y: seq.to_vec(),
    }
}

/// Splits every group by bit `bit` of its symbols. Empty halves are kept so
/// the labels stay aligned; they hold no keys and cost no time later.
pub(crate) fn split_phase(groups: Vec<Group>, bit: u32) -> Vec<Group> {
    let mut out = Vec::with_capacity(groups.len() * 2);
    for g in groups {
        let (g0, g1) = split_group(&g, bit);
        out.push(g0);
        out.push(g1);
    }
    out
}

fn split_group(g: &Group, bit: u32) -> (Group, Group) {
    let n = g.y.len();
    let w = g.a.width();
    // Bit plane of the splitting bit, one bit per key.
    let mut plane = RawBits::with_capacity(n);
    for &y in &g.y {
        plane.push(y >> bit & 1 == 1);
    }

    // Tails and symbols: 8 keys per split-table lookup.
    let table = split8();
    let mut a0 = PackedInts::new(w);
    let mut a1 = PackedInts::new(w);
    let mut y0 = Vec::with_capacity(n);
    let mut y1 = Vec::with_capacity(n / 2);
    let mut i = 0;
    while i + 8 <= n {
        let e = &table[plane.read_bits(i, 8) as usize];
        for &j in &e.zeros[..e.t0 as usize] {
            a0.push(g.a.get(i + j as usize));
            y0.push(g.y[i + j as usize]);
        }
        for &j in &e.ones[..e.t1 as usize] {
            a1.push(g.a.get(i + j as usize));
            y1.push(g.y[i + j as usize]);
        }
        i += 8;
    }
    for k in i..n {
        if plane.get(k) {
            a1.push(g.a.get(k));
            y1.push(g.y[k]);
        } else {
            a0.push(g.a.get(k));
            y0.push(g.y[k]);
        }
    }

    // High part: bucket separators (zeros) go to both sides, each one goes to
    // the side named by the next unread plane bit.
    let route = route8();
    let mut v0 = RawBits::with_capacity(g.v.len());
    let mut v1 = RawBits::with_capacity(g.v.len());
    let mut key = 0usize;
    let mut pos = 0usize;
    while pos < g.v.len() {
        let take = (g.v.len() - pos).min(8) as u32;
        let byte = g.v.read_bits(pos, take) as usize;
        let ones = byte.count_ones() as usize;
        let ybits = plane.read_bits(key, ones as u32) as usize;
        let e = &route[byte << 8 | ybits];
        // A short final chunk reads as zeros past its end; drop those.
        let pad = 8 - take as usize;
        v0.push_bits(e.out0 as u64, e.len0 as u32 - pad as u32);
        v1.push_bits(e.out1 as u64, e.len1 as u32 - pad as u32);
        key += ones;
        pos += take as usize;
    }

    (
        Group {
            label: g.label << 1,
            a: a0,
            v: v0,
            y: y0,
        },
        Group {
            label: g.label << 1 | 1,
            a: a1,
            v: v1,
            y: y1,
        },
    )
}
