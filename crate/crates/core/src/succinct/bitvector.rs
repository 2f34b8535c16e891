//! Immutable bitvector with constant-time rank and sampled select.
//!
//! Layout: a 32-bit cumulative popcount every 512 bits (relative to a 2^32-bit
//! superblock), plus the block index of every 4096-th one and zero to seed
//! select. Index overhead is about 7% of the raw bits.

use super::raw::{find_one_in_words, RawBits};
use super::tables::select_in_byte;
use crate::{Error, Result, SpaceUsage};

const BLOCK_BITS: usize = 512;
const WORDS_PER_BLOCK: usize = BLOCK_BITS / 64;
const BLOCKS_PER_SUPER: usize = 1 << 23;
const SELECT_STRIDE: usize = 4096;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
    ones: usize,
    /// Ones before each block, relative to its superblock. One extra entry.
    blocks: Vec<u32>,
    /// Ones before superblock s+1 (absolute), for s ≥ 0.
    supers: Vec<u64>,
    /// Block holding the (j+1)·STRIDE-th one (0-based ordinal).
    sel1: Vec<u32>,
    sel0: Vec<u32>,
}

impl BitVector {
    pub fn from_bools(bits: &[bool]) -> Self {
        RawBits::from_bools(bits).into()
    }

    pub fn from_words(words: Vec<u64>, len: usize) -> Self {
        let mut words = words;
        words.truncate(len.div_ceil(64));
        words.resize(len.div_ceil(64), 0);
        if len & 63 != 0 {
            *words.last_mut().unwrap() &= (1u64 << (len & 63)) - 1;
        }
        let nblocks = len / BLOCK_BITS + 1;
        let mut blocks = Vec::with_capacity(nblocks);
        let mut supers = Vec::new();
        let mut sel1 = Vec::new();
        let mut sel0 = Vec::new();
        let mut total = 0usize;
        let mut super_base = 0usize;
        for b in 0..nblocks {
            if b > 0 && b % BLOCKS_PER_SUPER == 0 {
                supers.push(total as u64);
                super_base = total;
            }
            blocks.push((total - super_base) as u32);
            let zeros_before = b * BLOCK_BITS - total;
            let lo = b * WORDS_PER_BLOCK;
            let hi = ((b + 1) * WORDS_PER_BLOCK).min(words.len());
            let block_ones: usize = if lo < hi {
                words[lo..hi].iter().map(|w| w.count_ones() as usize).sum()
            } else {
                0
            };
            let block_len = (len.saturating_sub(b * BLOCK_BITS)).min(BLOCK_BITS);
            let block_zeros = block_len - block_ones;
            // samples whose ordinal falls inside this block
            while (sel1.len() + 1) * SELECT_STRIDE < total + block_ones {
                sel1.push(b as u32);
            }
            while (sel0.len() + 1) * SELECT_STRIDE < zeros_before + block_zeros {
                sel0.push(b as u32);
            }
            total += block_ones;
        }
        Self {
            words,
            len,
            ones: total,
            blocks,
            supers,
            sel1,
            sel0,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.ones
    }

    #[inline]
    pub fn count_zeros(&self) -> usize {
        self.len - self.ones
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Bit at 0-based offset `i`.
    #[inline]
    pub fn get0(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    /// Bit at 1-based position `p`.
    pub fn access(&self, p: usize) -> Result<bool> {
        Error::check_index(p, 1, self.len)?;
        Ok(self.get0(p - 1))
    }

    #[inline]
    fn block_rank(&self, b: usize) -> usize {
        let s = b / BLOCKS_PER_SUPER;
        let base = if s == 0 { 0 } else { self.supers[s - 1] as usize };
        base + self.blocks[b] as usize
    }

    /// Number of ones among the first `i` bits (`0 ≤ i ≤ len`).
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        let b = i / BLOCK_BITS;
        let mut r = self.block_rank(b);
        let w_end = i >> 6;
        for w in b * WORDS_PER_BLOCK..w_end {
            r += self.words[w].count_ones() as usize;
        }
        let off = i & 63;
        if off != 0 {
            r += (self.words[w_end] & ((1u64 << off) - 1)).count_ones() as usize;
        }
        r
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    /// 1-based rank: occurrences of `bit` in positions `1..=i`.
    pub fn rank(&self, bit: bool, i: usize) -> Result<usize> {
        Error::check_index(i, 0, self.len)?;
        Ok(if bit { self.rank1(i) } else { self.rank0(i) })
    }

    /// 1-based select: position of the `k`-th occurrence of `bit`.
    pub fn select(&self, bit: bool, k: usize) -> Result<usize> {
        let count = if bit { self.ones } else { self.count_zeros() };
        if k == 0 || k > count {
            return Err(Error::NotFound(format!(
                "occurrence {k} of bit {} (have {count})",
                bit as u8
            )));
        }
        Ok(if bit { self.select1(k) } else { self.select0(k) })
    }

    /// 1-based position of the `k`-th one (`1 ≤ k ≤ ones`).
    #[inline]
    pub fn select1(&self, k: usize) -> usize {
        self.select1_0(k - 1) + 1
    }

    /// 1-based position of the `k`-th zero.
    #[inline]
    pub fn select0(&self, k: usize) -> usize {
        self.select0_0(k - 1) + 1
    }

    /// 0-based offset of the one with 0-based ordinal `k`.
    pub fn select1_0(&self, k: usize) -> usize {
        debug_assert!(k < self.ones);
        let j = k / SELECT_STRIDE;
        let lo = if j == 0 { 0 } else { self.sel1[j - 1] as usize };
        let hi = if j < self.sel1.len() {
            self.sel1[j] as usize + 1
        } else {
            self.blocks.len()
        };
        let b = last_block_at_most(lo, hi, k, |b| self.block_rank(b));
        let mut rem = k - self.block_rank(b);
        let mut w = b * WORDS_PER_BLOCK;
        loop {
            let c = self.words[w].count_ones() as usize;
            if rem < c {
                return w * 64 + select_in_word(self.words[w], rem);
            }
            rem -= c;
            w += 1;
        }
    }

    /// 0-based offset of the zero with 0-based ordinal `k`.
    pub fn select0_0(&self, k: usize) -> usize {
        debug_assert!(k < self.count_zeros());
        let j = k / SELECT_STRIDE;
        let lo = if j == 0 { 0 } else { self.sel0[j - 1] as usize };
        let hi = if j < self.sel0.len() {
            self.sel0[j] as usize + 1
        } else {
            self.blocks.len()
        };
        let b = last_block_at_most(lo, hi, k, |b| b * BLOCK_BITS - self.block_rank(b));
        let mut rem = k - (b * BLOCK_BITS - self.block_rank(b));
        let mut w = b * WORDS_PER_BLOCK;
        loop {
            let inv = !self.words[w];
            let c = inv.count_ones() as usize;
            if rem < c {
                return w * 64 + select_in_word(inv, rem);
            }
            rem -= c;
            w += 1;
        }
    }

    /// Some set position in the 1-based range `[s, e]`; `s = e + 1` is the
    /// empty range.
    pub fn find_one_in_range(&self, s: usize, e: usize) -> Option<usize> {
        if s == 0 || s > e || e > self.len {
            return None;
        }
        find_one_in_words(&self.words, s - 1, e).map(|p| p + 1)
    }

    /// Bits spent on the rank/select index (excluding the raw bits).
    pub fn index_bits(&self) -> usize {
        self.blocks.len() * 32 + self.supers.len() * 64 + (self.sel1.len() + self.sel0.len()) * 32
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get0(i))
    }
}

impl From<RawBits> for BitVector {
    fn from(raw: RawBits) -> Self {
        let (words, len) = raw.into_words();
        BitVector::from_words(words, len)
    }
}

impl SpaceUsage for BitVector {
    fn size_in_bits(&self) -> usize {
        self.words.len() * 64 + self.index_bits()
    }
}

/// Largest block `b` in `[lo, hi)` with `cum(b) ≤ k`.
#[inline]
fn last_block_at_most(mut lo: usize, mut hi: usize, k: usize, cum: impl Fn(usize) -> usize) -> usize {
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if cum(mid) <= k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Offset of the set bit with 0-based ordinal `k` in `word`.
#[inline]
pub(crate) fn select_in_word(word: u64, mut k: usize) -> usize {
    let table = select_in_byte();
    for byte in 0..8 {
        let b = (word >> (byte * 8)) as u8;
        let c = b.count_ones() as usize;
        if k < c {
            return byte * 8 + table[b as usize][k] as usize;
        }
        k -= c;
    }
    unreachable!("select_in_word: ordinal beyond popcount")
}
