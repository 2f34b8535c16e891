//! Plain (unindexed) bit storage.

use super::tables::first_one_16;
use crate::SpaceUsage;

/// Growable, mutable bit array. Bit `i` (0-based) lives in word `i / 64` at
/// offset `i % 64`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawBits {
    words: Vec<u64>,
    len: usize,
}

impl RawBits {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            words: Vec::with_capacity(bits.div_ceil(64)),
            len: 0,
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut out = Self::with_capacity(bits.len());
        for &b in bits {
            out.push(b);
        }
        out
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
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let w = &mut self.words[i >> 6];
        if value {
            *w |= 1 << (i & 63);
        } else {
            *w &= !(1 << (i & 63));
        }
    }

    #[inline]
    pub fn push(&mut self, b: bool) {
        if self.len & 63 == 0 {
            self.words.push(0);
        }
        if b {
            *self.words.last_mut().unwrap() |= 1 << (self.len & 63);
        }
        self.len += 1;
    }

    /// Appends the low `n` bits of `bits` (n ≤ 64), least significant first.
    #[inline]
    pub fn push_bits(&mut self, bits: u64, n: u32) {
        if n == 0 {
            return;
        }
        let bits = if n == 64 { bits } else { bits & ((1 << n) - 1) };
        let off = (self.len & 63) as u32;
        if off == 0 {
            self.words.push(bits);
        } else {
            *self.words.last_mut().unwrap() |= bits << off;
            if off + n > 64 {
                self.words.push(bits >> (64 - off));
            }
        }
        self.len += n as usize;
    }

    /// Reads `n ≤ 64` bits starting at bit `i`.
    #[inline]
    pub fn read_bits(&self, i: usize, n: u32) -> u64 {
        read_bits(&self.words, i, n)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn into_words(self) -> (Vec<u64>, usize) {
        (self.words, self.len)
    }

    pub fn from_words(words: Vec<u64>, len: usize) -> Self {
        assert!(words.len() == len.div_ceil(64));
        Self { words, len }
    }

    /// Some set bit in the 0-based half-open range `[start, end)`.
    #[inline]
    pub fn find_one(&self, start: usize, end: usize) -> Option<usize> {
        debug_assert!(end <= self.len);
        find_one_in_words(&self.words, start, end)
    }
}

impl SpaceUsage for RawBits {
    fn size_in_bits(&self) -> usize {
        self.words.len() * 64
    }
}

#[inline]
pub(crate) fn read_bits(words: &[u64], i: usize, n: u32) -> u64 {
    if n == 0 {
        return 0;
    }
    let w = i >> 6;
    let off = (i & 63) as u32;
    let mut v = words[w] >> off;
    if off + n > 64 {
        v |= words[w + 1] << (64 - off);
    }
    if n == 64 {
        v
    } else {
        v & ((1 << n) - 1)
    }
}

/// Finds a set bit in `[start, end)` by masking whole words and resolving the
/// first non-zero 16-bit lane with a lookup table.
#[inline]
pub(crate) fn find_one_in_words(words: &[u64], start: usize, end: usize) -> Option<usize> {
    if start >= end {
        return None;
    }
    let table = first_one_16();
    let (first, last) = (start >> 6, (end - 1) >> 6);
    for w in first..=last {
        let mut word = words[w];
        if w == first {
            word &= !0u64 << (start & 63);
        }
        if w == last {
            let top = ((end - 1) & 63) as u32;
            if top < 63 {
                word &= (1u64 << (top + 1)) - 1;
            }
        }
        if word != 0 {
            for lane in 0..4 {
                let bits = (word >> (lane * 16)) as u16;
                if bits != 0 {
                    return Some(w * 64 + lane * 16 + table[bits as usize] as usize);
                }
            }
        }
    }
    None
}
