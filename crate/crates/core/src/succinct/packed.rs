//! Fixed-width packed integer arrays.

use super::raw::read_bits;
use crate::SpaceUsage;

/// `len` unsigned integers of `width` bits each, stored back to back.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PackedInts {
    words: Vec<u64>,
    width: u32,
    len: usize,
}

impl PackedInts {
    pub fn new(width: u32) -> Self {
        assert!(width <= 64);
        Self {
            words: Vec::new(),
            width,
            len: 0,
        }
    }

    pub fn with_len(width: u32, len: usize) -> Self {
        assert!(width <= 64);
        Self {
            words: vec![0; (len * width as usize).div_ceil(64)],
            width,
            len,
        }
    }

    pub fn from_slice(values: &[u64], width: u32) -> Self {
        let mut p = Self::with_len(width, values.len());
        for (i, &v) in values.iter().enumerate() {
            p.set(i, v);
        }
        p
    }

    /// Packs with the narrowest width that holds the maximum.
    pub fn from_slice_auto(values: &[u64]) -> Self {
        let max = values.iter().copied().max().unwrap_or(0);
        Self::from_slice(values, crate::bits_for(max))
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
    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i < self.len, "index {i} >= len {}", self.len);
        read_bits(&self.words, i * self.width as usize, self.width)
    }

    /// Reads `n` consecutive elements starting at `i` as one integer
    /// (`n * width ≤ 64`), element `i` in the low bits.
    #[inline]
    pub fn get_run(&self, i: usize, n: usize) -> u64 {
        debug_assert!(i + n <= self.len);
        read_bits(&self.words, i * self.width as usize, (n as u32) * self.width)
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: u64) {
        debug_assert!(i < self.len);
        let w = self.width;
        if w == 0 {
            return;
        }
        debug_assert!(w == 64 || v >> w == 0, "value {v} does not fit in {w} bits");
        let bit = i * w as usize;
        let (idx, off) = (bit >> 6, (bit & 63) as u32);
        let mask = if w == 64 { u64::MAX } else { (1u64 << w) - 1 };
        self.words[idx] = (self.words[idx] & !(mask << off)) | (v << off);
        if off + w > 64 {
            let spill = off + w - 64;
            let hi_mask = (1u64 << spill) - 1;
            self.words[idx + 1] = (self.words[idx + 1] & !hi_mask) | (v >> (64 - off));
        }
    }

    #[inline]
    pub fn push(&mut self, v: u64) {
        let need = ((self.len + 1) * self.width as usize).div_ceil(64);
        if self.words.len() < need {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, v);
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }
}

impl SpaceUsage for PackedInts {
    fn size_in_bits(&self) -> usize {
        self.words.len() * 64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_odd_widths() {
        for width in [1, 3, 7, 13, 31, 33, 63, 64] {
            let max = if width == 64 { u64::MAX } else { (1 << width) - 1 };
            let vals: Vec<u64> = (0..200u64).map(|i| (i.wrapping_mul(0x9E37_79B9_7F4A_7C15)) & max).collect();
            let p = PackedInts::from_slice(&vals, width);
            assert_eq!(p.to_vec(), vals);
            let mut q = PackedInts::new(width);
            vals.iter().for_each(|&v| q.push(v));
            assert_eq!(q, p);
        }
    }
}
