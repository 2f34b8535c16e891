//! Process-wide lookup tables, built once on first use.
//!
//! Everything is keyed by 8- or 16-bit blocks so the tables stay cache
//! resident. The word size is fixed at 64 bits.

use std::sync::OnceLock;

/// Index of the lowest set bit of a 16-bit lane; 16 when the lane is zero.
pub fn first_one_16() -> &'static [u8; 1 << 16] {
    static TABLE: OnceLock<Box<[u8; 1 << 16]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([16u8; 1 << 16]);
        for (key, slot) in t.iter_mut().enumerate().skip(1) {
            let mut b = 0;
            while key >> b & 1 == 0 {
                b += 1;
            }
            *slot = b as u8;
        }
        t
    })
}

/// `select_in_byte()[byte][k]` is the offset of the (k+1)-th set bit of `byte`
/// (8 when there are not enough set bits).
pub fn select_in_byte() -> &'static [[u8; 8]; 256] {
    static TABLE: OnceLock<Box<[[u8; 8]; 256]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[8u8; 8]; 256]);
        for (byte, row) in t.iter_mut().enumerate() {
            let mut k = 0;
            for b in 0..8 {
                if byte >> b & 1 == 1 {
                    row[k] = b as u8;
                    k += 1;
                }
            }
        }
        t
    })
}

/// Stable split of an 8-element block by one bit per element.
#[derive(Debug, Clone, Copy, Default)]
pub struct SplitEntry {
    /// Offsets of the elements whose bit is 0, in order.
    pub zeros: [u8; 8],
    /// Offsets of the elements whose bit is 1, in order.
    pub ones: [u8; 8],
    pub t0: u8,
    pub t1: u8,
}

/// Keyed by the bit-plane of 8 consecutive elements (bit j = element j).
pub fn split8() -> &'static [SplitEntry; 256] {
    static TABLE: OnceLock<Box<[SplitEntry; 256]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([SplitEntry::default(); 256]);
        for (plane, e) in t.iter_mut().enumerate() {
            for j in 0..8u8 {
                if plane >> j & 1 == 0 {
                    e.zeros[e.t0 as usize] = j;
                    e.t0 += 1;
                } else {
                    e.ones[e.t1 as usize] = j;
                    e.t1 += 1;
                }
            }
        }
        t
    })
}

/// Routing of 8 unary-code bits between two output streams.
///
/// Every 0 goes to both outputs; the k-th 1 goes to output `y_k` where `y_k`
/// is bit k of the routing byte.
#[derive(Debug, Clone, Copy, Default)]
pub struct RouteEntry {
    pub out0: u16,
    pub len0: u8,
    pub out1: u16,
    pub len1: u8,
    /// Number of ones consumed from the input byte.
    pub ones: u8,
}

/// Keyed by `(v_byte << 8) | y_bits`; only the low `popcount(v_byte)` bits of
/// `y_bits` are read.
pub fn route8() -> &'static [RouteEntry] {
    static TABLE: OnceLock<Vec<RouteEntry>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![RouteEntry::default(); 1 << 16];
        for v in 0..256usize {
            for y in 0..256usize {
                let e = &mut t[v << 8 | y];
                let mut k = 0;
                for b in 0..8 {
                    if v >> b & 1 == 0 {
                        e.len0 += 1;
                        e.len1 += 1;
                    } else if y >> k & 1 == 0 {
                        e.out0 |= 1 << e.len0;
                        e.len0 += 1;
                        k += 1;
                    } else {
                        e.out1 |= 1 << e.len1;
                        e.len1 += 1;
                        k += 1;
                    }
                }
                e.ones = k as u8;
            }
        }
        t
    })
}

/// Prefix arg-min over a 16-bit lane of packed `width`-bit elements (element 0
/// in the low bits).
pub struct ArgminTable {
    pub width: u32,
    /// Elements per lane.
    pub lane: usize,
    table: Vec<u8>,
}

impl ArgminTable {
    /// Offset of the leftmost minimum among the first `len` elements of `key`.
    #[inline]
    pub fn prefix_argmin(&self, key: usize, len: usize) -> usize {
        debug_assert!(len >= 1 && len <= self.lane);
        self.table[key * self.lane + len - 1] as usize
    }
}

/// Table for element width `width` in `1..=8`.
pub fn argmin_table(width: u32) -> &'static ArgminTable {
    static TABLES: [OnceLock<ArgminTable>; 8] = [const { OnceLock::new() }; 8];
    assert!((1..=8).contains(&width));
    TABLES[width as usize - 1].get_or_init(|| {
        let lane = (16 / width) as usize;
        let keys = 1usize << (lane as u32 * width);
        let mask = (1usize << width) - 1;
        let mut table = vec![0u8; keys * lane];
        for key in 0..keys {
            let mut best = 0usize;
            let mut best_val = key & mask;
            table[key * lane] = 0;
            for j in 1..lane {
                let v = key >> (j as u32 * width) & mask;
                if v < best_val {
                    best_val = v;
                    best = j;
                }
                table[key * lane + j] = best as u8;
            }
        }
        ArgminTable { width, lane, table }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_one_matches_trailing_zeros() {
        let t = first_one_16();
        for k in 1..(1usize << 16) {
            assert_eq!(t[k] as u32, (k as u16).trailing_zeros());
        }
        assert_eq!(t[0], 16);
    }

    #[test]
    fn route_sends_zeros_to_both_sides() {
        // v = 0b0101 (ones at 0 and 2), y routes first one left, second right.
        let e = route8()[0b0000_0101 << 8 | 0b10];
        assert_eq!(e.ones, 2);
        assert_eq!((e.len0, e.len1), (7, 7));
        assert_eq!(e.out0, 0b1);
        assert_eq!(e.out1, 0b10);
    }

    #[test]
    fn argmin_is_leftmost() {
        let t = argmin_table(4);
        // elements [3, 1, 1, 0]
        let key = 3 | 1 << 4 | 1 << 8;
        assert_eq!(t.prefix_argmin(key, 1), 0);
        assert_eq!(t.prefix_argmin(key, 3), 1);
        assert_eq!(t.prefix_argmin(key, 4), 3);
    }
}
