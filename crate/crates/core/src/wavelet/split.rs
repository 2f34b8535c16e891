//! Stable partition of integer arrays by one bit, driven by 8-element
//! bit-plane lookups.

use crate::succinct::tables::split8;
use crate::{Error, Result};

/// Splits `values` (each `< 2^width`) by their `p`-th most significant bit
/// (`1 ≤ p ≤ width`) into the stable subsequences with that bit 0 and 1.
pub fn wt_split_core(values: &[u64], width: u32, p: u32) -> Result<(Vec<u64>, Vec<u64>)> {
    if p == 0 || p > width {
        return Err(Error::Range {
            index: p as usize,
            lo: 1,
            hi: width as usize,
        });
    }
    Ok(split_by_bit(values, width - p))
}

/// Stable split by bit number `bit` (0 = least significant).
pub(crate) fn split_by_bit(values: &[u64], bit: u32) -> (Vec<u64>, Vec<u64>) {
    let table = split8();
    let mut zeros = Vec::with_capacity(values.len());
    let mut ones = Vec::with_capacity(values.len() / 2);
    let mut chunks = values.chunks_exact(8);
    for block in &mut chunks {
        let mut plane = 0usize;
        for (j, &v) in block.iter().enumerate() {
            plane |= ((v >> bit & 1) as usize) << j;
        }
        let e = &table[plane];
        zeros.extend(e.zeros[..e.t0 as usize].iter().map(|&j| block[j as usize]));
        ones.extend(e.ones[..e.t1 as usize].iter().map(|&j| block[j as usize]));
    }
    for &v in chunks.remainder() {
        if v >> bit & 1 == 0 {
            zeros.push(v);
        } else {
            ones.push(v);
        }
    }
    (zeros, ones)
}

/// Stable split of `values` by the `digits`-bit digit starting at bit `shift`,
/// done as `digits` rounds of the binary split. Returns the non-empty buckets
/// in increasing digit order.
pub fn split_digits(values: Vec<u64>, shift: u32, digits: u32) -> Vec<(u64, Vec<u64>)> {
    let mut parts = vec![(0u64, values)];
    for d in (0..digits).rev() {
        let mut next = Vec::with_capacity(parts.len() * 2);
        for (prefix, part) in parts {
            let (z, o) = split_by_bit(&part, shift + d);
            if !z.is_empty() {
                next.push((prefix << 1, z));
            }
            if !o.is_empty() {
                next.push((prefix << 1 | 1, o));
            }
        }
        parts = next;
    }
    parts.retain(|(_, p)| !p.is_empty());
    parts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(wt_split_core(&[5, 2, 7, 1], 3, 1), Ok((vec![2, 1], vec![5, 7])));
        assert_eq!(wt_split_core(&[], 3, 2), Ok((vec![], vec![])));
        assert_eq!(wt_split_core(&[0, 0], 3, 3), Ok((vec![0, 0], vec![])));
        assert!(wt_split_core(&[1], 3, 0).is_err());
        assert!(wt_split_core(&[1], 3, 4).is_err());
    }

    #[test]
    fn long_input_matches_filter() {
        let v: Vec<u64> = (0..1003u64).map(|i| (i * 37) % 64).collect();
        for p in 1..=6 {
            let (z, o) = wt_split_core(&v, 6, p).unwrap();
            let bit = 6 - p;
            assert_eq!(z, v.iter().copied().filter(|x| x >> bit & 1 == 0).collect::<Vec<_>>());
            assert_eq!(o, v.iter().copied().filter(|x| x >> bit & 1 == 1).collect::<Vec<_>>());
        }
    }

    #[test]
    fn digit_split_is_stable_bucketing() {
        let v: Vec<u64> = (0..500u64).map(|i| (i * 101) % 256).collect();
        let parts = split_digits(v.clone(), 3, 3);
        for (d, part) in &parts {
            let expect: Vec<u64> = v.iter().copied().filter(|x| (x >> 3) & 7 == *d).collect();
            assert_eq!(part, &expect);
        }
        assert_eq!(parts.iter().map(|p| p.1.len()).sum::<usize>(), 500);
    }
}
