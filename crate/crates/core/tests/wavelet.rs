use lzrp::wavelet::{wt_split_core, WaveletTree};
use lzrp::{ceil_log2, SpaceUsage};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn brute_pred(seq: &[u64], x1: usize, x2: usize, y2: u64) -> Option<u64> {
    seq[x1 - 1..x2].iter().copied().filter(|&v| v <= y2).max()
}

#[test]
fn operations_match_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for round in 0..200 {
        let sigma = [2u64, 5, 64, 300][round % 4];
        let n = rng.gen_range(1..=4096);
        let seq: Vec<u64> = (0..n).map(|_| rng.gen_range(0..sigma)).collect();
        let wt = WaveletTree::build(&seq, sigma).unwrap();
        for (i, &c) in seq.iter().enumerate() {
            assert_eq!(wt.access(i + 1), Ok(c));
        }
        for _ in 0..1000 {
            let c = rng.gen_range(0..sigma);
            let i = rng.gen_range(0..=n);
            let want = seq[..i].iter().filter(|&&s| s == c).count();
            assert_eq!(wt.rank(c, i), Ok(want));
            let total = wt.rank(c, n).unwrap();
            if total > 0 {
                let k = rng.gen_range(1..=total);
                let p = seq.iter().enumerate().filter(|(_, &s)| s == c).nth(k - 1).unwrap().0 + 1;
                assert_eq!(wt.select(c, k), Ok(p));
            } else {
                assert!(wt.select(c, 1).is_err());
            }
        }
        for _ in 0..1000 {
            let x1 = rng.gen_range(1..=n);
            let x2 = rng.gen_range(x1..=n);
            let y2 = rng.gen_range(0..sigma);
            let got = wt.range_pred(x1, x2, y2).unwrap();
            let want = brute_pred(&seq, x1, x2, y2);
            assert_eq!(got.map(|p| p.1), want);
            if let Some((x, v)) = got {
                assert!((x1..=x2).contains(&x));
                assert_eq!(seq[x - 1], v);
            }
        }
    }
}

#[test]
fn range_pred_at_top_is_range_max() {
    let seq = [4u64, 9, 2, 9, 7];
    let wt = WaveletTree::build(&seq, 10).unwrap();
    assert_eq!(wt.range_pred(1, 5, 9), Ok(Some((2, 9))));
    assert_eq!(wt.range_pred(3, 3, 9), Ok(Some((3, 2))));
    assert_eq!(wt.range_pred(1, 5, 1), Ok(None));
}

#[test]
fn space_bound_large() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for &sigma in &[2u64, 4, 300] {
        let n = 1 << 16;
        let seq: Vec<u64> = (0..n).map(|_| rng.gen_range(0..sigma)).collect();
        let wt = WaveletTree::build(&seq, sigma).unwrap();
        let levels = ceil_log2(sigma as usize) as usize;
        assert!(wt.size_in_bits() as f64 <= 1.6 * (n * levels) as f64 + 4096.0);
        let total: usize = (0..levels).map(|l| wt.level(l).len()).sum();
        assert_eq!(total, n * levels);
    }
}

proptest! {
    #[test]
    fn split_is_stable_partition(values in proptest::collection::vec(0u64..256, 0..200), p in 1u32..=8) {
        let (z, o) = wt_split_core(&values, 8, p).unwrap();
        let bit = 8 - p;
        prop_assert_eq!(z.len() + o.len(), values.len());
        prop_assert_eq!(z, values.iter().copied().filter(|v| v >> bit & 1 == 0).collect::<Vec<_>>());
        prop_assert_eq!(o, values.iter().copied().filter(|v| v >> bit & 1 == 1).collect::<Vec<_>>());
    }

    #[test]
    fn build_access_roundtrip(seq in proptest::collection::vec(0u64..37, 0..500)) {
        let wt = WaveletTree::build(&seq, 37).unwrap();
        for (i, &c) in seq.iter().enumerate() {
            prop_assert_eq!(wt.access(i + 1).unwrap(), c);
        }
    }
}
