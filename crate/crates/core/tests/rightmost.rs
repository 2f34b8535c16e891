use lzrp::oracle::{all_strings, oracle_rightmost, OracleConfig};
use lzrp::rightmost::{
    factor_queries, resolve_basic, resolve_in_block, rightmost_basic, text_order_isa, FactorQuery, LongFactorIndex,
    QueryTree, RightmostMode,
};
use lzrp::{lz_parse, rightmost_parse, rightmost_parse_with_report, Error, Factor, RightmostConfig, Text, TextIndex};
use proptest::prelude::*;

fn tight(mode: RightmostMode) -> RightmostConfig {
    RightmostConfig {
        ell: Some(4),
        r: Some(2),
        block: Some(2),
        mode,
        ..RightmostConfig::default()
    }
}

fn configs() -> [RightmostConfig; 3] {
    [RightmostConfig::basic(), RightmostConfig::stratified(), tight(RightmostMode::Stratified)]
}

fn check(text: &[u32], cfg: &RightmostConfig) {
    let got = rightmost_parse(&Text::from_symbols(text), cfg).unwrap();
    assert_eq!(got, oracle_rightmost(text), "{text:?} {cfg:?}");
}

fn brute_rightmost(text: &[u32], i: usize, len: usize) -> usize {
    (1..i).rev().find(|&p| text[p - 1..p - 1 + len] == text[i - 1..i - 1 + len]).unwrap()
}

#[test]
fn exhaustive_small_alphabets() {
    for cfg in configs() {
        for len in 0..=12 {
            for s in all_strings(2, len) {
                check(&s, &cfg);
            }
        }
        for len in 0..=8 {
            for s in all_strings(3, len) {
                check(&s, &cfg);
            }
        }
    }
}

#[test]
fn random_strings_both_modes() {
    let oc = OracleConfig::default();
    let mut rng = oc.rng();
    for k in 0..60 {
        let sigma = [2, 4, 26][k % 3];
        let n = 200 + 37 * k;
        let text = if k % 2 == 0 {
            oc.random_text(&mut rng, n, sigma)
        } else {
            oc.repetitive_text(&mut rng, n, sigma, 120)
        };
        let want = oracle_rightmost(&text);
        for cfg in configs() {
            let got = rightmost_parse(&Text::from_symbols(&text), &cfg).unwrap();
            assert_eq!(got, want, "k = {k}, {cfg:?}");
        }
    }
}

#[test]
fn dominates_compact_sources() {
    let oc = OracleConfig::default();
    let mut rng = oc.rng();
    for _ in 0..30 {
        let text = oc.repetitive_text(&mut rng, 700, 4, 60);
        let t = Text::from_symbols(&text);
        let lz = lz_parse(&t);
        let rm = rightmost_parse(&t, &RightmostConfig::default()).unwrap();
        assert_eq!(lz.len(), rm.len());
        for (a, b) in lz.iter().zip(&rm) {
            assert_eq!(a.len(), b.len());
            if let (Factor::Reference { src: s1, .. }, Factor::Reference { src: s2, .. }) = (a, b) {
                assert!(s2 >= s1);
            }
        }
    }
}

#[test]
fn stratified_reaches_every_category() {
    let oc = OracleConfig::default();
    let mut rng = oc.rng();
    let text = oc.repetitive_text(&mut rng, 6000, 4, 400);
    let t = Text::from_symbols(&text);
    let (f, rep) = rightmost_parse_with_report(&t, &RightmostConfig::default()).unwrap();
    assert_eq!(f, oracle_rightmost(&text));
    assert!(rep.long > 0 && rep.boundary > 0 && rep.in_block > 0, "{rep:?}");
    assert_eq!(rep.long + rep.boundary + rep.in_block, rep.references);
}

#[test]
fn basic_examples() {
    for (s, i, want) in [("araarraaa", 9, 8), ("abab", 3, 1), ("aa", 2, 1)] {
        let t = Text::from_bytes(s.as_bytes());
        let ti = TextIndex::build(&t);
        let qs = factor_queries(&ti, &t, &lz_parse(&t));
        let q = qs.iter().position(|q| q.start == i).unwrap();
        assert_eq!(rightmost_basic(&ti, &qs)[q], want, "{s}");
    }
}

#[test]
fn query_tree_is_laminar_on_corpus() {
    let oc = OracleConfig::default();
    let mut rng = oc.rng();
    for k in 0..20 {
        let text = oc.repetitive_text(&mut rng, 300 + 50 * k, 2 + k as u32 % 5, 40);
        let t = Text::from_symbols(&text);
        let ti = TextIndex::build(&t);
        let qs = factor_queries(&ti, &t, &lz_parse(&t));
        let iv: Vec<(usize, usize)> = qs.iter().map(|q| (q.sa_lo, q.sa_hi)).collect();
        assert!(QueryTree::build(&iv, ti.len()).unwrap().is_laminar());
    }
}

fn long_setup(s: &[u8], r: usize, ell: usize) -> (Text, TextIndex, Vec<FactorQuery>, LongFactorIndex) {
    let t = Text::from_bytes(s);
    let ti = TextIndex::build(&t);
    let qs = factor_queries(&ti, &t, &lz_parse(&t));
    let isa = text_order_isa(&ti);
    let idx = LongFactorIndex::build(t.symbols(), t.sigma(), &isa, r, ell).unwrap();
    (t, ti, qs, idx)
}

#[test]
fn long_periodic() {
    let s = b"ab".repeat(32);
    let (t, ti, qs, idx) = long_setup(&s, 4, 8);
    assert_eq!(idx.table_len(), 16);
    let q = qs.iter().find(|q| q.len >= 8).unwrap();
    assert_eq!((q.start, q.len), (3, 62));
    assert_eq!(idx.query(&ti, t.symbols(), q.start, q.len), Ok(1));
    assert_eq!(brute_rightmost(&s.iter().map(|&b| b as u32).collect::<Vec<_>>(), q.start, q.len), 1);
}

#[test]
fn long_aligned_and_unaligned_hits() {
    // "abcdefgh" occurs at 1 (block aligned for r = 4) and again later.
    let s = b"abcdefghxyabcdefghzzzz";
    let (t, ti, qs, idx) = long_setup(s, 4, 8);
    let q = qs.iter().find(|q| q.len == 8).unwrap();
    assert_eq!(idx.query(&ti, t.symbols(), q.start, q.len), Ok(1));
    // Single earlier occurrence starting mid-block.
    let s = b"xabcdefghijyabcdefghij";
    let (t, ti, qs, idx) = long_setup(s, 4, 8);
    let q = qs.iter().find(|q| q.len == 10).unwrap();
    assert_eq!(idx.query(&ti, t.symbols(), q.start, q.len), Ok(2));
    assert!(matches!(idx.query(&ti, t.symbols(), q.start, 5), Err(Error::Domain(_))));
}

#[test]
fn long_index_matches_brute_force() {
    let oc = OracleConfig::default();
    let mut rng = oc.rng();
    for k in 0..10 {
        let text = oc.repetitive_text(&mut rng, 1500, 2 + k % 3, 200);
        let t = Text::from_symbols(&text);
        let ti = TextIndex::build(&t);
        let qs = factor_queries(&ti, &t, &lz_parse(&t));
        let isa = text_order_isa(&ti);
        let idx = LongFactorIndex::build(t.symbols(), t.sigma(), &isa, 5, 10).unwrap();
        for q in qs.iter().filter(|q| q.len >= 10) {
            assert_eq!(idx.query(&ti, t.symbols(), q.start, q.len), Ok(brute_rightmost(&text, q.start, q.len)));
        }
    }
}

#[test]
fn in_block_matches_brute_force() {
    let oc = OracleConfig::default();
    let mut rng = oc.rng();
    let text = oc.random_text(&mut rng, 2048, 4);
    let t = Text::from_symbols(&text);
    let ti = TextIndex::build(&t);
    let isa = text_order_isa(&ti);
    let qs: Vec<FactorQuery> = factor_queries(&ti, &t, &lz_parse(&t))
        .into_iter()
        .filter(|q| (q.sa_lo - 1) / 64 == (q.sa_hi - 1) / 64)
        .collect();
    assert!(!qs.is_empty());
    let (got, idx) = resolve_in_block(&isa, 64, &qs, 2).unwrap();
    assert!(idx.built_blocks() > 0);
    for (q, src) in qs.iter().zip(got) {
        assert_eq!(src, brute_rightmost(&text, q.start, q.len));
    }
}

#[test]
fn in_block_missing_occurrence_is_reported() {
    let t = Text::from_bytes(b"abcab");
    let ti = TextIndex::build(&t);
    let isa = text_order_isa(&ti);
    // "c" at its own first occurrence has no earlier copy.
    let (s, e) = ti.pattern_range(&t.symbols()[2..3]).unwrap();
    let q = FactorQuery { start: 3, len: 1, sa_lo: s, sa_hi: e };
    assert!(matches!(resolve_in_block(&isa, 64, &[q], 2), Err(Error::NotFound(_))));
}

#[test]
fn boundary_scan_cases() {
    let t = Text::from_bytes(b"abababbabbab");
    let ti = TextIndex::build(&t);
    let isa = text_order_isa(&ti);
    assert_eq!(resolve_basic(&isa, &[]).unwrap(), (vec![], 0));
    let text: Vec<u32> = b"abababbabbab".iter().map(|&b| b as u32).collect();
    // Nested intervals: "b" contains "ba", "bab".
    let mk = |i: usize, len: usize| {
        let (s, e) = ti.pattern_range(&t.symbols()[i - 1..i - 1 + len]).unwrap();
        FactorQuery { start: i, len, sa_lo: s, sa_hi: e }
    };
    let qs = vec![mk(12, 1), mk(8, 3), mk(9, 2)];
    let (got, nodes) = resolve_basic(&isa, &qs).unwrap();
    assert_eq!(nodes, 3);
    for (q, src) in qs.iter().zip(got) {
        assert_eq!(src, brute_rightmost(&text, q.start, q.len));
    }
}

#[test]
fn distinct_symbols_are_all_literals() {
    let f = rightmost_parse(&Text::from_bytes(b"abcdefg"), &RightmostConfig::default()).unwrap();
    assert!(f.iter().all(Factor::is_literal));
}

#[test]
fn modes_agree() {
    let oc = OracleConfig { seed: 99, ..OracleConfig::default() };
    let mut rng = oc.rng();
    for k in 0..100 {
        let text = oc.repetitive_text(&mut rng, 50 + 7 * k, 3, 30);
        let t = Text::from_symbols(&text);
        let a = rightmost_parse(&t, &RightmostConfig::basic()).unwrap();
        let b = rightmost_parse(&t, &tight(RightmostMode::Stratified)).unwrap();
        assert_eq!(a, b);
    }
}

proptest! {
    #[test]
    fn stratified_equals_oracle(text in prop::collection::vec(0u32..3, 0..300), r in 1usize..5, extra in 0usize..6, block in 2usize..40) {
        let cfg = RightmostConfig { ell: Some(r + extra), r: Some(r), block: Some(block), ..RightmostConfig::default() };
        let got = rightmost_parse(&Text::from_symbols(&text), &cfg).unwrap();
        prop_assert_eq!(got, oracle_rightmost(&text));
    }
}
