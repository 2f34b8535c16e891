//! One pass/fail line per acceptance criterion. Run with
//! `cargo test -p lzrp-cli --test acceptance -- --nocapture`.

use std::path::Path;
use std::time::{Duration, Instant};

use lzrp::elias_fano::{CharPredecessorSet, EliasFanoSeq};
use lzrp::lz_compact::lz_parse_with_report;
use lzrp::oracle::{all_strings, oracle_lz, oracle_range_pred, oracle_rightmost, valid_sources, OracleConfig};
use lzrp::range_pred::{PointSet, RangePredIndex};
use lzrp::succinct::{BitVector, PackedInts, RmqIndex, SampledRmq};
use lzrp::wavelet::WaveletTree;
use lzrp::{ceil_log2, lz_parse, rightmost_parse, rightmost_parse_with_report, Execution, Factor, RightmostConfig, Text, TextIndex};
use lzrp_cli::{cmd_decode, cmd_parse, Format, RightmostArgs};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn lengths(f: &[Factor]) -> Vec<(usize, bool)> {
    f.iter().map(|f| (f.len(), f.is_literal())).collect()
}

fn lz_matches_oracle(text: &[u32]) -> bool {
    let got = lz_parse(&Text::from_symbols(text));
    lengths(&got) == lengths(&oracle_lz(text)) && valid_sources(text, &got)
}

fn criterion_1() -> Outcome {
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for (sigma, max_len) in [(2, 14), (3, 9)] {
        for len in 0..=max_len {
            for s in all_strings(sigma, len) {
                checked += 1;
                if !lz_matches_oracle(&s) {
                    bad.push(s);
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} strings, {} mismatches {:?}", bad.len(), bad.first()))
}

fn criterion_2() -> Outcome {
    let text = Text::from_bytes(b"araarraaa");
    let lz = lz_parse(&text);
    let lens: Vec<usize> = lz.iter().map(Factor::len).collect();
    let mut ok = lens == [1, 1, 1, 2, 3, 1];
    let mut srcs = Vec::new();
    for cfg in [RightmostConfig::basic(), RightmostConfig::stratified()] {
        let rm = rightmost_parse(&text, &cfg).unwrap();
        let s: Vec<Option<usize>> = rm
            .iter()
            .map(|f| match *f {
                Factor::Reference { src, .. } => Some(src),
                Factor::Literal(_) => None,
            })
            .collect();
        ok &= s[4] == Some(2) && s[5] == Some(8);
        srcs.push(s);
    }
    outcome(ok, format!("lengths {lens:?}, rightmost sources {:?}", srcs[0]))
}

fn criterion_3() -> Outcome {
    let configs = [RightmostConfig::basic(), RightmostConfig::stratified()];
    let mut mismatches = 0usize;
    let mut checked = 0usize;
    let mut check = |text: &[u32]| {
        let want = oracle_rightmost(text);
        let t = Text::from_symbols(text);
        let mut all = [0; 3];
        for cfg in &configs {
            let (got, rep) = rightmost_parse_with_report(&t, cfg).unwrap();
            if got != want {
                mismatches += 1;
            }
            if rep.long + rep.boundary + rep.in_block > 0 {
                all = [rep.long, rep.boundary, rep.in_block];
            }
        }
        checked += 1;
        all
    };
    for (sigma, max_len) in [(2, 12), (3, 8)] {
        for len in 0..=max_len {
            for s in all_strings(sigma, len) {
                check(&s);
            }
        }
    }
    let oc = OracleConfig::default();
    let mut rng = oc.rng();
    let mut covered = None;
    let mut totals = [0usize; 3];
    for k in 0..300 {
        let sigma = [2, 4, 26][k % 3];
        let n = rng.gen_range(1..=10_000);
        let text = if k % 2 == 0 {
            oc.random_text(&mut rng, n, sigma)
        } else {
            oc.repetitive_text(&mut rng, n, sigma, 400)
        };
        let cats = check(&text);
        for c in 0..3 {
            totals[c] += cats[c];
        }
        if covered.is_none() && cats.iter().all(|&c| c > 0) {
            covered = Some((k, n, sigma));
        }
    }
    outcome(
        mismatches == 0 && covered.is_some(),
        format!(
            "{checked} strings x 2 modes, {mismatches} mismatches; long/boundary/in-block = {totals:?}; all three on input {covered:?}"
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let sizes = [64usize, 512, 4096];
    let mut mismatches = 0usize;
    let mut queries = 0usize;
    for k in 0..50 {
        let n = sizes[k % 3];
        let mut ys: Vec<usize> = (1..=n).collect();
        ys.shuffle(&mut rng);
        let points: Vec<(usize, usize)> = ys.iter().enumerate().map(|(x, &y)| (x + 1, y)).collect();
        let qs: Vec<(usize, usize, usize)> = (0..10_000)
            .map(|_| {
                let a = rng.gen_range(1..=n);
                let b = rng.gen_range(1..=n);
                (a.min(b), a.max(b), rng.gen_range(0..=n + 1))
            })
            .collect();
        let want: Vec<_> = qs.iter().map(|&(a, b, y)| oracle_range_pred(&points, a, b, y)).collect();
        for c in 1..=3 {
            let idx = RangePredIndex::build(PointSet::from_y_of_x(&ys).unwrap(), c, Execution::default());
            for (q, w) in qs.iter().zip(&want) {
                queries += 1;
                if idx.query(q.0, q.1, q.2).unwrap() != *w {
                    mismatches += 1;
                }
            }
        }
    }
    outcome(mismatches == 0, format!("{queries} queries, {mismatches} mismatches"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut fails: Vec<&str> = Vec::new();
    let mut checks = 0usize;
    let mut expect = |ok: bool, what: &'static str| {
        checks += 1;
        if !ok && !fails.contains(&what) {
            fails.push(what);
        }
    };
    for _ in 0..40 {
        let n = rng.gen_range(0..3000);
        let p = rng.gen_range(0.0..1.0);
        let bits: Vec<bool> = (0..n).map(|_| rng.gen_bool(p)).collect();
        let bv = BitVector::from_bools(&bits);
        let mut ones = 0;
        for i in 0..=n {
            expect(bv.rank(true, i).unwrap() == ones, "bitvector rank");
            if i < n && bits[i] {
                ones += 1;
                expect(bv.select(true, ones).unwrap() == i + 1, "bitvector select1");
            }
        }
        let zeros: Vec<usize> = (0..n).filter(|&i| !bits[i]).collect();
        for (k, &z) in zeros.iter().enumerate() {
            expect(bv.select(false, k + 1).unwrap() == z + 1, "bitvector select0");
        }
    }
    for _ in 0..40 {
        let n = rng.gen_range(1..2000);
        let vmax = [3u64, 15, 255, 100_000][rng.gen_range(0..4)];
        let vals: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=vmax)).collect();
        let rmin = RmqIndex::min(&vals);
        let rmax = RmqIndex::max(&vals);
        let packed = PackedInts::from_slice_auto(&vals);
        let b = SampledRmq::default_block_size(&packed) * 4;
        let smin = SampledRmq::min(&packed, b);
        let smax = SampledRmq::max(&packed, b);
        for _ in 0..300 {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(i..n);
            let lo = (i..=j).min_by_key(|&p| (vals[p], p)).unwrap();
            let hi = (i..=j).min_by_key(|&p| (u64::MAX - vals[p], p)).unwrap();
            expect(rmin.query0(i, j) == lo, "rmq min");
            expect(rmax.query0(i, j) == hi, "rmq max");
            expect(smin.query0(&packed, i, j) == lo, "sampled rmq min");
            expect(smax.query0(&packed, i, j) == hi, "sampled rmq max");
        }
    }
    for _ in 0..30 {
        let n = rng.gen_range(1..1500);
        let sigma = rng.gen_range(1..=300u64);
        let seq: Vec<u64> = (0..n).map(|_| rng.gen_range(0..sigma)).collect();
        let wt = WaveletTree::build(&seq, sigma).unwrap();
        for i in 1..=n {
            expect(wt.access(i).unwrap() == seq[i - 1], "wavelet access");
        }
        for _ in 0..200 {
            let c = rng.gen_range(0..sigma);
            let i = rng.gen_range(0..=n);
            let r = seq[..i].iter().filter(|&&v| v == c).count();
            expect(wt.rank(c, i).unwrap() == r, "wavelet rank");
            let occ: Vec<usize> = (0..n).filter(|&p| seq[p] == c).collect();
            if !occ.is_empty() {
                let k = rng.gen_range(1..=occ.len());
                expect(wt.select(c, k).unwrap() == occ[k - 1] + 1, "wavelet select");
            }
            let a = rng.gen_range(1..=n);
            let b = rng.gen_range(a..=n);
            let y = rng.gen_range(0..sigma + 1);
            let want = seq[a - 1..b].iter().copied().filter(|&v| v <= y).max();
            let got = wt.range_pred(a, b, y).unwrap();
            expect(
                got.map(|g| g.1) == want && got.is_none_or(|(x, v)| (a..=b).contains(&x) && seq[x - 1] == v),
                "wavelet range predecessor",
            );
        }
    }
    for _ in 0..40 {
        let u = rng.gen_range(1..=5000u64);
        let keys: Vec<u64> = (1..=u).filter(|_| rng.gen_bool(0.3)).collect();
        let ef = EliasFanoSeq::build(&keys, u, keys.len() as u64).unwrap();
        for (k, &key) in keys.iter().enumerate() {
            expect(ef.select(k + 1).unwrap() == key, "elias-fano select");
        }
        for q in 0..=u {
            expect(ef.rank(q) == keys.partition_point(|&k| k <= q), "elias-fano rank");
        }
    }
    for _ in 0..20 {
        let n = rng.gen_range(1..800);
        let sigma = rng.gen_range(1..=5u32);
        let text: Vec<u32> = (0..n).map(|_| rng.gen_range(0..sigma)).collect();
        let t = Text::from_symbols(&text);
        let ti = TextIndex::build(&t);
        let codes = t.symbols();
        let suffixes: Vec<&[u32]> = ti.sa().iter().map(|&p| &codes[p as usize - 1..]).collect();
        for _ in 0..100 {
            let i = rng.gen_range(0..n);
            let len = rng.gen_range(1..=(n - i).min(8));
            let pat = if rng.gen_bool(0.8) {
                codes[i..i + len].to_vec()
            } else {
                (0..len).map(|_| rng.gen_range(1..=sigma + 1)).collect()
            };
            let rows: Vec<usize> = (0..suffixes.len()).filter(|&r| suffixes[r].starts_with(&pat)).collect();
            let want = (!rows.is_empty()).then(|| (rows[0] + 1, rows[rows.len() - 1] + 1));
            expect(ti.pattern_range(&pat) == want, "backward search");
        }
    }
    outcome(fails.is_empty(), format!("{checks} checks, failing: {fails:?}"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = 0;
    for _ in 0..100 {
        let sigma = 1u64 << rng.gen_range(0..=8);
        let n = rng.gen_range(0..3000);
        let seq: Vec<u64> = (0..n).map(|_| rng.gen_range(0..sigma)).collect();
        let a = CharPredecessorSet::build_simple(&seq, sigma).unwrap();
        let b = CharPredecessorSet::build_bitparallel(&seq, sigma).unwrap();
        let mut same = a.canonical_bytes() == b.canonical_bytes();
        for _ in 0..200 {
            let c = rng.gen_range(0..sigma);
            let q = rng.gen_range(0..=n);
            same &= a.rank(c, q) == b.rank(c, q);
            if n > 0 {
                let x1 = rng.gen_range(1..=n);
                let x2 = rng.gen_range(x1..=n);
                same &= a.range_occ(c, x1, x2) == b.range_occ(c, x1, x2);
            }
            let k = rng.gen_range(1..=n.max(1));
            same &= a.select(c, k).ok() == b.select(c, k).ok();
        }
        if !same {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("100 inputs, {bad} differing"))
}

/// Random σ=4 text built from mutated copies of earlier stretches.
fn repetitive_dna(n: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet = b"ACGT";
    let mut out: Vec<u8> = (0..100_000.min(n)).map(|_| alphabet[rng.gen_range(0..4)]).collect();
    while out.len() < n {
        let len = rng.gen_range(100..5000).min(n - out.len());
        let src = rng.gen_range(0..out.len() - len.min(out.len() - 1));
        for k in 0..len {
            let c = if rng.gen_bool(0.002) {
                alphabet[rng.gen_range(0..4)]
            } else {
                out[src + k]
            };
            out.push(c);
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let n = 16 << 20;
    let data = repetitive_dna(n, 7);
    let text = Text::from_bytes(&data);
    let (factors, rep) = lz_parse_with_report(&text);
    let aux = rep.aux_bits() as f64 / n as f64;
    let bwt = rep.bwt_bits as f64 / n as f64;
    let bwt_cap = 1.6 * ceil_log2(4) as f64;
    outcome(
        aux <= 8.0 && bwt <= bwt_cap,
        format!(
            "n = {n}, z = {}, aux = {aux:.3} bits/symbol (cap 8), bwt = {bwt:.3} bits/symbol (cap {bwt_cap:.1})",
            factors.len()
        ),
    )
}

fn criterion_8() -> Outcome {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let dir = tempfile::tempdir().unwrap();
    let mut files: Vec<_> = std::fs::read_dir(&corpus).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    let mut ok = files.len() == 4;
    let mut sink = Vec::new();
    for file in &files {
        for fmt in [Format::Text, Format::Binary] {
            let lz = dir.path().join("f.lz");
            let back = dir.path().join("back");
            ok &= cmd_parse(file, &lz, fmt, &RightmostArgs::default(), &mut sink).is_ok();
            ok &= cmd_decode(&lz, &back).is_ok();
            ok &= std::fs::read(&back).unwrap() == std::fs::read(file).unwrap();
        }
    }
    let zs: Vec<usize> = [2usize, 10, 100_000]
        .iter()
        .map(|&n| lz_parse(&Text::from_bytes(&vec![b'a'; n])).len())
        .collect();
    ok &= zs.iter().all(|&z| z == 2);
    outcome(ok, format!("{} corpus files x 2 formats byte-identical; z(a^n) = {zs:?}", files.len()))
}

fn criterion_9() -> Outcome {
    let data = repetitive_dna(10_000_000, 9);
    let t0 = Instant::now();
    let f = lzrp::lz_compact::lz_parse_bytes(&data);
    let parse = t0.elapsed();
    let n = 1 << 20;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut ys: Vec<usize> = (1..=n).collect();
    ys.shuffle(&mut rng);
    let t1 = Instant::now();
    let idx = RangePredIndex::build(PointSet::from_y_of_x(&ys).unwrap(), 2, Execution::default());
    let build = t1.elapsed();
    let ok = parse < Duration::from_secs(60) && build < Duration::from_secs(30) && !f.is_empty() && idx.len() == n;
    outcome(
        ok,
        format!(
            "parse 10 MB: {:.2}s (limit 60s); rp_build n = 2^20: {:.2}s (limit 30s); 2x regressions are tracked by the criterion bench",
            parse.as_secs_f64(),
            build.as_secs_f64()
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("exhaustive LZ correctness", criterion_1),
        ("worked example araarraaa", criterion_2),
        ("rightmost exhaustive + randomized", criterion_3),
        ("range predecessor vs oracle", criterion_4),
        ("substructure oracles", criterion_5),
        ("bit-parallel CPS builder equivalence", criterion_6),
        ("space accounting, 16 MiB sigma=4", criterion_7),
        ("CLI round trip and z(a^n)", criterion_8),
        ("performance smoke", criterion_9),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {} {name}: {status} ({}; {:.1}s)",
            k + 1,
            o.detail,
            t.elapsed().as_secs_f64()
        );
        if !o.pass {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
