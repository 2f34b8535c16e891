//! Rightmost parsing: the greedy phrase boundaries with each reference
//! pointing at the latest earlier occurrence of its phrase.
//!
//! Phrases are located by their SA interval in the forward index. The basic
//! solver scans text positions left to right over the laminar family of those
//! intervals. The stratified solver splits phrases into long ones (sampled
//! alignments and 3D range maxima), short ones whose interval crosses an SA
//! block boundary (the basic scan over just those), and short ones inside one
//! block (per-block range predecessor).

mod inblock;
mod long;
mod query_tree;

pub use inblock::BlockPredIndex;
pub use long::{LongFactorIndex, ReverseTable};
pub use query_tree::QueryTree;

use crate::lz_compact::{lz_parse, Factor};
use crate::text_index::{Text, TextIndex};
use crate::{ceil_log2, Error, Execution, Result, SpaceUsage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RightmostMode {
    Basic,
    #[default]
    Stratified,
}

/// Thresholds left as `None` take size-dependent defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RightmostConfig {
    /// Minimum length of a long phrase.
    pub ell: Option<usize>,
    /// Sample stride for long phrases.
    pub r: Option<usize>,
    /// SA rows per block.
    pub block: Option<usize>,
    pub mode: RightmostMode,
    /// Granularity of the per-block range-predecessor indexes.
    pub granularity: usize,
    pub exec: Execution,
}

impl Default for RightmostConfig {
    fn default() -> Self {
        Self {
            ell: None,
            r: None,
            block: None,
            mode: RightmostMode::default(),
            granularity: 2,
            exec: Execution::default(),
        }
    }
}

impl RightmostConfig {
    pub fn basic() -> Self {
        Self {
            mode: RightmostMode::Basic,
            ..Self::default()
        }
    }

    pub fn stratified() -> Self {
        Self::default()
    }

    /// Resolved thresholds for a text of `n` symbols (sentinel included) over
    /// `sigma` distinct input symbols.
    pub fn thresholds(&self, n: usize, sigma: usize) -> Result<Thresholds> {
        let lg = ceil_log2(n) as usize;
        let r = self.r.unwrap_or(lg.max(2));
        let ell = self.ell.unwrap_or((lg * lg).max(8));
        let block = self.block.unwrap_or((r * r * sigma.clamp(1, 16)).max(16));
        if r == 0 || r > ell {
            return Err(Error::Config(format!("need 1 ≤ r ≤ ℓ, got r = {r}, ℓ = {ell}")));
        }
        if block < 2 {
            return Err(Error::Config(format!("block size {block} below 2")));
        }
        if self.granularity == 0 {
            return Err(Error::Config("granularity must be positive".into()));
        }
        Ok(Thresholds { ell, r, block })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Thresholds {
    pub ell: usize,
    pub r: usize,
    pub block: usize,
}

/// How phrases were routed and what the solvers occupied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RightmostReport {
    pub thresholds: Thresholds,
    pub references: usize,
    /// Phrases resolved by the basic scan in basic mode.
    pub basic: usize,
    pub long: usize,
    pub boundary: usize,
    pub in_block: usize,
    pub tree_nodes: usize,
    pub blocks_built: usize,
    pub long_bits: usize,
    pub in_block_bits: usize,
    /// Bits of the per-position bookkeeping (text-order SA rows).
    pub isa_bits: usize,
}

/// A reference phrase and its SA interval in the forward index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorQuery {
    /// 1-based start of the phrase.
    pub start: usize,
    pub len: usize,
    pub sa_lo: usize,
    pub sa_hi: usize,
}

/// SA intervals of the reference phrases of `factors`, in text order.
pub fn factor_queries(ti: &TextIndex, text: &Text, factors: &[Factor]) -> Vec<FactorQuery> {
    let codes = text.symbols();
    let mut out = Vec::new();
    let mut i = 1;
    for f in factors {
        if let Factor::Reference { len, .. } = *f {
            let (sa_lo, sa_hi) = ti.pattern_range(&codes[i - 1..i - 1 + len]).expect("phrase occurs in the text");
            out.push(FactorQuery {
                start: i,
                len,
                sa_lo,
                sa_hi,
            });
        }
        i += f.len();
    }
    out
}

/// `isa[t - 1]` = SA row of suffix `t`, by inverting the BWT in text order.
pub fn text_order_isa(ti: &TextIndex) -> Vec<u32> {
    let mut isa = vec![0u32; ti.len()];
    ti.invert_forward_visit(|j, t| isa[t - 1] = j as u32);
    isa
}

/// Rightmost sources of `queries` by the text-order scan over their laminar
/// family.
pub fn rightmost_basic(ti: &TextIndex, queries: &[FactorQuery]) -> Vec<usize> {
    let isa = text_order_isa(ti);
    resolve_basic(&isa, queries).map(|(s, _)| s).expect("SA intervals are laminar")
}

/// The basic scan for `queries` given the text-order SA rows. Also returns the
/// number of tree nodes.
pub fn resolve_basic(isa: &[u32], queries: &[FactorQuery]) -> Result<(Vec<usize>, usize)> {
    let intervals: Vec<(usize, usize)> = queries.iter().map(|q| (q.sa_lo, q.sa_hi)).collect();
    let tree = QueryTree::build(&intervals, isa.len())?;
    let mut order: Vec<(usize, usize)> = queries.iter().enumerate().map(|(k, q)| (q.start, k)).collect();
    order.sort_unstable();
    let (found, _) = tree.scan(isa, &order);
    let mut out = vec![0; queries.len()];
    for (&(start, k), src) in order.iter().zip(found) {
        if src == 0 {
            return Err(Error::NotFound(format!("no earlier occurrence of the phrase at {start}")));
        }
        out[k] = src;
    }
    Ok((out, tree.len()))
}

/// Rightmost sources of phrases whose SA interval lies inside one block.
pub fn resolve_in_block(
    isa: &[u32],
    block: usize,
    queries: &[FactorQuery],
    granularity: usize,
) -> Result<(Vec<usize>, BlockPredIndex)> {
    let mut needed = vec![false; isa.len().div_ceil(block)];
    for q in queries {
        let k = (q.sa_lo - 1) / block;
        if k != (q.sa_hi - 1) / block {
            return Err(Error::Domain(format!("interval [{}, {}] crosses a block", q.sa_lo, q.sa_hi)));
        }
        needed[k] = true;
    }
    let idx = BlockPredIndex::build(isa, block, &needed, granularity, Execution::Sequential)?;
    let out = queries
        .iter()
        .map(|q| {
            idx.query(q.sa_lo, q.sa_hi, q.start)
                .ok_or_else(|| Error::NotFound(format!("no earlier occurrence of the phrase at {}", q.start)))
        })
        .collect::<Result<_>>()?;
    Ok((out, idx))
}

/// Rightmost sources of long phrases.
pub fn resolve_long(
    ti: &TextIndex,
    text: &Text,
    isa: &[u32],
    th: Thresholds,
    queries: &[FactorQuery],
) -> Result<(Vec<usize>, usize)> {
    if queries.is_empty() {
        return Ok((Vec::new(), 0));
    }
    let idx = LongFactorIndex::build(text.symbols(), text.sigma(), isa, th.r, th.ell)?;
    let out = queries
        .iter()
        .map(|q| idx.query(ti, text.symbols(), q.start, q.len))
        .collect::<Result<_>>()?;
    Ok((out, idx.size_in_bits()))
}

pub fn rightmost_parse(text: &Text, config: &RightmostConfig) -> Result<Vec<Factor>> {
    rightmost_parse_with_report(text, config).map(|(f, _)| f)
}

/// Byte-input convenience wrapper.
pub fn rightmost_parse_bytes(input: &[u8], config: &RightmostConfig) -> Result<Vec<Factor>> {
    rightmost_parse(&Text::from_bytes(input), config)
}

pub fn rightmost_parse_with_report(text: &Text, config: &RightmostConfig) -> Result<(Vec<Factor>, RightmostReport)> {
    let th = config.thresholds(text.len(), text.sigma().saturating_sub(1))?;
    let mut factors = lz_parse(text);
    let mut report = RightmostReport {
        thresholds: th,
        ..RightmostReport::default()
    };
    if factors.iter().all(Factor::is_literal) {
        return Ok((factors, report));
    }
    let ti = TextIndex::build(text);
    let queries = factor_queries(&ti, text, &factors);
    let isa = text_order_isa(&ti);
    report.references = queries.len();
    report.isa_bits = 32 * isa.len();

    let sources = match config.mode {
        RightmostMode::Basic => {
            let (s, nodes) = resolve_basic(&isa, &queries)?;
            report.basic = queries.len();
            report.tree_nodes = nodes;
            s
        }
        RightmostMode::Stratified => {
            let mut class = vec![0u8; queries.len()];
            let mut groups: [Vec<FactorQuery>; 3] = Default::default();
            for (k, q) in queries.iter().enumerate() {
                let c = if q.len >= th.ell {
                    0
                } else if (q.sa_lo - 1) / th.block != (q.sa_hi - 1) / th.block {
                    1
                } else {
                    2
                };
                class[k] = c;
                groups[c as usize].push(*q);
            }
            report.long = groups[0].len();
            report.boundary = groups[1].len();
            report.in_block = groups[2].len();
            let (long, (boundary, in_block)) = config.exec.join(
                || resolve_long(&ti, text, &isa, th, &groups[0]),
                || {
                    config.exec.join(
                        || resolve_basic(&isa, &groups[1]),
                        || resolve_in_block(&isa, th.block, &groups[2], config.granularity),
                    )
                },
            );
            let (long, long_bits) = long?;
            let (boundary, nodes) = boundary?;
            let (in_block, idx) = in_block?;
            report.long_bits = long_bits;
            report.tree_nodes = nodes;
            report.blocks_built = idx.built_blocks();
            report.in_block_bits = idx.size_in_bits();
            let mut its = [long.into_iter(), boundary.into_iter(), in_block.into_iter()];
            class.iter().map(|&c| its[c as usize].next().expect("one source per phrase")).collect()
        }
    };

    let mut next = sources.into_iter();
    for f in factors.iter_mut() {
        if let Factor::Reference { src, .. } = f {
            *src = next.next().expect("one source per reference");
        }
    }
    Ok((factors, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_sources() {
        let text = Text::from_bytes(b"araarraaa");
        for cfg in [RightmostConfig::basic(), RightmostConfig::stratified()] {
            let f = rightmost_parse(&text, &cfg).unwrap();
            let srcs: Vec<usize> = f
                .iter()
                .filter_map(|f| match *f {
                    Factor::Reference { src, .. } => Some(src),
                    Factor::Literal(_) => None,
                })
                .collect();
            assert_eq!(srcs, vec![1, 1, 2, 8]);
        }
    }

    #[test]
    fn config_errors() {
        let bad_r = RightmostConfig {
            r: Some(9),
            ell: Some(8),
            ..RightmostConfig::default()
        };
        assert!(matches!(bad_r.thresholds(100, 2), Err(Error::Config(_))));
        let bad_b = RightmostConfig {
            block: Some(1),
            ..RightmostConfig::default()
        };
        assert!(matches!(bad_b.thresholds(100, 2), Err(Error::Config(_))));
        let d = RightmostConfig::default().thresholds(1024, 4).unwrap();
        assert_eq!((d.ell, d.r, d.block), (100, 10, 400));
    }
}
