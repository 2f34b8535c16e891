//! One granularity tier: a tree over fixed-width chunks of the values.
//!
//! Level `j` of the tree stores the `j`-th chunk of every value, with the
//! values ordered by their first `j` chunks (stably). The nodes of a level
//! (values sharing a prefix) are therefore contiguous ranges of one level
//! sequence, and every per-node structure is a range query on a per-level
//! structure.

use crate::elias_fano::CharPredecessorSet;
use crate::succinct::{PackedInts, SampledRmq};
use crate::wavelet::{split_digits, WaveletTree};
use crate::{bits_for, Execution, SpaceUsage};

/// Per-node fallback used at a pivot level: either a wavelet tree over the
/// chunk sequence or the next, finer tier.
#[derive(Debug, Clone)]
pub(crate) enum Inner {
    Wavelet(WaveletTree),
    Tree(Box<TierTree>),
}

impl Inner {
    /// `values` are `width`-bit; `tiers` are the chunk widths of the
    /// remaining tree tiers (empty means a plain wavelet tree).
    pub(crate) fn build(values: Vec<u64>, width: u32, tiers: &[u32], exec: Execution) -> Self {
        if tiers.is_empty() {
            Inner::Wavelet(WaveletTree::build(&values, 1u64 << width).expect("values fit the width"))
        } else {
            Inner::Tree(Box::new(TierTree::build(values, width, tiers, exec)))
        }
    }

    /// Largest value `≤ y` among 0-based positions `[a, b)`.
    #[inline]
    pub(crate) fn range_pred_value(&self, a: usize, b: usize, y: u64) -> Option<u64> {
        match self {
            Inner::Wavelet(wt) => wt.range_pred0(a, b, y).map(|(_, v)| v),
            Inner::Tree(t) => t.range_pred_value(a, b, y),
        }
    }
}

impl SpaceUsage for Inner {
    fn size_in_bits(&self) -> usize {
        match self {
            Inner::Wavelet(wt) => wt.size_in_bits(),
            Inner::Tree(t) => t.size_in_bits(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Level {
    /// Chunk sequence, nodes concatenated in label order.
    pub(crate) seq: PackedInts,
    pub(crate) cps: CharPredecessorSet,
    rmin: SampledRmq,
    rmax: SampledRmq,
    inner: Inner,
    /// Node `i` covers `[starts[i], starts[i + 1])`.
    pub(crate) starts: PackedInts,
    /// Prefix of the values in each node (the chunks above this level).
    pub(crate) labels: PackedInts,
    /// Children of node `i` are nodes `[first_child[i], first_child[i + 1])`
    /// of the next level. Empty on the deepest level.
    first_child: PackedInts,
}

#[derive(Debug, Clone)]
pub(crate) struct TierTree {
    width: u32,
    pub(crate) chunks: Vec<u32>,
    shifts: Vec<u32>,
    pub(crate) levels: Vec<Level>,
}

struct LevelInput {
    values: Vec<u64>,
    starts: Vec<u64>,
    labels: Vec<u64>,
    first_child: Vec<u64>,
}

impl TierTree {
    pub(crate) fn build(values: Vec<u64>, width: u32, tiers: &[u32], exec: Execution) -> Self {
        let n = values.len();
        let t = tiers[0].clamp(1, width.max(1));
        let h = width.div_ceil(t).max(1) as usize;
        let mut chunks = vec![t; h - 1];
        chunks.push(width - (h as u32 - 1) * t);
        let mut shifts = Vec::with_capacity(h);
        let mut used = 0;
        for &c in &chunks {
            used += c;
            shifts.push(width - used);
        }

        let mut nodes: Vec<(u64, Vec<u64>)> = if n == 0 { vec![] } else { vec![(0, values)] };
        let mut inputs = Vec::with_capacity(h);
        for j in 0..h {
            let mut cat = Vec::with_capacity(n);
            let mut starts = Vec::with_capacity(nodes.len() + 1);
            let mut labels = Vec::with_capacity(nodes.len());
            for (label, vals) in &nodes {
                starts.push(cat.len() as u64);
                labels.push(*label);
                cat.extend_from_slice(vals);
            }
            starts.push(n as u64);
            let mut first_child = Vec::new();
            if j + 1 < h {
                let (shift, cw) = (shifts[j], chunks[j]);
                let split = exec.map_owned(nodes, |(label, vals)| {
                    split_digits(vals, shift, cw)
                        .into_iter()
                        .map(|(d, part)| (label << cw | d, part))
                        .collect::<Vec<_>>()
                });
                let mut next = Vec::new();
                first_child.reserve(split.len() + 1);
                for kids in split {
                    first_child.push(next.len() as u64);
                    next.extend(kids);
                }
                first_child.push(next.len() as u64);
                nodes = next;
            } else {
                nodes = Vec::new();
            }
            inputs.push((
                j,
                LevelInput {
                    values: cat,
                    starts,
                    labels,
                    first_child,
                },
            ));
        }

        let levels = exec.map_owned(inputs, |(j, input)| {
            build_level(input, chunks[j], shifts[j], width - shifts[j] - chunks[j], &tiers[1..], exec)
        });
        Self {
            width,
            chunks,
            shifts,
            levels,
        }
    }

    #[inline]
    fn digit(&self, y: u64, j: usize) -> u64 {
        y >> self.shifts[j] & mask(self.chunks[j])
    }

    /// Child of node `node` at level `j` along digit `d`, if present.
    #[inline]
    fn child(&self, j: usize, node: usize, d: u64) -> Option<usize> {
        let lv = &self.levels[j];
        let next = &self.levels[j + 1];
        let (mut lo, mut hi) = (lv.first_child.get(node) as usize, lv.first_child.get(node + 1) as usize);
        let cw = self.chunks[j];
        while lo < hi {
            let mid = (lo + hi) / 2;
            let md = next.labels.get(mid) & mask(cw);
            if md < d {
                lo = mid + 1;
            } else if md > d {
                hi = mid;
            } else {
                return Some(mid);
            }
        }
        None
    }

    /// Maps the range `[a, b)` of node `node` at level `j` into its child
    /// along digit `d`. Returns the child and its range, or `None` if no value
    /// in the range has digit `d`.
    #[inline]
    fn descend(&self, j: usize, node: usize, a: usize, b: usize, d: u64) -> Option<(usize, usize, usize)> {
        let lv = &self.levels[j];
        let idx = lv.cps.index_of(d)?;
        let set = lv.cps.set_at(idx);
        let ra = set.rank(a as u64);
        let rb = set.rank(b as u64);
        if ra == rb {
            return None;
        }
        if j + 1 == self.levels.len() {
            return Some((node, a, b));
        }
        let ns = lv.starts.get(node);
        let before = ra - set.rank(ns);
        let child = self.child(j, node, d)?;
        let cs = self.levels[j + 1].starts.get(child) as usize;
        Some((child, cs + before, cs + before + (rb - ra)))
    }

    /// Largest value `≤ y` among 0-based positions `[a, b)` of the input.
    pub(crate) fn range_pred_value(&self, a: usize, b: usize, y: u64) -> Option<u64> {
        if a >= b {
            return None;
        }
        let y = y.min(mask(self.width));
        let h = self.levels.len();
        // (node, a, b, range minimum) per visited level.
        let mut path: Vec<(usize, usize, usize, u64)> = Vec::with_capacity(h);
        let (mut node, mut a, mut b) = (0usize, a, b);
        let mut failed = None;
        for j in 0..h {
            let lv = &self.levels[j];
            let d = self.digit(y, j);
            let m = lv.seq.get(lv.rmin.query0(&lv.seq, a, b - 1));
            path.push((node, a, b, m));
            if m > d {
                failed = Some(j);
                break;
            }
            match self.descend(j, node, a, b, d) {
                Some((c, ca, cb)) => {
                    node = c;
                    a = ca;
                    b = cb;
                }
                None => {
                    failed = Some(j);
                    break;
                }
            }
        }
        let Some(fail) = failed else {
            return Some(y);
        };

        // Deepest level where some value in range has a smaller digit.
        let pivot = (0..=fail).rev().find(|&j| path[j].3 < self.digit(y, j))?;
        let (pnode, pa, pb, _) = path[pivot];
        let lv = &self.levels[pivot];
        let d = lv.inner.range_pred_value(pa, pb, self.digit(y, pivot) - 1)?;
        let high = if self.shifts[pivot] + self.chunks[pivot] >= 64 {
            0
        } else {
            y >> (self.shifts[pivot] + self.chunks[pivot])
        };
        let mut value = high << self.chunks[pivot] | d;
        if pivot + 1 == h {
            return Some(value);
        }
        let (mut node, mut a, mut b) = self.descend(pivot, pnode, pa, pb, d)?;
        for j in pivot + 1..h {
            let lv = &self.levels[j];
            let d = lv.seq.get(lv.rmax.query0(&lv.seq, a, b - 1));
            value = value << self.chunks[j] | d;
            if j + 1 < h {
                (node, a, b) = self.descend(j, node, a, b, d)?;
            }
        }
        Some(value)
    }
}

fn build_level(input: LevelInput, cw: u32, shift: u32, label_width: u32, tiers: &[u32], exec: Execution) -> Level {
    let chunk: Vec<u64> = input.values.iter().map(|&v| v >> shift & mask(cw)).collect();
    drop(input.values);
    let sigma = 1u64 << cw;
    let seq = PackedInts::from_slice(&chunk, cw);
    let cps = if cw <= 8 {
        CharPredecessorSet::build_bitparallel(&chunk, sigma)
    } else {
        CharPredecessorSet::build_simple(&chunk, sigma)
    }
    .expect("chunks fit the alphabet");
    let block = rmq_block(cw);
    let (rmin, rmax) = exec.join(|| SampledRmq::min(&seq, block), || SampledRmq::max(&seq, block));
    let inner = Inner::build(chunk, cw, tiers, exec);
    let n = seq.len() as u64;
    Level {
        starts: PackedInts::from_slice(&input.starts, bits_for(n)),
        labels: PackedInts::from_slice(&input.labels, label_width.max(1)),
        first_child: PackedInts::from_slice(&input.first_child, bits_for(n)),
        seq,
        cps,
        rmin,
        rmax,
        inner,
    }
}

/// Four table lanes per sampled block for narrow chunks.
fn rmq_block(cw: u32) -> usize {
    if cw <= 8 {
        4 * (16 / cw.max(1)) as usize
    } else {
        8
    }
}

#[inline]
pub(crate) fn mask(w: u32) -> u64 {
    if w >= 64 {
        u64::MAX
    } else {
        (1u64 << w) - 1
    }
}

impl SpaceUsage for Level {
    fn size_in_bits(&self) -> usize {
        self.seq.size_in_bits()
            + self.cps.size_in_bits()
            + self.rmin.size_in_bits()
            + self.rmax.size_in_bits()
            + self.inner.size_in_bits()
            + self.starts.size_in_bits()
            + self.labels.size_in_bits()
            + self.first_child.size_in_bits()
    }
}

impl SpaceUsage for TierTree {
    fn size_in_bits(&self) -> usize {
        self.levels.iter().map(|l| l.size_in_bits()).sum::<usize>() + 64 * (2 + 2 * self.chunks.len())
    }
}
