//! LZ77 factorization in compact space.
//!
//! The parser runs backward search over the FM-index of the reversed text,
//! which extends the current phrase one symbol to the right. A match of
//! length `k` at `i` is a previous factor iff its SA interval (over the
//! reversed text) holds a suffix that corresponds to an occurrence ending at or
//! before `i + k - 2`. Those suffixes are exactly the ones already visited by
//! a BWT inversion running in step with the parse, marked in the bitvector
//! `B`. Short pieces of the interval are tested on `B` directly; whole blocks
//! are tested with a range-maximum over the per-block maxima of the SA.
//!
//! Sources are not resolved during the parse: each reference keeps one
//! visited SA position of its interval, and a final inversion converts those
//! to text positions.

use crate::succinct::{BitVector, RawBits, RmqIndex};
use crate::text_index::{Text, TextIndex};
use crate::{bits_for, ceil_log2, Error, Result, SpaceUsage};

/// One phrase. Literal symbols are the input symbols (bytes for byte input),
/// not internal codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    Literal(u32),
    Reference { src: usize, len: usize },
}

impl Factor {
    /// Number of text symbols covered.
    #[inline]
    pub fn len(&self) -> usize {
        match *self {
            Factor::Literal(_) => 1,
            Factor::Reference { len, .. } => len,
        }
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn is_literal(&self) -> bool {
        matches!(self, Factor::Literal(_))
    }
}

/// Bit counts of the parser's structures beyond the FM-index itself.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseReport {
    /// Text length without the sentinel.
    pub n: usize,
    pub z: usize,
    pub block_size: usize,
    pub block_max_bits: usize,
    pub rmax_bits: usize,
    pub visited_bits: usize,
    pub candidate_bits: usize,
    /// Bits of the wavelet tree over the BWT of the reversed text.
    pub bwt_bits: usize,
}

impl ParseReport {
    pub fn aux_bits(&self) -> usize {
        self.block_max_bits + self.rmax_bits + self.visited_bits + self.candidate_bits
    }
}

/// Per-block maxima of the suffix array, for range-maximum over whole
/// blocks. The maxima are the keys of the RMQ index and are not stored twice.
#[derive(Debug, Clone)]
pub struct BlockMaxima {
    block_size: usize,
    rmax: RmqIndex,
}

impl BlockMaxima {
    /// `⌊log2 n / 2⌋` clamped to `[1, 64]`.
    pub fn default_block_size(n: usize) -> usize {
        (ceil_log2(n) as usize / 2).clamp(1, 64)
    }

    /// Fills the maxima with one inversion pass.
    pub fn build(ti: &TextIndex, block_size: usize) -> Self {
        let n = ti.len();
        let mut a = vec![0u64; n.div_ceil(block_size)];
        ti.invert_bwt_visit(|j, p| {
            let slot = &mut a[(j - 1) / block_size];
            *slot = (*slot).max(p as u64);
        });
        Self {
            block_size,
            rmax: RmqIndex::max(&a),
        }
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn blocks(&self) -> usize {
        self.rmax.len()
    }

    /// Maximum SA value in block `k` (1-based).
    pub fn get(&self, k: usize) -> u64 {
        self.rmax.value0(k - 1)
    }

    /// 0-based index of the leftmost block with the largest maximum among
    /// blocks `[lo, hi]` (0-based).
    #[inline]
    fn argmax(&self, lo: usize, hi: usize) -> usize {
        self.rmax.query0(lo, hi)
    }

    /// Bits of the stored maxima alone.
    pub fn maxima_bits(&self) -> usize {
        self.rmax.key_bits()
    }
}

impl SpaceUsage for BlockMaxima {
    fn size_in_bits(&self) -> usize {
        self.rmax.size_in_bits()
    }
}

/// Parser state: the inversion cursor over the reversed text and the
/// visited bitvector it maintains.
pub struct GateState<'a> {
    ti: &'a TextIndex,
    blocks: BlockMaxima,
    visited: RawBits,
    /// Next SA position and reversed-text position the inversion will visit.
    cursor: usize,
    next_q: usize,
}

impl<'a> GateState<'a> {
    /// `ti` indexes the reversed text.
    pub fn new(ti: &'a TextIndex) -> Self {
        let blocks = BlockMaxima::build(ti, BlockMaxima::default_block_size(ti.len()));
        Self::with_blocks(ti, blocks)
    }

    pub fn with_blocks(ti: &'a TextIndex, blocks: BlockMaxima) -> Self {
        Self {
            ti,
            blocks,
            visited: RawBits::zeros(ti.len()),
            cursor: 1,
            next_q: ti.len(),
        }
    }

    /// Marks every reversed-text suffix `q ≥ threshold` as visited.
    #[inline]
    pub fn advance_to(&mut self, threshold: usize) {
        while self.next_q >= threshold && self.next_q >= 1 {
            self.visited.set(self.cursor - 1, true);
            self.cursor = self.ti.lf_step(self.cursor);
            self.next_q -= 1;
        }
    }

    /// Smallest reversed-text position visited so far (`n + 1` if none).
    pub fn frontier(&self) -> usize {
        self.next_q + 1
    }

    /// A visited SA position in `[s, e]` (1-based), if any.
    #[inline]
    pub fn gate(&self, s: usize, e: usize) -> Option<usize> {
        let b = self.blocks.block_size;
        let (s0, e0) = (s - 1, e);
        let (first_full, last_full) = (s0.div_ceil(b), e0 / b);
        if first_full >= last_full {
            return self.visited.find_one(s0, e0).map(|p| p + 1);
        }
        if let Some(p) = self.visited.find_one(s0, first_full * b) {
            return Some(p + 1);
        }
        let k = self.blocks.argmax(first_full, last_full - 1);
        if self.blocks.get(k + 1) as usize >= self.frontier() {
            let p = self.visited.find_one(k * b, (k + 1) * b).expect("block maximum was visited");
            return Some(p + 1);
        }
        self.visited.find_one(last_full * b, e0).map(|p| p + 1)
    }
}

/// Greedy LZ77 parse with arbitrary (not necessarily rightmost) sources.
pub fn lz_parse(text: &Text) -> Vec<Factor> {
    lz_parse_with_report(text).0
}

pub fn lz_parse_bytes(input: &[u8]) -> Vec<Factor> {
    lz_parse(&Text::from_bytes(input))
}

pub fn lz_parse_with_report(text: &Text) -> (Vec<Factor>, ParseReport) {
    let x = text.body();
    let m = x.len();
    let rev = text.reversed();
    let ti = TextIndex::build(&rev);
    let n = ti.len();
    let mut state = GateState::new(&ti);

    // Phrases as (start, len, candidate SA position); len 0 marks a literal.
    let mut phrases: Vec<(usize, usize, usize)> = Vec::new();
    let mut i = 1;
    while i <= m {
        let (mut s, mut e) = (1, n);
        let mut k = 0;
        let mut witness = 0;
        while i + k <= m {
            // Length k+1 needs an occurrence ending at or before i + k - 1,
            // i.e. a reversed suffix q ≥ m - i - k + 2.
            state.advance_to(m + 2 - i - k);
            let Some((s2, e2)) = ti.backward_search_step(s, e, x[i + k - 1]) else {
                break;
            };
            match state.gate(s2, e2) {
                Some(w) => {
                    witness = w;
                    s = s2;
                    e = e2;
                    k += 1;
                }
                None => break,
            }
        }
        phrases.push((i, k, witness));
        i += k.max(1);
    }

    // Resolve candidates with one more inversion.
    let mut cand = RawBits::zeros(n);
    for &(_, len, w) in &phrases {
        if len > 0 {
            cand.set(w - 1, true);
        }
    }
    let cand = BitVector::from(cand);
    let mut q_of = vec![0u32; cand.count_ones()];
    ti.invert_bwt_visit(|j, q| {
        if cand.get0(j - 1) {
            q_of[cand.rank1(j - 1)] = q as u32;
        }
    });
    let factors: Vec<Factor> = phrases
        .iter()
        .map(|&(i, len, w)| {
            if len == 0 {
                Factor::Literal(text.original_symbol(x[i - 1]))
            } else {
                let q = q_of[cand.rank1(w - 1)] as usize;
                let end = m + 1 - q;
                Factor::Reference { src: end + 1 - len, len }
            }
        })
        .collect();

    let blocks = &state.blocks;
    let report = ParseReport {
        n: m,
        z: factors.len(),
        block_size: blocks.block_size(),
        block_max_bits: blocks.maxima_bits(),
        rmax_bits: blocks.size_in_bits() - blocks.maxima_bits(),
        visited_bits: state.visited.size_in_bits(),
        candidate_bits: cand.size_in_bits() + q_of.len() * bits_for(n as u64) as usize,
        bwt_bits: ti.bwt_bits(),
    };
    (factors, report)
}

/// Expands factors back into symbols. References may overlap their target.
pub fn decode(factors: &[Factor]) -> Result<Vec<u32>> {
    let mut out: Vec<u32> = Vec::new();
    for f in factors {
        match *f {
            Factor::Literal(c) => out.push(c),
            Factor::Reference { src, len } => {
                let i = out.len() + 1;
                if src == 0 || src >= i || len == 0 {
                    return Err(Error::Domain(format!("invalid reference ({src}, {len}) at position {i}")));
                }
                for k in 0..len {
                    out.push(out[src - 1 + k]);
                }
            }
        }
    }
    Ok(out)
}

pub fn decode_bytes(factors: &[Factor]) -> Result<Vec<u8>> {
    decode(factors)?
        .into_iter()
        .map(|c| u8::try_from(c).map_err(|_| Error::Domain(format!("literal {c} is not a byte"))))
        .collect()
}
