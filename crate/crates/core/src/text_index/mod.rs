//! Suffix array, BWT and the FM-index operations over a text that ends with a
//! unique smallest sentinel.

mod sais;

use crate::succinct::{BitVector, PackedInts, RawBits};
use crate::wavelet::WaveletTree;
use crate::{bits_for, ceil_log2, Error, Result, SpaceUsage};

/// A text over dense codes `0..sigma`, where code 0 is the sentinel and
/// occurs exactly once, at the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    symbols: Vec<u32>,
    sigma: usize,
    /// `original[c]` is the input symbol behind code `c ≥ 1`.
    original: Vec<u32>,
}

impl Text {
    /// From dense codes that already include the trailing sentinel 0.
    pub fn new(symbols: Vec<u32>) -> Result<Self> {
        match symbols.last() {
            Some(0) => {}
            _ => return Err(Error::Domain("text must end with the sentinel 0".into())),
        }
        let sigma = *symbols.iter().max().unwrap() as usize + 1;
        let mut seen = vec![0usize; sigma];
        for &c in &symbols {
            seen[c as usize] += 1;
        }
        if seen[0] != 1 {
            return Err(Error::Domain("sentinel must occur exactly once".into()));
        }
        if let Some(c) = seen.iter().position(|&k| k == 0) {
            return Err(Error::Domain(format!("alphabet is not dense: code {c} missing")));
        }
        Ok(Self {
            symbols,
            sigma,
            original: (0..sigma as u32).collect(),
        })
    }

    /// Remaps arbitrary symbols to dense codes in order of first occurrence
    /// and appends the sentinel.
    pub fn from_symbols(input: &[u32]) -> Self {
        let mut code_of = std::collections::HashMap::new();
        let mut original = vec![0u32];
        let mut symbols = Vec::with_capacity(input.len() + 1);
        for &s in input {
            let c = *code_of.entry(s).or_insert_with(|| {
                original.push(s);
                original.len() as u32 - 1
            });
            symbols.push(c);
        }
        symbols.push(0);
        Self {
            symbols,
            sigma: original.len(),
            original,
        }
    }

    pub fn from_bytes(input: &[u8]) -> Self {
        let mut code_of = [0u32; 256];
        let mut original = vec![0u32];
        let mut symbols = Vec::with_capacity(input.len() + 1);
        for &b in input {
            if code_of[b as usize] == 0 {
                original.push(b as u32);
                code_of[b as usize] = original.len() as u32 - 1;
            }
            symbols.push(code_of[b as usize]);
        }
        symbols.push(0);
        Self {
            symbols,
            sigma: original.len(),
            original,
        }
    }

    /// Length including the sentinel.
    #[inline]
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// True when the text holds only the sentinel.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.symbols.len() == 1
    }

    /// Alphabet size including the sentinel.
    #[inline]
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// All codes including the sentinel.
    #[inline]
    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    /// Codes without the sentinel.
    #[inline]
    pub fn body(&self) -> &[u32] {
        &self.symbols[..self.symbols.len() - 1]
    }

    /// Input symbol for code `c`.
    #[inline]
    pub fn original_symbol(&self, c: u32) -> u32 {
        self.original[c as usize]
    }

    /// `reverse(body) + sentinel`, with the same code assignment.
    pub fn reversed(&self) -> Self {
        let mut symbols: Vec<u32> = self.body().iter().rev().copied().collect();
        symbols.push(0);
        Self {
            symbols,
            sigma: self.sigma,
            original: self.original.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TextIndex {
    n: usize,
    sigma: usize,
    sa: Vec<u32>,
    /// BWT with the sentinel row removed, codes shifted down by one.
    bwt: WaveletTree,
    /// SA position (1-based) of the row whose BWT symbol is the sentinel.
    sentinel_row: usize,
    /// `count[c]` = symbols smaller than `c`; `count[sigma] = n`.
    count: Vec<usize>,
    stride: usize,
    marker: BitVector,
    samples: PackedInts,
    isa_first: usize,
}

impl TextIndex {
    pub fn build(text: &Text) -> Self {
        let syms = text.symbols();
        let n = syms.len();
        let sigma = text.sigma();
        let sa0 = sais::suffix_array(syms, sigma as u32 - 1);
        let mut count = vec![0usize; sigma + 1];
        for &c in syms {
            count[c as usize + 1] += 1;
        }
        for c in 1..=sigma {
            count[c] += count[c - 1];
        }
        let mut codes = Vec::with_capacity(n - 1);
        let mut sentinel_row = 0;
        let mut isa_first = 0;
        for (j, &p) in sa0.iter().enumerate() {
            if p == 0 {
                sentinel_row = j + 1;
                isa_first = j + 1;
            } else {
                codes.push(syms[p as usize - 1] as u64 - 1);
            }
        }
        let bwt = WaveletTree::build(&codes, (sigma as u64 - 1).max(1)).expect("codes are dense");
        drop(codes);

        let stride = ceil_log2(n).max(1) as usize;
        let mut marker = RawBits::zeros(n);
        let mut samples = PackedInts::new(bits_for(n as u64));
        for (j, &p) in sa0.iter().enumerate() {
            if (p as usize).is_multiple_of(stride) {
                marker.set(j, true);
                samples.push(p as u64 + 1);
            }
        }
        Self {
            n,
            sigma,
            sa: sa0.into_iter().map(|p| p + 1).collect(),
            bwt,
            sentinel_row,
            count,
            stride,
            marker: BitVector::from(marker),
            samples,
            isa_first,
        }
    }

    /// Text length including the sentinel.
    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// The full suffix array (1-based values).
    pub fn sa(&self) -> &[u32] {
        &self.sa
    }

    pub fn count(&self) -> &[usize] {
        &self.count
    }

    pub fn isa_first(&self) -> usize {
        self.isa_first
    }

    pub fn sample_stride(&self) -> usize {
        self.stride
    }

    pub fn bwt(&self) -> &WaveletTree {
        &self.bwt
    }

    /// Bits of the BWT wavelet tree.
    pub fn bwt_bits(&self) -> usize {
        self.bwt.size_in_bits()
    }

    /// Wavelet-tree offset of BWT row `i` (1-based, not the sentinel row).
    #[inline]
    fn wt_pos(&self, i: usize) -> usize {
        if i > self.sentinel_row {
            i - 2
        } else {
            i - 1
        }
    }

    /// `L[i]`.
    #[inline]
    pub fn bwt_symbol(&self, i: usize) -> u32 {
        if i == self.sentinel_row {
            0
        } else {
            self.bwt.access0(self.wt_pos(i)) as u32 + 1
        }
    }

    /// Occurrences of `c` in `L[1..=i]`.
    #[inline]
    pub fn rank_bwt(&self, c: u32, i: usize) -> usize {
        if c == 0 {
            return (i >= self.sentinel_row) as usize;
        }
        let k = if i >= self.sentinel_row { i - 1 } else { i };
        self.bwt.rank0(c as u64 - 1, k)
    }

    /// Maps the SA interval `[s, e]` of a pattern `P` to that of `cP`.
    #[inline]
    pub fn backward_search_step(&self, s: usize, e: usize, c: u32) -> Option<(usize, usize)> {
        if c as usize >= self.sigma {
            return None;
        }
        let base = self.count[c as usize];
        let s2 = base + self.rank_bwt(c, s - 1) + 1;
        let e2 = base + self.rank_bwt(c, e);
        (s2 <= e2).then_some((s2, e2))
    }

    /// SA interval of `pattern` (dense codes), `None` if it does not occur.
    pub fn pattern_range(&self, pattern: &[u32]) -> Option<(usize, usize)> {
        let mut range = (1, self.n);
        for &c in pattern.iter().rev() {
            range = self.backward_search_step(range.0, range.1, c)?;
        }
        Some(range)
    }

    /// The SA position holding suffix `SA[i] - 1` (suffix `n` for `SA[i] = 1`).
    #[inline]
    pub fn lf_step(&self, i: usize) -> usize {
        if i == self.sentinel_row {
            return 1;
        }
        let (c, r) = self.bwt.inverse_select0(self.wt_pos(i));
        self.count[c as usize + 1] + r + 1
    }

    /// The SA position holding suffix `SA[i] + 1` (suffix 1 for `SA[i] = n`).
    #[inline]
    pub fn psi_step(&self, i: usize) -> usize {
        if i == 1 {
            return self.isa_first;
        }
        // First symbol of suffix SA[i].
        let c = self.count.partition_point(|&x| x < i) - 1;
        let k = i - self.count[c];
        let w = self.bwt.select0(c as u64 - 1, k - 1).expect("psi is a bijection");
        if w + 1 < self.sentinel_row {
            w + 1
        } else {
            w + 2
        }
    }

    /// Calls `visit(sa_pos, text_pos)` for text positions `n, n-1, ..., 1`.
    pub fn invert_bwt_visit<F: FnMut(usize, usize)>(&self, mut visit: F) {
        let mut j = 1;
        for p in (1..=self.n).rev() {
            visit(j, p);
            j = self.lf_step(j);
        }
    }

    /// Calls `visit(sa_pos, text_pos)` for text positions `1, 2, ..., n`.
    pub fn invert_forward_visit<F: FnMut(usize, usize)>(&self, mut visit: F) {
        let mut j = self.isa_first;
        for p in 1..=self.n {
            visit(j, p);
            j = self.psi_step(j);
        }
    }

    /// `SA[j]` from the samples, by at most `stride - 1` LF steps.
    pub fn sa_lookup(&self, j: usize) -> Result<usize> {
        Error::check_index(j, 1, self.n)?;
        let mut j = j;
        let mut steps = 0;
        while !self.marker.get0(j - 1) {
            j = self.lf_step(j);
            steps += 1;
        }
        Ok(self.samples.get(self.marker.rank1(j - 1)) as usize + steps)
    }
}
