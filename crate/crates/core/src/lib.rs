//! Compact-space Lempel–Ziv (LZ77) factorization over an FM-index, rightmost
//! source selection, and the succinct structures both are built from.
//!
//! All public positions and ordinals are 1-based. Internally the code is
//! 0-based wherever that is simpler; the conversion happens at the API edge.
//!
//! Module map:
//!
//! - [`succinct`]: bitvectors with rank/select, table-driven block scans,
//!   range-minimum indexes (plain and block-sampled).
//! - [`wavelet`]: balanced wavelet tree with the two-phase range-predecessor
//!   query.
//! - [`elias_fano`]: Elias–Fano sequences and per-character predecessor sets,
//!   with a simple and a bit-parallel builder.
//! - [`range_pred`]: the multi-granularity range-predecessor index.
//! - [`text_index`]: suffix array, BWT, LF/Ψ stepping and backward search.
//! - [`lz_compact`]: the compact LZ77 parser.
//! - [`rightmost`]: rightmost-source resolution (basic and stratified).
//! - [`oracle`]: brute-force references (feature `oracle`).

pub mod elias_fano;
pub mod error;
pub mod exec;
pub mod lz_compact;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod range_pred;
pub mod rightmost;
pub mod succinct;
pub mod text_index;
pub mod wavelet;

pub use error::{Error, Result};
pub use exec::Execution;
pub use lz_compact::{decode, lz_parse, Factor, ParseReport};
pub use rightmost::{rightmost_parse, rightmost_parse_with_report, RightmostConfig, RightmostMode, RightmostReport};
pub use text_index::{Text, TextIndex};

/// Anything that can report its own size in bits.
pub trait SpaceUsage {
    fn size_in_bits(&self) -> usize;
}

/// `⌈log2 x⌉` for `x ≥ 1`, and 0 for `x ≤ 1`.
#[inline]
pub fn ceil_log2(x: usize) -> u32 {
    if x <= 1 {
        0
    } else {
        usize::BITS - (x - 1).leading_zeros()
    }
}

/// Bits needed to write any value in `0..=max`.
#[inline]
pub fn bits_for(max: u64) -> u32 {
    (u64::BITS - max.leading_zeros()).max(1)
}

impl<T: SpaceUsage> SpaceUsage for Vec<T> {
    fn size_in_bits(&self) -> usize {
        self.iter().map(SpaceUsage::size_in_bits).sum()
    }
}
