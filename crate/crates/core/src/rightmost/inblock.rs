//! Factors whose SA interval lies inside one block of `B` suffix-array rows.

use crate::elias_fano::EliasFanoSeq;
use crate::range_pred::{PointSet, RangePredIndex};
use crate::{Execution, Result, SpaceUsage};

/// Per SA block: text positions of the block's suffixes (an Elias–Fano set)
/// and a range-predecessor index over (row in block, rank of text position).
#[derive(Debug, Clone)]
pub struct BlockPredIndex {
    block: usize,
    n: usize,
    blocks: Vec<Option<Block>>,
}

#[derive(Debug, Clone)]
struct Block {
    positions: EliasFanoSeq,
    rp: RangePredIndex,
}

impl BlockPredIndex {
    /// `isa[t - 1]` = SA row of suffix `t`. Only blocks with `needed[k]` set
    /// get an index.
    pub fn build(isa: &[u32], block: usize, needed: &[bool], c: usize, exec: Execution) -> Result<Self> {
        let n = isa.len();
        let nblocks = n.div_ceil(block);
        // Visiting text positions in increasing order numbers each block's
        // positions by rank.
        let mut counter = vec![0u32; nblocks];
        let mut y_rank = vec![0u32; n];
        let mut sorted_pos = vec![0u32; n];
        for (t0, &j) in isa.iter().enumerate() {
            let row = j as usize - 1;
            let k = row / block;
            counter[k] += 1;
            y_rank[row] = counter[k];
            sorted_pos[k * block + counter[k] as usize - 1] = t0 as u32 + 1;
        }
        let ids: Vec<usize> = (0..nblocks).filter(|&k| needed.get(k).copied().unwrap_or(false)).collect();
        let built = exec.map(&ids, |&k| -> Result<Block> {
            let lo = k * block;
            let hi = (lo + block).min(n);
            let keys: Vec<u64> = sorted_pos[lo..hi].iter().map(|&t| t as u64).collect();
            let positions = EliasFanoSeq::build(&keys, n as u64, (hi - lo) as u64)?;
            let ys: Vec<usize> = y_rank[lo..hi].iter().map(|&y| y as usize).collect();
            let rp = RangePredIndex::build(PointSet::from_y_of_x(&ys)?, c, Execution::Sequential);
            Ok(Block { positions, rp })
        });
        let mut blocks = vec![None; nblocks];
        for (k, b) in ids.into_iter().zip(built) {
            blocks[k] = Some(b?);
        }
        Ok(Self { block, n, blocks })
    }

    pub fn block_size(&self) -> usize {
        self.block
    }

    /// Block of SA row `j` (0-based block number).
    pub fn block_of(&self, j: usize) -> usize {
        (j - 1) / self.block
    }

    pub fn built_blocks(&self) -> usize {
        self.blocks.iter().flatten().count()
    }

    /// Largest text position `< i` whose suffix lies in rows `[s, e]`, which
    /// must be inside one built block.
    pub fn query(&self, s: usize, e: usize, i: usize) -> Option<usize> {
        let k = self.block_of(s);
        debug_assert_eq!(k, self.block_of(e));
        debug_assert!(e <= self.n);
        let b = self.blocks[k].as_ref().expect("block index was not built");
        let off = k * self.block;
        let y2 = b.positions.rank(i as u64 - 1);
        if y2 == 0 {
            return None;
        }
        let (_, y) = b.rp.query_unchecked(s - off, e - off, y2)?;
        Some(b.positions.select_unchecked(y) as usize)
    }
}

impl SpaceUsage for BlockPredIndex {
    fn size_in_bits(&self) -> usize {
        self.blocks
            .iter()
            .flatten()
            .map(|b| b.positions.size_in_bits() + b.rp.size_in_bits())
            .sum::<usize>()
            + 64 * self.blocks.len()
    }
}
