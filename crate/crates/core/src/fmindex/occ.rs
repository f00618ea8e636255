//! Occurrence counts over the BWT.
//!
//! One block per 64 symbols. A block stores, for every symbol, the number of
//! its occurrences before the block and a bitvector of its positions inside the
//! block, so `occ(c, i)` is one lookup plus one popcount.

use crate::alphabet::SIGMA;

/// Symbols covered by one checkpoint block.
pub const BLOCK_LEN: usize = 64;

#[derive(Debug, Clone, Copy, Default)]
struct Block {
    before: [u32; SIGMA],
    bits: [u64; SIGMA],
}

#[derive(Debug, Clone)]
pub struct OccTable {
    blocks: Vec<Block>,
    len: usize,
}

impl OccTable {
    /// `bwt` holds symbol codes in `0..SIGMA`.
    pub fn new(bwt: &[u8]) -> OccTable {
        assert!(
            bwt.len() < u32::MAX as usize,
            "BWT too long for 32-bit counts"
        );
        let n_blocks = bwt.len() / BLOCK_LEN + 1;
        let mut blocks = vec![Block::default(); n_blocks];
        let mut running = [0u32; SIGMA];
        for (bi, block) in blocks.iter_mut().enumerate() {
            block.before = running;
            let start = bi * BLOCK_LEN;
            let end = (start + BLOCK_LEN).min(bwt.len());
            for (off, &c) in bwt[start.min(end)..end].iter().enumerate() {
                block.bits[c as usize] |= 1u64 << off;
                running[c as usize] += 1;
            }
        }
        OccTable {
            blocks,
            len: bwt.len(),
        }
    }

    /// Number of occurrences of symbol `c` in `bwt[..i]`.
    #[inline]
    pub fn occ(&self, c: u8, i: usize) -> usize {
        debug_assert!(i <= self.len);
        let block = &self.blocks[i / BLOCK_LEN];
        let off = i % BLOCK_LEN;
        let mask = (1u64 << off).wrapping_sub(1);
        block.before[c as usize] as usize + (block.bits[c as usize] & mask).count_ones() as usize
    }

    /// Total occurrences of each symbol.
    pub fn totals(&self) -> [usize; SIGMA] {
        let mut out = [0usize; SIGMA];
        for (c, slot) in out.iter_mut().enumerate() {
            *slot = self.occ(c as u8, self.len);
        }
        out
    }

    pub fn heap_bytes(&self) -> usize {
        self.blocks.len() * std::mem::size_of::<Block>()
    }
}
