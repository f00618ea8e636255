//! Destination-set representations.
//!
//! Destinations are kept as sentinel ranks (positions in the lexicographic
//! order of the reads), so the initial destination set of a basic arc-set is a
//! contiguous range.

use std::fmt::Debug;
use std::ops::Range;

use super::packed::PackedCluster;
use super::{ArcSet, Cluster};

pub trait DestSet: Clone + Debug + Send + Sync + Sized {
    /// Cluster-local set of reads removed by terminal arc-sets.
    type Removed;
    /// Form in which a cluster waits on the stack.
    type Stored: Send;

    fn full(ranks: Range<usize>) -> Self;
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn for_each_rank(&self, f: impl FnMut(usize));
    fn ranks(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        self.for_each_rank(|r| out.push(r));
        out
    }

    fn removed_for(members: &[ArcSet<Self>]) -> Self::Removed;
    fn mark(removed: &mut Self::Removed, rank: usize);
    /// Called once after the last `mark`.
    fn seal(_removed: &mut Self::Removed) {}
    /// `self \ removed`, or `None` if that is empty.
    fn minus(&self, removed: &Self::Removed) -> Option<Self>;

    fn store(cluster: Cluster<Self>) -> Self::Stored;
    fn load(stored: Self::Stored) -> Cluster<Self>;
}

/// Explicit sorted list of ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedRanks(pub Vec<u32>);

impl DestSet for SortedRanks {
    type Removed = Vec<u32>;
    type Stored = Cluster<SortedRanks>;

    fn full(ranks: Range<usize>) -> Self {
        SortedRanks(ranks.map(|r| r as u32).collect())
    }

    fn len(&self) -> usize {
        self.0.len()
    }

    fn for_each_rank(&self, mut f: impl FnMut(usize)) {
        self.0.iter().for_each(|&r| f(r as usize));
    }

    fn removed_for(_members: &[ArcSet<Self>]) -> Vec<u32> {
        Vec::new()
    }

    fn mark(removed: &mut Vec<u32>, rank: usize) {
        removed.push(rank as u32);
    }

    fn seal(removed: &mut Vec<u32>) {
        removed.sort_unstable();
        removed.dedup();
    }

    fn minus(&self, removed: &Vec<u32>) -> Option<Self> {
        if removed.is_empty() {
            return Some(self.clone());
        }
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &r in &self.0 {
            while j < removed.len() && removed[j] < r {
                j += 1;
            }
            if j < removed.len() && removed[j] == r {
                continue;
            }
            out.push(r);
        }
        (!out.is_empty()).then_some(SortedRanks(out))
    }

    fn store(cluster: Cluster<Self>) -> Cluster<Self> {
        cluster
    }

    fn load(stored: Cluster<Self>) -> Cluster<Self> {
        stored
    }
}

/// A base range of ranks plus a bitmask of excluded positions (relative to
/// `lo`). An empty mask excludes nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskedWindow {
    pub lo: usize,
    pub hi: usize,
    pub excluded: Vec<u64>,
}

/// The removed set `D` of one cluster: a bitvector over the window spanned by
/// the members' base ranges.
#[derive(Debug, Clone)]
pub struct WindowMask {
    lo: usize,
    hi: usize,
    bits: Vec<u64>,
}

impl MaskedWindow {
    fn width(&self) -> usize {
        self.hi - self.lo
    }

    fn is_excluded(&self, off: usize) -> bool {
        !self.excluded.is_empty() && self.excluded[off / 64] >> (off % 64) & 1 == 1
    }
}

/// 64 bits of `words` starting at bit `start`; bits past the end read as 0.
fn bits_at(words: &[u64], start: usize) -> u64 {
    let (w, s) = (start / 64, start % 64);
    let lo = words.get(w).copied().unwrap_or(0) >> s;
    if s == 0 {
        lo
    } else {
        lo | words.get(w + 1).copied().unwrap_or(0) << (64 - s)
    }
}

impl DestSet for MaskedWindow {
    type Removed = WindowMask;
    type Stored = PackedCluster;

    fn full(ranks: Range<usize>) -> Self {
        MaskedWindow {
            lo: ranks.start,
            hi: ranks.end,
            excluded: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        let ex: u32 = self.excluded.iter().map(|w| w.count_ones()).sum();
        self.width() - ex as usize
    }

    fn for_each_rank(&self, mut f: impl FnMut(usize)) {
        for off in 0..self.width() {
            if !self.is_excluded(off) {
                f(self.lo + off);
            }
        }
    }

    fn removed_for(members: &[ArcSet<Self>]) -> WindowMask {
        let lo = members.iter().map(|m| m.dest.lo).min().unwrap_or(0);
        let hi = members.iter().map(|m| m.dest.hi).max().unwrap_or(0);
        WindowMask {
            lo,
            hi,
            bits: Vec::new(),
        }
    }

    fn mark(removed: &mut WindowMask, rank: usize) {
        debug_assert!(removed.lo <= rank && rank < removed.hi);
        if removed.bits.is_empty() {
            removed.bits = vec![0; (removed.hi - removed.lo).div_ceil(64)];
        }
        let off = rank - removed.lo;
        removed.bits[off / 64] |= 1 << (off % 64);
    }

    fn minus(&self, removed: &WindowMask) -> Option<Self> {
        if removed.bits.is_empty() {
            return Some(self.clone());
        }
        let width = self.width();
        let words = width.div_ceil(64);
        let shift = self.lo - removed.lo;
        let mut excluded = Vec::with_capacity(words);
        let mut live = 0usize;
        for w in 0..words {
            let mut word =
                bits_at(&removed.bits, shift + w * 64) | self.excluded.get(w).copied().unwrap_or(0);
            let valid = (width - w * 64).min(64);
            if valid < 64 {
                word &= (1u64 << valid) - 1;
            }
            live += valid - word.count_ones() as usize;
            excluded.push(word);
        }
        if live == 0 {
            return None;
        }
        if excluded.iter().all(|&w| w == 0) {
            excluded.clear();
        }
        Some(MaskedWindow {
            lo: self.lo,
            hi: self.hi,
            excluded,
        })
    }

    fn store(cluster: Cluster<Self>) -> PackedCluster {
        PackedCluster::pack(cluster)
    }

    fn load(stored: PackedCluster) -> Cluster<Self> {
        stored.unpack()
    }
}
