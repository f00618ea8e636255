//! FM-index of a read collection and the three-integer string representation
//! built on top of it.
//!
//! Rows are 0-based and intervals half-open. Rows `0..n` hold the one-symbol
//! suffixes `$` of the reads (in read-id order); the `$` characters in the BWT,
//! taken in row order, correspond to whole reads in lexicographic order and are
//! mapped to read ids through `dollar_map`.

mod build;
mod io;
mod occ;

use std::ops::Range;

pub use build::{build_bwt, PrefixDoubling, SuffixSorter};
pub use occ::{OccTable, BLOCK_LEN};

use crate::alphabet::{Base, Symbol, SIGMA};
use crate::seqio::ReadSet;

/// A half-open range of BWT rows. Empty when `lo >= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub const EMPTY: Interval = Interval { lo: 0, hi: 0 };

    pub fn new(lo: usize, hi: usize) -> Interval {
        Interval { lo, hi }
    }

    pub fn width(&self) -> usize {
        self.hi.saturating_sub(self.lo)
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_disjoint(&self, other: &Interval) -> bool {
        self.hi <= other.lo || other.hi <= self.lo
    }
}

/// Representation of a string `w` by `q(w) = [lo, hi)` and `q(w$) = [lo, hi_dollar)`.
///
/// Both intervals share their start because `$` sorts before every base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QRepr {
    pub lo: usize,
    pub hi: usize,
    pub hi_dollar: usize,
    pub len: usize,
}

impl QRepr {
    pub fn interval(&self) -> Interval {
        Interval::new(self.lo, self.hi)
    }

    pub fn suffix_interval(&self) -> Interval {
        Interval::new(self.lo, self.hi_dollar)
    }

    /// Number of occurrences of the string in the collection.
    pub fn substr(&self) -> usize {
        self.hi.saturating_sub(self.lo)
    }

    /// Number of reads ending with the string.
    pub fn suff(&self) -> usize {
        self.hi_dollar.saturating_sub(self.lo)
    }

    pub fn is_empty(&self) -> bool {
        self.substr() == 0
    }
}

#[derive(Debug, Clone)]
pub struct FmIndex {
    bwt: Vec<u8>,
    /// `c_table[c]` = number of symbols smaller than `c`.
    c_table: [usize; SIGMA + 1],
    occ: OccTable,
    dollar_map: Vec<u32>,
    max_len: usize,
}

impl FmIndex {
    /// Builds the index of a normalized read set.
    pub fn build(rs: &ReadSet) -> FmIndex {
        Self::from_sequences(&rs.seqs())
    }

    /// Builds the index of arbitrary nonempty `acgt` sequences.
    pub fn from_sequences(seqs: &[&[u8]]) -> FmIndex {
        Self::with_sorter(seqs, &PrefixDoubling)
    }

    pub fn with_sorter(seqs: &[&[u8]], sorter: &dyn SuffixSorter) -> FmIndex {
        assert!(seqs.iter().all(|s| !s.is_empty()), "empty read");
        let parts = build_bwt(seqs, sorter);
        let max_len = seqs.iter().map(|s| s.len()).max().unwrap_or(0);
        Self::from_parts(parts.bwt, parts.dollar_map, max_len)
    }

    pub(crate) fn from_parts(bwt: Vec<u8>, dollar_map: Vec<u32>, max_len: usize) -> FmIndex {
        let occ = OccTable::new(&bwt);
        let totals = occ.totals();
        let mut c_table = [0usize; SIGMA + 1];
        for c in 0..SIGMA {
            c_table[c + 1] = c_table[c] + totals[c];
        }
        debug_assert_eq!(totals[0], dollar_map.len());
        FmIndex {
            bwt,
            c_table,
            occ,
            dollar_map,
            max_len,
        }
    }

    /// Number of reads.
    pub fn n_reads(&self) -> usize {
        self.dollar_map.len()
    }

    /// BWT length, the total read length plus one sentinel per read.
    pub fn len(&self) -> usize {
        self.bwt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bwt.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn bwt_codes(&self) -> &[u8] {
        &self.bwt
    }

    /// The BWT as ASCII with `$` for sentinels.
    pub fn bwt_string(&self) -> String {
        self.bwt
            .iter()
            .map(|&c| Symbol::from_code(c).unwrap().to_ascii() as char)
            .collect()
    }

    pub fn dollar_map(&self) -> &[u32] {
        &self.dollar_map
    }

    pub fn c(&self, sym: Symbol) -> usize {
        self.c_table[sym.code() as usize]
    }

    /// Occurrences of `sym` in `bwt[..i]`.
    pub fn occ(&self, sym: Symbol, i: usize) -> usize {
        self.occ.occ(sym.code(), i)
    }

    /// All rows.
    pub fn full_interval(&self) -> Interval {
        Interval::new(0, self.len())
    }

    /// The rows of the one-symbol suffixes `$`.
    pub fn sentinel_interval(&self) -> Interval {
        Interval::new(0, self.n_reads())
    }

    /// Backward extension: the `c w`-interval from the `w`-interval.
    #[inline]
    pub fn backward_ext(&self, iv: Interval, sym: Symbol) -> Interval {
        if iv.is_empty() {
            return Interval::EMPTY;
        }
        let code = sym.code();
        let base = self.c_table[code as usize];
        Interval::new(
            base + self.occ.occ(code, iv.lo),
            base + self.occ.occ(code, iv.hi),
        )
    }

    /// Representation of the one-character string `c`.
    pub fn init_repr(&self, c: Base) -> QRepr {
        let code = c.code() as usize;
        let lo = self.c_table[code];
        let hi = self.c_table[code + 1];
        if lo == hi {
            return QRepr {
                lo: 0,
                hi: 0,
                hi_dollar: 0,
                len: 1,
            };
        }
        // q(c$) is the backward c-extension of the sentinel rows
        let hi_dollar = lo + self.occ.occ(c.code(), self.n_reads());
        QRepr {
            lo,
            hi,
            hi_dollar,
            len: 1,
        }
    }

    /// Representation of `c w` from that of `w`.
    #[inline]
    pub fn extend_repr(&self, q: &QRepr, c: Base) -> QRepr {
        if q.is_empty() {
            return QRepr {
                lo: 0,
                hi: 0,
                hi_dollar: 0,
                len: q.len + 1,
            };
        }
        let code = c.code();
        let base = self.c_table[code as usize];
        QRepr {
            lo: base + self.occ.occ(code, q.lo),
            hi: base + self.occ.occ(code, q.hi),
            hi_dollar: base + self.occ.occ(code, q.hi_dollar),
            len: q.len + 1,
        }
    }

    /// Sentinel ranks of the reads having `w` as a prefix: the `$w`-interval.
    #[inline]
    pub fn prefix_ranks(&self, q: &QRepr) -> Range<usize> {
        if q.is_empty() {
            return 0..0;
        }
        self.occ.occ(0, q.lo)..self.occ.occ(0, q.hi)
    }

    /// Number of reads with prefix `w`.
    pub fn pref(&self, q: &QRepr) -> usize {
        self.prefix_ranks(q).len()
    }

    /// Ids of the reads with prefix `w`, in lexicographic order of the reads.
    pub fn listpref(&self, q: &QRepr) -> Vec<usize> {
        self.prefix_ranks(q)
            .map(|r| self.dollar_map[r] as usize)
            .collect()
    }

    /// Read id of the read with the given sentinel rank.
    #[inline]
    pub fn read_at_rank(&self, rank: usize) -> usize {
        self.dollar_map[rank] as usize
    }

    /// Representation of an arbitrary string, by backward search.
    pub fn repr_of(&self, s: &[u8]) -> Option<QRepr> {
        let (&last, rest) = s.split_last()?;
        let mut q = self.init_repr(Base::from_ascii(last)?);
        for &b in rest.iter().rev() {
            q = self.extend_repr(&q, Base::from_ascii(b)?);
        }
        Some(q)
    }

    /// Occurrences of `s` in the collection. Zero for strings outside the alphabet.
    pub fn count(&self, s: &[u8]) -> usize {
        self.repr_of(s).map_or(0, |q| q.substr())
    }

    /// Recovers read `id` by LF-mapping from its sentinel row.
    pub fn read_sequence(&self, id: usize) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.max_len);
        let mut row = id;
        loop {
            let code = self.bwt[row];
            if code == 0 {
                break;
            }
            out.push(Symbol::from_code(code).unwrap().to_ascii());
            row = self.c_table[code as usize] + self.occ.occ(code, row);
        }
        out.reverse();
        out
    }

    pub fn heap_bytes(&self) -> usize {
        self.bwt.len() + self.occ.heap_bytes() + self.dollar_map.len() * 4
    }
}
