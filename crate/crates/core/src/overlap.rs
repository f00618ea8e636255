//! Enumeration of all suffix-prefix overlaps.
//!
//! A potential overlap is a proper suffix of some read that also occurs
//! somewhere not as a suffix (`suff > 0` and `substr > suff`). Every suffix of an
//! overlap is a potential overlap, so all overlaps are found by starting from
//! single characters and prepending one character per generation. A potential
//! overlap that is also a prefix of some read (`pref > 0`) is an overlap and
//! yields one basic arc-set.

use std::ops::Range;

use rayon::prelude::*;

use crate::alphabet::Base;
use crate::fmindex::{FmIndex, QRepr};

/// All arcs with overlap `overlap`: sources are the reads ending with it,
/// destinations (as sentinel ranks) the reads starting with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicArcSet {
    pub overlap: QRepr,
    pub dest: Range<usize>,
}

impl BasicArcSet {
    pub fn overlap_len(&self) -> usize {
        self.overlap.len
    }

    pub fn dest_ids(&self, idx: &FmIndex) -> Vec<usize> {
        self.dest.clone().map(|r| idx.read_at_rank(r)).collect()
    }
}

/// How the potential overlaps of one generation are held between iterations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum GenerationRepr {
    /// A flat list of representations.
    #[default]
    FlatList,
    /// Two BWT-long bitvectors: one marking interval starts, one marking the
    /// ends of `q(w$)` and `q(w)`.
    PairedBitvectors,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OverlapOptions {
    pub tau: usize,
    pub repr: GenerationRepr,
    pub parallel: bool,
    /// Record the key of every explored string in [`OverlapStats::explored_keys`].
    pub trace: bool,
}

impl OverlapOptions {
    pub fn new(tau: usize) -> OverlapOptions {
        OverlapOptions {
            tau,
            repr: GenerationRepr::FlatList,
            parallel: false,
            trace: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OverlapStats {
    pub seeds: usize,
    /// Potential overlaps visited, seeds included.
    pub explored: usize,
    /// `extend_repr` calls.
    pub extend_calls: usize,
    /// Extensions that passed the potential-overlap test.
    pub accepted: usize,
    pub emitted: usize,
    pub generations: usize,
    pub backward_extensions: u64,
    /// `(length, interval start)` of each explored string, in visit order.
    /// Distinct strings of equal length have disjoint intervals, so the key
    /// identifies the string.
    pub explored_keys: Option<Vec<(usize, usize)>>,
}

fn is_potential_overlap(q: &QRepr) -> bool {
    let suff = q.suff();
    suff > 0 && q.substr() > suff
}

#[derive(Default)]
struct Visit {
    basic: Option<BasicArcSet>,
    children: Vec<QRepr>,
    extend_calls: usize,
    backward_extensions: u64,
}

fn visit(idx: &FmIndex, beta: &QRepr, tau: usize) -> Visit {
    let mut v = Visit::default();
    let dest = idx.prefix_ranks(beta);
    v.backward_extensions += 1;
    if !dest.is_empty() && beta.len >= tau {
        v.basic = Some(BasicArcSet {
            overlap: *beta,
            dest,
        });
    }
    for c in Base::ALL {
        let child = idx.extend_repr(beta, c);
        v.extend_calls += 1;
        v.backward_extensions += 2;
        if is_potential_overlap(&child) {
            v.children.push(child);
        }
    }
    v
}

/// Computes one basic arc-set per distinct overlap of length at least `tau`,
/// sorted by the lexicographic order of the overlaps.
///
/// Overlaps shorter than `tau` are still explored: longer ones are reached
/// only through them.
pub fn compute_basic_arcsets(
    idx: &FmIndex,
    opts: &OverlapOptions,
) -> (Vec<BasicArcSet>, OverlapStats) {
    assert!(opts.tau >= 1, "minimum overlap must be at least 1");
    let mut stats = OverlapStats {
        explored_keys: opts.trace.then(Vec::new),
        ..Default::default()
    };

    let mut last: Vec<QRepr> = Base::ALL
        .iter()
        .map(|&c| idx.init_repr(c))
        .filter(is_potential_overlap)
        .collect();
    stats.seeds = last.len();
    stats.backward_extensions += 4;

    let mut basics = Vec::new();
    while !last.is_empty() {
        stats.generations += 1;
        stats.explored += last.len();
        if let Some(keys) = stats.explored_keys.as_mut() {
            keys.extend(last.iter().map(|q| (q.len, q.lo)));
        }

        let visits: Vec<Visit> = if opts.parallel {
            last.par_iter().map(|b| visit(idx, b, opts.tau)).collect()
        } else {
            last.iter().map(|b| visit(idx, b, opts.tau)).collect()
        };

        let mut next = Vec::new();
        for v in visits {
            stats.extend_calls += v.extend_calls;
            stats.backward_extensions += v.backward_extensions;
            stats.accepted += v.children.len();
            basics.extend(v.basic);
            next.extend(v.children);
        }
        next.sort_unstable_by_key(|q| q.lo);
        last = match opts.repr {
            GenerationRepr::FlatList => next,
            GenerationRepr::PairedBitvectors => PairedBitvectors::encode(&next, idx.len()).decode(),
        };
    }

    stats.emitted = basics.len();
    basics.sort_unstable_by_key(|b| b.overlap.lo);
    (basics, stats)
}

/// A generation of equal-length strings with pairwise disjoint intervals.
///
/// The `i`-th set bit of `starts` is the start of the `i`-th interval; the
/// `2i`-th and `2i+1`-th set bits of `ends` are its `q(w$)` and `q(w)` ends.
#[derive(Debug, Clone)]
pub struct PairedBitvectors {
    starts: Vec<u64>,
    ends: Vec<u64>,
    len: usize,
}

impl PairedBitvectors {
    /// `gen` must be sorted by interval start; every entry is a potential
    /// overlap, so `lo < hi_dollar < hi`.
    pub fn encode(gen: &[QRepr], bwt_len: usize) -> PairedBitvectors {
        let words = (bwt_len + 1).div_ceil(64);
        let mut starts = vec![0u64; words];
        let mut ends = vec![0u64; words];
        let len = gen.first().map_or(0, |q| q.len);
        for q in gen {
            debug_assert_eq!(q.len, len);
            debug_assert!(q.lo < q.hi_dollar && q.hi_dollar < q.hi);
            set_bit(&mut starts, q.lo);
            set_bit(&mut ends, q.hi_dollar);
            set_bit(&mut ends, q.hi);
        }
        PairedBitvectors { starts, ends, len }
    }

    pub fn decode(&self) -> Vec<QRepr> {
        let mut ends = ones(&self.ends);
        ones(&self.starts)
            .map(|lo| {
                let hi_dollar = ends.next().expect("unpaired start");
                let hi = ends.next().expect("unpaired start");
                QRepr {
                    lo,
                    hi,
                    hi_dollar,
                    len: self.len,
                }
            })
            .collect()
    }
}

fn set_bit(words: &mut [u64], i: usize) {
    words[i / 64] |= 1 << (i % 64);
}

fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let tz = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * 64 + tz)
        })
    })
}
