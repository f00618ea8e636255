//! Compact cluster encoding used while a cluster waits on the stack.
//!
//! Member body intervals of one cluster are pairwise disjoint or nested and
//! members are kept in lexicographic order, which is the order of interval
//! starts. Storing, over the window `[base, base + width)` spanned by the
//! members, how many intervals start (`vb`) and end (`ve`) at each position is
//! then enough to recover every interval with one scan and a stack.

use super::dest::MaskedWindow;
use super::{ArcSet, Cluster};
use crate::fmindex::QRepr;

#[derive(Debug, Clone)]
pub struct PackedCluster {
    extension: Vec<u8>,
    base: usize,
    vb: Vec<u32>,
    ve: Vec<u32>,
    hi_dollar: Vec<usize>,
    overlap_len: Vec<usize>,
    dests: Vec<MaskedWindow>,
}

impl PackedCluster {
    pub fn pack(cluster: Cluster<MaskedWindow>) -> PackedCluster {
        let members = cluster.members;
        let base = members.first().map_or(0, |m| m.body.lo);
        let top = members.iter().map(|m| m.body.hi).max().unwrap_or(base);
        let width = top - base;
        let mut vb = vec![0u32; width];
        let mut ve = vec![0u32; width];
        let mut hi_dollar = Vec::with_capacity(members.len());
        let mut overlap_len = Vec::with_capacity(members.len());
        let mut dests = Vec::with_capacity(members.len());
        for w in members.windows(2) {
            let (a, b) = (w[0].body.interval(), w[1].body.interval());
            debug_assert!(a.lo < b.lo, "members out of order");
            debug_assert!(
                a.is_disjoint(&b) || a.contains(&b),
                "partially overlapping members"
            );
        }
        for m in members {
            debug_assert!(!m.body.is_empty());
            vb[m.body.lo - base] += 1;
            ve[m.body.hi - 1 - base] += 1;
            hi_dollar.push(m.body.hi_dollar);
            overlap_len.push(m.overlap_len);
            dests.push(m.dest);
        }
        PackedCluster {
            extension: cluster.extension,
            base,
            vb,
            ve,
            hi_dollar,
            overlap_len,
            dests,
        }
    }

    pub fn unpack(self) -> Cluster<MaskedWindow> {
        let n = self.dests.len();
        let mut lo = vec![0usize; n];
        let mut hi = vec![0usize; n];
        let mut open: Vec<usize> = Vec::new();
        let mut next = 0usize;
        for pos in 0..self.vb.len() {
            for _ in 0..self.vb[pos] {
                lo[next] = self.base + pos;
                open.push(next);
                next += 1;
            }
            for _ in 0..self.ve[pos] {
                let m = open.pop().expect("interval end without start");
                hi[m] = self.base + pos + 1;
            }
        }
        debug_assert!(open.is_empty() && next == n);

        let ext_len = self.extension.len();
        let members = self
            .dests
            .into_iter()
            .enumerate()
            .map(|(i, dest)| ArcSet {
                body: QRepr {
                    lo: lo[i],
                    hi: hi[i],
                    hi_dollar: self.hi_dollar[i],
                    len: ext_len + self.overlap_len[i],
                },
                overlap_len: self.overlap_len[i],
                dest,
            })
            .collect();
        Cluster {
            extension: self.extension,
            members,
        }
    }

    pub fn window_width(&self) -> usize {
        self.vb.len()
    }
}
