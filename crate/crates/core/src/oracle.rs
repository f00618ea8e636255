//! Brute-force reference implementations.
//!
//! Nothing here touches the FM-index, the overlap enumeration or the
//! reduction code; agreement with them is therefore meaningful.

use std::collections::BTreeMap;

use crate::graph::{sort_arcs, Arc, StringGraph};
use crate::seqio::ReadSet;

/// All arcs of the overlap graph with overlap at least `tau`, by direct
/// comparison of every suffix with every prefix. Overlaps are proper: shorter
/// than both reads. Parallel arcs (several overlaps for one pair) are kept.
pub fn naive_overlap_graph(rs: &ReadSet, tau: usize, allow_self_loops: bool) -> Vec<Arc> {
    let mut arcs = Vec::new();
    for a in &rs.reads {
        for b in &rs.reads {
            if a.id == b.id && !allow_self_loops {
                continue;
            }
            let max = a.seq.len().min(b.seq.len());
            for len in tau.max(1)..max {
                if a.seq[a.seq.len() - len..] == b.seq[..len] {
                    arcs.push(Arc {
                        source: a.id,
                        target: b.id,
                        overlap_len: len,
                        label: String::from_utf8(a.seq[..a.seq.len() - len].to_vec()).unwrap(),
                    });
                }
            }
        }
    }
    sort_arcs(&mut arcs);
    arcs
}

/// Drops every arc `(r1, r3)` for which another arc into `r3` has a label that
/// is a proper suffix of the label of `(r1, r3)`.
pub fn naive_reduce(arcs: &[Arc]) -> Vec<Arc> {
    let mut by_target: BTreeMap<usize, Vec<&Arc>> = BTreeMap::new();
    for a in arcs {
        by_target.entry(a.target).or_default().push(a);
    }
    let mut out: Vec<Arc> = arcs
        .iter()
        .filter(|a| {
            !by_target[&a.target]
                .iter()
                .any(|b| b.label.len() < a.label.len() && a.label.ends_with(b.label.as_str()))
        })
        .cloned()
        .collect();
    sort_arcs(&mut out);
    out
}

pub fn naive_string_graph(rs: &ReadSet, tau: usize, allow_self_loops: bool) -> StringGraph {
    let arcs = naive_reduce(&naive_overlap_graph(rs, tau, allow_self_loops));
    StringGraph::new(rs.len(), arcs, tau)
}

/// BWT by sorting every suffix, `$` suffixes included, with `$` smallest and
/// ties between identical suffixes broken by read id. Returns the BWT as ASCII
/// and the read id of each `$` in BWT order.
pub fn naive_bwt(rs: &ReadSet) -> (String, Vec<usize>) {
    let code = |b: u8| match b {
        b'a' => 1u8,
        b'c' => 2,
        b'g' => 3,
        b't' => 4,
        _ => panic!("unexpected base {b}"),
    };
    // (suffix codes followed by 0, read id, start position)
    let mut suffixes: Vec<(Vec<u8>, usize, usize)> = Vec::new();
    for r in &rs.reads {
        for start in 0..=r.seq.len() {
            let mut key: Vec<u8> = r.seq[start..].iter().map(|&b| code(b)).collect();
            key.push(0);
            suffixes.push((key, r.id, start));
        }
    }
    suffixes.sort();
    let mut bwt = String::with_capacity(suffixes.len());
    let mut dollar_map = Vec::new();
    for (_, id, start) in suffixes {
        if start == 0 {
            bwt.push('$');
            dollar_map.push(id);
        } else {
            bwt.push(rs.reads[id].seq[start - 1] as char);
        }
    }
    (bwt, dollar_map)
}

/// Whether `arc` is consistent with the reads: label + overlap spells the
/// source, and the overlap is a prefix of the target.
pub fn arc_is_valid(rs: &ReadSet, arc: &Arc) -> bool {
    let s = &rs.reads[arc.source].seq;
    let t = &rs.reads[arc.target].seq;
    arc.label.len() + arc.overlap_len == s.len()
        && s.starts_with(arc.label.as_bytes())
        && arc.overlap_len < t.len()
        && s[arc.label.len()..] == t[..arc.overlap_len]
}
