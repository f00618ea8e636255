mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use fsg_core::fmindex::FmIndex;
use fsg_core::oracle::naive_string_graph;
use fsg_core::overlap::{compute_basic_arcsets, OverlapOptions};
use fsg_core::reduce::{reduce_graph, DestMode, ReduceOptions, TraceCluster};
use fsg_core::seqio::ReadSet;

fn traced(
    rs: &ReadSet,
    idx: &FmIndex,
    tau: usize,
    mode: DestMode,
) -> (Vec<TraceCluster>, fsg_core::StringGraph) {
    let (basics, _) = compute_basic_arcsets(idx, &OverlapOptions::new(tau));
    let mut opts = ReduceOptions::new(tau);
    opts.mode = mode;
    opts.trace = true;
    let (g, stats) = reduce_graph(idx, &basics, &opts);
    assert_eq!(g.arcs, naive_string_graph(rs, tau, false).arcs);
    (stats.trace.unwrap(), g)
}

fn instances() -> impl Iterator<Item = (ReadSet, usize)> {
    (0..60u64).map(|seed| {
        (
            random_read_set(seed, 25, 6, 30, seed % 2 == 0),
            1 + seed as usize % 5,
        )
    })
}

#[test]
fn explored_strings_are_exactly_the_potential_overlaps() {
    for (rs, tau) in instances() {
        let idx = FmIndex::build(&rs);
        let mut opts = OverlapOptions::new(tau);
        opts.trace = true;
        let (basics, stats) = compute_basic_arcsets(&idx, &opts);
        let sorted = sorted_suffixes(&rs);

        let mut potential = BTreeSet::new();
        let mut overlaps = BTreeSet::new();
        for w in distinct_substrings(&rs) {
            let suff = suffix_count(&rs, &w);
            if suff > 0 && occurrences(&rs, &w) > suff {
                let key = (w.len(), naive_interval(&sorted, &w).0);
                potential.insert(key);
                if prefix_count(&rs, &w) > 0 && w.len() >= tau {
                    overlaps.insert(key);
                }
            }
        }
        let keys = stats.explored_keys.unwrap();
        let explored: BTreeSet<_> = keys.iter().copied().collect();
        assert_eq!(explored.len(), keys.len(), "a string was explored twice");
        assert_eq!(explored, potential);
        let emitted: BTreeSet<_> = basics
            .iter()
            .map(|b| (b.overlap.len, b.overlap.lo))
            .collect();
        assert_eq!(emitted, overlaps);
    }
}

#[test]
fn each_potential_overlap_is_queried_once() {
    for (rs, tau) in instances() {
        let idx = FmIndex::build(&rs);
        let (_, stats) = compute_basic_arcsets(&idx, &OverlapOptions::new(tau));
        assert_eq!(stats.extend_calls, 4 * stats.explored);
        assert_eq!(stats.accepted, stats.explored - stats.seeds);
        assert_eq!(
            stats.backward_extensions,
            4 + 2 * stats.extend_calls as u64 + stats.explored as u64
        );
    }
}

#[test]
fn clusters_follow_suffix_order() {
    for (rs, tau) in instances() {
        let idx = FmIndex::build(&rs);
        let (trace, _) = traced(&rs, &idx, tau, DestMode::Explicit);
        if let Some(root) = trace.first() {
            assert_eq!(root.extension, "");
        }
        let mut seen = BTreeSet::new();
        for c in &trace {
            if !c.extension.is_empty() {
                assert!(
                    seen.contains(&c.extension[1..]),
                    "{} before its suffix",
                    c.extension
                );
            }
            assert!(
                seen.insert(c.extension.clone()),
                "cluster {} processed twice",
                c.extension
            );
        }
    }
}

#[test]
fn every_produced_arc_is_final_and_produced_once() {
    for (rs, tau) in instances() {
        let idx = FmIndex::build(&rs);
        for mode in [DestMode::Explicit, DestMode::Window] {
            let (trace, g) = traced(&rs, &idx, tau, mode);
            let mut produced = Vec::new();
            for c in &trace {
                for m in c.members.iter().filter(|m| m.terminal) {
                    let mut seq = c.extension.as_bytes().to_vec();
                    seq.extend_from_slice(&rs.reads[m.dest[0]].seq[..m.overlap_len]);
                    let source = rs.reads.iter().position(|r| r.seq == seq).unwrap();
                    for &t in m.dest.iter().filter(|&&t| t != source) {
                        produced.push((source, t, m.overlap_len, c.extension.clone()));
                    }
                }
            }
            let final_arcs: Vec<_> = g
                .arcs
                .iter()
                .map(|a| (a.source, a.target, a.overlap_len, a.label.clone()))
                .collect();
            let mut sorted_produced = produced.clone();
            sorted_produced.sort_by_key(|a| (a.0, a.1, std::cmp::Reverse(a.2)));
            assert_eq!(sorted_produced, final_arcs);
        }
    }
}

#[test]
fn destinations_shrink_along_extensions() {
    for (rs, tau) in instances() {
        let idx = FmIndex::build(&rs);
        for mode in [DestMode::Explicit, DestMode::Window] {
            let (trace, _) = traced(&rs, &idx, tau, mode);
            let by_ext: BTreeMap<&str, &TraceCluster> =
                trace.iter().map(|c| (c.extension.as_str(), c)).collect();
            for c in trace.iter().filter(|c| !c.extension.is_empty()) {
                let parent = by_ext[&c.extension[1..]];
                let removed: BTreeSet<usize> = parent
                    .members
                    .iter()
                    .filter(|m| m.terminal)
                    .flat_map(|m| {
                        // A self target is skipped, not removed.
                        let mut seq = parent.extension.as_bytes().to_vec();
                        seq.extend_from_slice(&rs.reads[m.dest[0]].seq[..m.overlap_len]);
                        let source = rs.reads.iter().position(|r| r.seq == seq).unwrap();
                        m.dest.iter().copied().filter(move |&d| d != source)
                    })
                    .collect();
                for m in &c.members {
                    let p = parent
                        .members
                        .iter()
                        .find(|p| {
                            let c = fsg_core::Base::from_ascii(c.extension.as_bytes()[0]).unwrap();
                            p.overlap_len == m.overlap_len && idx.extend_repr(&p.body, c) == m.body
                        })
                        .expect("child arc-set has a parent");
                    assert!(!p.terminal && !m.dest.is_empty());
                    assert!(m.dest.iter().all(|d| p.dest.contains(d)));
                    assert!(m.dest.iter().all(|d| !removed.contains(d)));
                }
            }
        }
    }
}

#[test]
fn arc_set_count_is_bounded() {
    for (rs, tau) in instances() {
        let idx = FmIndex::build(&rs);
        let (basics, _) = compute_basic_arcsets(&idx, &OverlapOptions::new(tau));
        let (_, stats) = reduce_graph(&idx, &basics, &ReduceOptions::new(tau));
        let (n, m) = (rs.len() as u64, rs.max_len as u64);
        assert!(stats.arc_sets <= n * m * m);
        assert!(stats.max_stack <= 4 * (m as usize - tau.min(m as usize - 1)));
    }
}
