mod common;

use std::collections::BTreeSet;

use common::*;
use fsg_core::fmindex::FmIndex;
use fsg_core::oracle::{arc_is_valid, naive_overlap_graph, naive_string_graph};
use fsg_core::overlap::{compute_basic_arcsets, GenerationRepr, OverlapOptions};
use fsg_core::pipeline::{build_string_graph, BuildOptions};
use fsg_core::reduce::DestMode;
use fsg_core::seqio::ReadSet;
use proptest::prelude::*;

fn check_all_variants(rs: &ReadSet, tau: usize) {
    let idx = FmIndex::build(rs);
    for self_loops in [false, true] {
        let expected = naive_string_graph(rs, tau, self_loops);
        for mode in [DestMode::Explicit, DestMode::Window] {
            for repr in [GenerationRepr::FlatList, GenerationRepr::PairedBitvectors] {
                let mut opts = BuildOptions::new(tau);
                opts.allow_self_loops = self_loops;
                opts.dest_mode = mode;
                opts.generation_repr = repr;
                let (g, _) = build_string_graph(&idx, &opts);
                assert_eq!(
                    g.arcs,
                    expected.arcs,
                    "tau={tau} self_loops={self_loops} mode={mode:?} repr={repr:?} reads={:?}",
                    rs.seqs()
                );
                assert!(g.is_sorted());
                assert!(g.arcs.iter().all(|a| arc_is_valid(rs, a)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph_equals_naive(seed in any::<u64>(), tau in 1usize..8, rc in any::<bool>()) {
        let rs = random_read_set(seed, 15, 4, 20, rc);
        check_all_variants(&rs, tau);
    }
}

#[test]
fn seeded_instances_equal_naive() {
    for seed in 0..150u64 {
        let rs = random_read_set(seed, 30, 8, 30, seed % 3 == 0);
        check_all_variants(&rs, 1 + (seed as usize % 10));
    }
}

#[test]
fn basic_arcsets_are_exactly_the_overlaps() {
    for seed in 0..80u64 {
        let rs = random_read_set(seed, 20, 5, 25, seed % 2 == 1);
        let idx = FmIndex::build(&rs);
        let tau = 1 + seed as usize % 6;
        let (basics, stats) = compute_basic_arcsets(&idx, &OverlapOptions::new(tau));
        assert_eq!(stats.emitted, basics.len());

        // Every basic arc-set expands to arcs of the overlap graph and the
        // union is the whole overlap graph (self overlaps included).
        let mut from_basics = BTreeSet::new();
        for b in &basics {
            let first_dest = b.dest_ids(&idx)[0];
            let w = rs.reads[first_dest].seq[..b.overlap_len()].to_vec();
            assert_eq!(b.overlap.suff(), suffix_count(&rs, &w));
            assert!(b.overlap_len() >= tau);
            for src in rs.reads.iter().filter(|r| r.seq.ends_with(&w)) {
                for dst in b.dest_ids(&idx) {
                    assert!(rs.reads[dst].seq.starts_with(&w));
                    from_basics.insert((src.id, dst, b.overlap_len()));
                }
            }
        }
        let naive: BTreeSet<(usize, usize, usize)> = naive_overlap_graph(&rs, tau, true)
            .into_iter()
            .map(|a| (a.source, a.target, a.overlap_len))
            .collect();
        assert_eq!(from_basics, naive, "reads={:?}", rs.seqs());
    }
}

#[test]
fn parallel_matches_sequential() {
    for seed in 0..40u64 {
        let rs = random_read_set(seed, 40, 10, 40, true);
        let idx = FmIndex::build(&rs);
        let mut seq = BuildOptions::new(3);
        seq.threads = 1;
        let mut par = seq;
        par.threads = 4;
        let (a, sa) = build_string_graph(&idx, &seq);
        let (b, sb) = build_string_graph(&idx, &par);
        assert_eq!(a.arcs, b.arcs);
        assert_eq!(sa.overlap.explored, sb.overlap.explored);
        assert_eq!(sa.reduce.arc_sets, sb.reduce.arc_sets);
    }
}
