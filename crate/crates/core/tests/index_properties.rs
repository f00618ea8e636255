mod common;

use common::*;
use fsg_core::alphabet::{Base, Symbol};
use fsg_core::fmindex::{FmIndex, Interval};
use fsg_core::oracle::naive_bwt;
use fsg_core::seqio::{NormalizeOptions, ReadSet};
use proptest::prelude::*;

fn read_set_strategy() -> impl Strategy<Value = ReadSet> {
    prop::collection::vec(
        prop::collection::vec(prop::sample::select(b"acgt".to_vec()), 1..16),
        1..10,
    )
    .prop_filter_map("some read survives", |reads| {
        ReadSet::from_seqs(&reads, NormalizeOptions::default()).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn bwt_matches_naive_sort(rs in read_set_strategy()) {
        let idx = FmIndex::build(&rs);
        let (bwt, dollar_map) = naive_bwt(&rs);
        prop_assert_eq!(idx.bwt_string(), bwt);
        let dm: Vec<usize> = idx.dollar_map().iter().map(|&x| x as usize).collect();
        prop_assert_eq!(dm, dollar_map);
    }

    #[test]
    fn inversion_recovers_every_read(rs in read_set_strategy()) {
        let idx = FmIndex::build(&rs);
        for r in &rs.reads {
            prop_assert_eq!(&idx.read_sequence(r.id), &r.seq);
        }
    }

    #[test]
    fn dollar_map_is_a_bijection_in_read_order(rs in read_set_strategy()) {
        let idx = FmIndex::build(&rs);
        let mut seen = vec![false; rs.len()];
        for &id in idx.dollar_map() {
            prop_assert!(!seen[id as usize]);
            seen[id as usize] = true;
        }
        let ordered: Vec<&[u8]> = idx.dollar_map().iter().map(|&id| rs.reads[id as usize].seq.as_slice()).collect();
        prop_assert!(ordered.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn counts_and_occ_invariants(rs in read_set_strategy()) {
        let idx = FmIndex::build(&rs);
        prop_assert_eq!(idx.c(Symbol::Sentinel), 0);
        prop_assert_eq!(idx.bwt_string().matches('$').count(), rs.len());
        let mut prev = 0;
        for s in Symbol::ALL {
            prop_assert!(idx.c(s) >= prev);
            prev = idx.c(s);
            let total = idx.bwt_codes().iter().filter(|&&c| c == s.code()).count();
            prop_assert_eq!(idx.occ(s, idx.len()), total);
            for i in 1..=idx.len() {
                prop_assert!(idx.occ(s, i - 1) <= idx.occ(s, i));
            }
        }
    }

    #[test]
    fn queries_match_scans(rs in read_set_strategy()) {
        let idx = FmIndex::build(&rs);
        let sorted = sorted_suffixes(&rs);
        for w in distinct_substrings(&rs) {
            let q = idx.repr_of(&w).unwrap();
            prop_assert_eq!((q.lo, q.hi), naive_interval(&sorted, &w));
            prop_assert_eq!(q.substr(), occurrences(&rs, &w));
            prop_assert_eq!(q.suff(), suffix_count(&rs, &w));
            prop_assert_eq!(idx.pref(&q), prefix_count(&rs, &w));
            prop_assert!(q.substr() >= idx.pref(&q).max(q.suff()));
            let mut expected: Vec<&[u8]> = rs.reads.iter().filter(|r| r.seq.starts_with(&w)).map(|r| r.seq.as_slice()).collect();
            expected.sort();
            let got: Vec<&[u8]> = idx.listpref(&q).into_iter().map(|id| rs.reads[id].seq.as_slice()).collect();
            prop_assert_eq!(got, expected);
        }
    }

    #[test]
    fn backward_extension_matches_naive_interval(rs in read_set_strategy()) {
        let idx = FmIndex::build(&rs);
        let sorted = sorted_suffixes(&rs);
        for w in distinct_substrings(&rs) {
            let (lo, hi) = naive_interval(&sorted, &w);
            for c in Base::ALL {
                let ext = idx.backward_ext(Interval::new(lo, hi), Symbol::Base(c));
                let mut cw = vec![c.to_ascii()];
                cw.extend_from_slice(&w);
                let (nlo, nhi) = naive_interval(&sorted, &cw);
                if nlo == nhi {
                    prop_assert!(ext.is_empty());
                } else {
                    prop_assert_eq!((ext.lo, ext.hi), (nlo, nhi));
                }
            }
        }
    }
}

#[test]
fn r5_bwt_from_naive_sort() {
    let rs = fsg_core::fixtures::r5();
    let idx = FmIndex::build(&rs);
    let (bwt, _) = naive_bwt(&rs);
    assert_eq!(bwt.len(), 40);
    assert_eq!(idx.bwt_string(), bwt);
}

#[test]
fn extension_partitions_parent_interval() {
    for seed in 0..50 {
        let rs = random_read_set(seed, 20, 5, 30, seed % 2 == 0);
        let idx = FmIndex::build(&rs);
        for w in distinct_substrings(&rs).into_iter().take(400) {
            let parent = idx.repr_of(&w).unwrap().interval();
            let children: Vec<Interval> = Symbol::ALL
                .iter()
                .map(|&s| idx.backward_ext(parent, s))
                .collect();
            let widths: usize = children.iter().map(Interval::width).sum();
            assert_eq!(widths, parent.width());
            for (i, a) in children.iter().enumerate() {
                for b in &children[i + 1..] {
                    assert!(a.is_empty() || b.is_empty() || a.is_disjoint(b));
                }
            }
        }
    }
}
