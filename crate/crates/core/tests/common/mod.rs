#![allow(dead_code)]

use fsg_core::seqio::{NormalizeOptions, ReadSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random reads over `acgt`: half the time independent strings, otherwise
/// substrings of a short random genome so that overlaps are plentiful.
pub fn random_reads(
    rng: &mut ChaCha8Rng,
    n: usize,
    min_len: usize,
    max_len: usize,
) -> Vec<Vec<u8>> {
    let from_genome = rng.gen_bool(0.5);
    let glen = rng.gen_range(max_len..=max_len * 3);
    let genome: Vec<u8> = (0..glen).map(|_| b"acgt"[rng.gen_range(0..4)]).collect();
    (0..n)
        .map(|_| {
            let len = rng.gen_range(min_len..=max_len);
            if from_genome {
                let start = rng.gen_range(0..=glen - len);
                genome[start..start + len].to_vec()
            } else {
                (0..len).map(|_| b"acgt"[rng.gen_range(0..4)]).collect()
            }
        })
        .collect()
}

pub fn random_read_set(
    seed: u64,
    max_n: usize,
    min_len: usize,
    max_len: usize,
    add_rc: bool,
) -> ReadSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n);
    let reads = random_reads(&mut rng, n, min_len, max_len);
    ReadSet::from_seqs(
        &reads,
        NormalizeOptions {
            add_rc,
            ..Default::default()
        },
    )
    .expect("at least one read survives")
}

/// Sorted keys of every suffix (`$` suffixes included): base codes 1..=4,
/// terminated by 0, tagged with read id and start.
pub fn sorted_suffixes(rs: &ReadSet) -> Vec<(Vec<u8>, usize, usize)> {
    let mut out = Vec::new();
    for r in &rs.reads {
        for start in 0..=r.seq.len() {
            let mut key: Vec<u8> = r.seq[start..].iter().map(|&b| code(b)).collect();
            key.push(0);
            out.push((key, r.id, start));
        }
    }
    out.sort();
    out
}

pub fn code(b: u8) -> u8 {
    match b {
        b'a' => 1,
        b'c' => 2,
        b'g' => 3,
        b't' => 4,
        _ => panic!("bad base"),
    }
}

/// Half-open row range of suffixes starting with `w`.
pub fn naive_interval(sorted: &[(Vec<u8>, usize, usize)], w: &[u8]) -> (usize, usize) {
    let codes: Vec<u8> = w.iter().map(|&b| code(b)).collect();
    let lo = sorted.partition_point(|(k, _, _)| k.as_slice() < codes.as_slice());
    let hi = lo
        + sorted[lo..]
            .iter()
            .take_while(|(k, _, _)| k.starts_with(&codes))
            .count();
    (lo, hi)
}

pub fn occurrences(rs: &ReadSet, w: &[u8]) -> usize {
    rs.reads
        .iter()
        .map(|r| {
            if w.len() > r.seq.len() {
                0
            } else {
                r.seq.windows(w.len()).filter(|x| *x == w).count()
            }
        })
        .sum()
}

pub fn prefix_count(rs: &ReadSet, w: &[u8]) -> usize {
    rs.reads.iter().filter(|r| r.seq.starts_with(w)).count()
}

pub fn suffix_count(rs: &ReadSet, w: &[u8]) -> usize {
    rs.reads.iter().filter(|r| r.seq.ends_with(w)).count()
}

/// Every distinct substring of the collection.
pub fn distinct_substrings(rs: &ReadSet) -> std::collections::BTreeSet<Vec<u8>> {
    let mut set = std::collections::BTreeSet::new();
    for r in &rs.reads {
        for i in 0..r.seq.len() {
            for j in i + 1..=r.seq.len() {
                set.insert(r.seq[i..j].to_vec());
            }
        }
    }
    set
}
