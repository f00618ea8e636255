//! Small named read collections used by tests, examples and the CLI.

use crate::seqio::{normalize, NormalizeOptions, RawRead, RawReads, ReadSet};

/// The five-read example collection: r1..r5 with ids 0..4.
pub const R5: [(&str, &str); 5] = [
    ("r1", "ccgtaca"),
    ("r2", "tcgtaca"),
    ("r3", "tacatgt"),
    ("r4", "catgtaa"),
    ("r5", "catgtgg"),
];

pub fn r5_raw() -> RawReads {
    named(&R5)
}

pub fn r5() -> ReadSet {
    normalize(r5_raw(), NormalizeOptions::default()).expect("R5 is substring free")
}

pub fn named(reads: &[(&str, &str)]) -> RawReads {
    RawReads {
        reads: reads
            .iter()
            .map(|(name, seq)| RawRead {
                name: name.to_string(),
                seq: seq.as_bytes().to_vec(),
            })
            .collect(),
        dropped_ambiguous: 0,
    }
}

/// R5 as FASTA text.
pub fn r5_fasta() -> String {
    R5.iter()
        .map(|(n, s)| format!(">{n}\n{}\n", s.to_uppercase()))
        .collect()
}
