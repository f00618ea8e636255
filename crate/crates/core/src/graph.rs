//! String graph model.

use std::cmp::Reverse;

use serde::Serialize;

/// An arc `source -> target`: the last `overlap_len` characters of `source`
/// are a prefix of `target`, and `label` is the rest of `source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Arc {
    pub source: usize,
    pub target: usize,
    pub overlap_len: usize,
    pub label: String,
}

impl Arc {
    pub fn sort_key(&self) -> (usize, usize, Reverse<usize>) {
        (self.source, self.target, Reverse(self.overlap_len))
    }
}

/// Sorts arcs by source, target, and decreasing overlap length.
pub fn sort_arcs(arcs: &mut [Arc]) {
    arcs.sort_by(|a, b| {
        a.sort_key()
            .cmp(&b.sort_key())
            .then_with(|| a.label.cmp(&b.label))
    });
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub input: String,
    pub flags: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StringGraph {
    pub n_reads: usize,
    pub arcs: Vec<Arc>,
    pub tau: usize,
    pub provenance: Provenance,
}

impl StringGraph {
    /// Builds a graph, sorting the arcs.
    pub fn new(n_reads: usize, mut arcs: Vec<Arc>, tau: usize) -> StringGraph {
        sort_arcs(&mut arcs);
        StringGraph {
            n_reads,
            arcs,
            tau,
            provenance: Provenance::default(),
        }
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> StringGraph {
        self.provenance = provenance;
        self
    }

    pub fn is_sorted(&self) -> bool {
        self.arcs
            .windows(2)
            .all(|w| w[0].sort_key() < w[1].sort_key())
    }
}
