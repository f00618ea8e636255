//! String graph construction that works only on the FM-index of a read
//! collection.
//!
//! The pipeline is:
//!
//! 1. [`seqio`] parses FASTA/FASTQ and normalizes the reads into a
//!    substring-free [`ReadSet`].
//! 2. [`fmindex`] builds the BWT of the collection and answers `substr`,
//!    `suff`, `pref` and `listpref` queries on three-integer string
//!    representations ([`QRepr`]).
//! 3. [`overlap`] enumerates every suffix-prefix overlap by extending potential
//!    overlaps one leading character at a time, producing basic arc-sets.
//! 4. [`reduce`] processes arc-sets cluster by cluster and outputs only the
//!    irreducible arcs, i.e. the string graph.
//!
//! [`oracle`] holds brute-force reference implementations used in tests and by
//! the `fsg oracle` subcommand.

pub mod alphabet;
pub mod error;
pub mod fixtures;
pub mod fmindex;
pub mod graph;
pub mod graph_io;
pub mod oracle;
pub mod overlap;
pub mod pipeline;
pub mod reduce;
pub mod seqio;
pub mod sim;

pub use alphabet::{Base, Symbol};
pub use error::{FsgError, Result};
pub use fmindex::{FmIndex, Interval, QRepr};
pub use graph::{Arc, Provenance, StringGraph};
pub use overlap::{
    compute_basic_arcsets, BasicArcSet, GenerationRepr, OverlapOptions, OverlapStats,
};
pub use pipeline::{build_string_graph, BuildOptions, PipelineStats};
pub use reduce::{reduce_graph, DestMode, ReduceOptions, ReduceStats};
pub use seqio::{ContainedPolicy, NormalizeOptions, Read, ReadSet, SeqFormat};
