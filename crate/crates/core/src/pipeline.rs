//! End-to-end construction: overlaps, then reduction, on an optional thread pool.

use std::time::{Duration, Instant};

use crate::fmindex::FmIndex;
use crate::graph::StringGraph;
use crate::overlap::{compute_basic_arcsets, GenerationRepr, OverlapOptions, OverlapStats};
use crate::reduce::{reduce_graph, DestMode, ReduceOptions, ReduceStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub tau: usize,
    pub allow_self_loops: bool,
    /// 1 runs everything on the calling thread.
    pub threads: usize,
    pub dest_mode: DestMode,
    pub generation_repr: GenerationRepr,
}

impl BuildOptions {
    pub fn new(tau: usize) -> BuildOptions {
        BuildOptions {
            tau,
            allow_self_loops: false,
            threads: 1,
            dest_mode: DestMode::Explicit,
            generation_repr: GenerationRepr::FlatList,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct PipelineStats {
    pub overlap: OverlapStats,
    pub reduce: ReduceStats,
    pub overlap_time: Duration,
    pub reduce_time: Duration,
}

impl PipelineStats {
    pub fn backward_extensions(&self) -> u64 {
        self.overlap.backward_extensions + self.reduce.backward_extensions
    }
}

pub fn build_string_graph(idx: &FmIndex, opts: &BuildOptions) -> (StringGraph, PipelineStats) {
    if opts.threads <= 1 {
        return run(idx, opts, false);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .expect("failed to build thread pool");
    pool.install(|| run(idx, opts, true))
}

fn run(idx: &FmIndex, opts: &BuildOptions, parallel: bool) -> (StringGraph, PipelineStats) {
    let mut stats = PipelineStats::default();

    let t = Instant::now();
    let overlap_opts = OverlapOptions {
        tau: opts.tau,
        repr: opts.generation_repr,
        parallel,
        trace: false,
    };
    let (basics, ostats) = compute_basic_arcsets(idx, &overlap_opts);
    stats.overlap = ostats;
    stats.overlap_time = t.elapsed();

    let t = Instant::now();
    let reduce_opts = ReduceOptions {
        tau: opts.tau,
        allow_self_loops: opts.allow_self_loops,
        mode: opts.dest_mode,
        parallel,
        trace: false,
    };
    let (graph, rstats) = reduce_graph(idx, &basics, &reduce_opts);
    stats.reduce = rstats;
    stats.reduce_time = t.elapsed();
    (graph, stats)
}
