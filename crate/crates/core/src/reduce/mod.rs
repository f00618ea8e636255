//! Removal of transitive arcs.
//!
//! Arc-sets `(alpha, alpha beta, X)` are grouped into clusters by their
//! extension `alpha`. Processing a cluster first outputs the arcs of every
//! terminal arc-set (one whose string `alpha beta` is a whole read) and
//! collects their destinations in `D`; then every other arc-set loses `D` from
//! its destinations and is extended by one leading character into the child
//! clusters `C(c alpha)`. A cluster is only created while its parent is
//! processed, so every cluster is processed after the clusters of all proper
//! suffixes of its extension.

pub mod dest;
mod packed;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::alphabet::Base;
use crate::fmindex::{FmIndex, QRepr};
use crate::graph::{sort_arcs, Arc, StringGraph};
use crate::overlap::BasicArcSet;

pub use dest::{DestSet, MaskedWindow, SortedRanks};
pub use packed::PackedCluster;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSet<D> {
    /// Representation of `alpha beta`.
    pub body: QRepr,
    /// `|beta|`.
    pub overlap_len: usize,
    pub dest: D,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster<D> {
    /// The shared extension `alpha`, as ASCII.
    pub extension: Vec<u8>,
    /// Ordered by the lexicographic order of `alpha beta`.
    pub members: Vec<ArcSet<D>>,
}

/// Destination-set representation used by [`reduce_graph`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum DestMode {
    /// Sorted explicit rank lists.
    #[default]
    Explicit,
    /// Base range plus exclusion mask, with clusters packed on the stack.
    Window,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReduceOptions {
    pub tau: usize,
    pub allow_self_loops: bool,
    pub mode: DestMode,
    /// Process independent clusters on the current rayon pool.
    pub parallel: bool,
    /// Record every processed cluster (sequential runs only).
    pub trace: bool,
}

impl ReduceOptions {
    pub fn new(tau: usize) -> ReduceOptions {
        ReduceOptions {
            tau,
            allow_self_loops: false,
            mode: DestMode::Explicit,
            parallel: false,
            trace: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceMember {
    pub body: QRepr,
    pub overlap_len: usize,
    /// Destination read ids.
    pub dest: Vec<usize>,
    pub terminal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceCluster {
    pub extension: String,
    pub members: Vec<TraceMember>,
    /// Stack length right after this cluster's children were pushed.
    pub stack_len: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReduceStats {
    pub clusters: u64,
    /// Arc-sets created, basic ones included.
    pub arc_sets: u64,
    pub terminal_arc_sets: u64,
    /// Largest number of clusters waiting on the stack. Zero for parallel runs.
    pub max_stack: usize,
    pub backward_extensions: u64,
    pub trace: Option<Vec<TraceCluster>>,
}

#[derive(Debug, Default, Clone, Copy)]
struct Counters {
    clusters: u64,
    arc_sets: u64,
    terminals: u64,
    backward_extensions: u64,
}

fn is_terminal(idx: &FmIndex, body: &QRepr) -> (bool, usize) {
    let ranks = idx.prefix_ranks(body);
    let (substr, suff, pref) = (body.substr(), body.suff(), ranks.len());
    let terminal = substr == pref && pref == suff && suff > 0;
    (terminal, ranks.start)
}

/// Processes one cluster: emits the arcs of its terminal arc-sets into `arcs`
/// and returns the non-empty child clusters in alphabet order.
pub fn process_cluster<D: DestSet>(
    idx: &FmIndex,
    cluster: Cluster<D>,
    opts: &ReduceOptions,
    arcs: &mut Vec<Arc>,
    trace: Option<&mut Vec<TraceMember>>,
) -> Vec<Cluster<D>> {
    process_counted(idx, cluster, opts, arcs, &mut Counters::default(), trace)
}

fn process_counted<D: DestSet>(
    idx: &FmIndex,
    cluster: Cluster<D>,
    opts: &ReduceOptions,
    arcs: &mut Vec<Arc>,
    counters: &mut Counters,
    mut trace: Option<&mut Vec<TraceMember>>,
) -> Vec<Cluster<D>> {
    counters.clusters += 1;
    let label = String::from_utf8(cluster.extension.clone()).expect("ascii extension");
    let mut removed = D::removed_for(&cluster.members);

    let mut survivors = Vec::with_capacity(cluster.members.len());
    for m in cluster.members {
        let (terminal, rank) = is_terminal(idx, &m.body);
        counters.backward_extensions += 1;
        if let Some(t) = trace.as_deref_mut() {
            t.push(TraceMember {
                body: m.body,
                overlap_len: m.overlap_len,
                dest: m
                    .dest
                    .ranks()
                    .into_iter()
                    .map(|r| idx.read_at_rank(r))
                    .collect(),
                terminal,
            });
        }
        if !terminal {
            survivors.push(m);
            continue;
        }
        counters.terminals += 1;
        let source = idx.read_at_rank(rank);
        m.dest.for_each_rank(|r| {
            let target = idx.read_at_rank(r);
            if target == source && !opts.allow_self_loops {
                return;
            }
            arcs.push(Arc {
                source,
                target,
                overlap_len: m.overlap_len,
                label: label.clone(),
            });
            D::mark(&mut removed, r);
        });
    }
    D::seal(&mut removed);

    let mut children: [Vec<ArcSet<D>>; 4] = Default::default();
    for m in survivors {
        let Some(rest) = m.dest.minus(&removed) else {
            continue;
        };
        for (slot, c) in children.iter_mut().zip(Base::ALL) {
            let body = idx.extend_repr(&m.body, c);
            counters.backward_extensions += 2;
            if body.suff() > 0 {
                slot.push(ArcSet {
                    body,
                    overlap_len: m.overlap_len,
                    dest: rest.clone(),
                });
            }
        }
    }

    children
        .into_iter()
        .zip(Base::ALL)
        .filter(|(members, _)| !members.is_empty())
        .map(|(members, c)| {
            counters.arc_sets += members.len() as u64;
            let mut extension = Vec::with_capacity(cluster.extension.len() + 1);
            extension.push(c.to_ascii());
            extension.extend_from_slice(&cluster.extension);
            Cluster { extension, members }
        })
        .collect()
}

/// The basic cluster `C(epsilon)`; `basics` must be sorted by overlap.
pub fn basic_cluster<D: DestSet>(basics: &[BasicArcSet]) -> Cluster<D> {
    Cluster {
        extension: Vec::new(),
        members: basics
            .iter()
            .map(|b| ArcSet {
                body: b.overlap,
                overlap_len: b.overlap.len,
                dest: D::full(b.dest.clone()),
            })
            .collect(),
    }
}

/// Computes the arcs of the string graph from the basic arc-sets.
pub fn reduce_graph(
    idx: &FmIndex,
    basics: &[BasicArcSet],
    opts: &ReduceOptions,
) -> (StringGraph, ReduceStats) {
    debug_assert!(basics.iter().all(|b| b.overlap_len() >= opts.tau));
    debug_assert!(basics.windows(2).all(|w| w[0].overlap.lo < w[1].overlap.lo));
    let (mut arcs, stats) = match opts.mode {
        DestMode::Explicit => run::<SortedRanks>(idx, basics, opts),
        DestMode::Window => run::<MaskedWindow>(idx, basics, opts),
    };
    sort_arcs(&mut arcs);
    (StringGraph::new(idx.n_reads(), arcs, opts.tau), stats)
}

fn run<D: DestSet>(
    idx: &FmIndex,
    basics: &[BasicArcSet],
    opts: &ReduceOptions,
) -> (Vec<Arc>, ReduceStats) {
    let mut stats = ReduceStats {
        trace: opts.trace.then(Vec::new),
        ..Default::default()
    };
    if basics.is_empty() {
        return (Vec::new(), stats);
    }
    let root = basic_cluster::<D>(basics);
    let mut counters = Counters {
        arc_sets: root.members.len() as u64,
        ..Default::default()
    };
    let arcs = if opts.parallel && !opts.trace {
        run_parallel(idx, root, opts, &mut counters)
    } else {
        run_stack(idx, root, opts, &mut counters, &mut stats)
    };
    stats.clusters = counters.clusters;
    stats.arc_sets = counters.arc_sets;
    stats.terminal_arc_sets = counters.terminals;
    stats.backward_extensions = counters.backward_extensions;
    (arcs, stats)
}

fn run_stack<D: DestSet>(
    idx: &FmIndex,
    root: Cluster<D>,
    opts: &ReduceOptions,
    counters: &mut Counters,
    stats: &mut ReduceStats,
) -> Vec<Arc> {
    let mut arcs = Vec::new();
    let mut trace = opts.trace.then(Vec::new);
    let mut stack: Vec<D::Stored> = vec![D::store(root)];
    stats.max_stack = 1;
    while let Some(stored) = stack.pop() {
        let cluster = D::load(stored);
        let extension = String::from_utf8(cluster.extension.clone()).unwrap();
        let mut members = Vec::new();
        let children = process_counted(
            idx,
            cluster,
            opts,
            &mut arcs,
            counters,
            trace.is_some().then_some(&mut members),
        );
        stack.extend(children.into_iter().map(D::store));
        stats.max_stack = stats.max_stack.max(stack.len());
        if let Some(t) = trace.as_mut() {
            t.push(TraceCluster {
                extension,
                members,
                stack_len: stack.len(),
            });
        }
    }
    stats.trace = trace;
    arcs
}

struct Shared {
    arcs: Mutex<Vec<Vec<Arc>>>,
    clusters: AtomicU64,
    arc_sets: AtomicU64,
    terminals: AtomicU64,
    backward_extensions: AtomicU64,
}

fn run_parallel<D: DestSet>(
    idx: &FmIndex,
    root: Cluster<D>,
    opts: &ReduceOptions,
    counters: &mut Counters,
) -> Vec<Arc> {
    let shared = Shared {
        arcs: Mutex::new(Vec::new()),
        clusters: AtomicU64::new(0),
        arc_sets: AtomicU64::new(0),
        terminals: AtomicU64::new(0),
        backward_extensions: AtomicU64::new(0),
    };
    rayon::scope(|s| spawn_cluster(s, idx, opts, &shared, root));
    counters.clusters += shared.clusters.into_inner();
    counters.arc_sets += shared.arc_sets.into_inner();
    counters.terminals += shared.terminals.into_inner();
    counters.backward_extensions += shared.backward_extensions.into_inner();
    shared
        .arcs
        .into_inner()
        .unwrap()
        .into_iter()
        .flatten()
        .collect()
}

fn spawn_cluster<'s, D: DestSet + 's>(
    scope: &rayon::Scope<'s>,
    idx: &'s FmIndex,
    opts: &'s ReduceOptions,
    shared: &'s Shared,
    cluster: Cluster<D>,
) {
    scope.spawn(move |s| {
        let mut arcs = Vec::new();
        let mut c = Counters::default();
        let children = process_counted(idx, cluster, opts, &mut arcs, &mut c, None);
        if !arcs.is_empty() {
            shared.arcs.lock().unwrap().push(arcs);
        }
        shared.clusters.fetch_add(c.clusters, Ordering::Relaxed);
        shared.arc_sets.fetch_add(c.arc_sets, Ordering::Relaxed);
        shared.terminals.fetch_add(c.terminals, Ordering::Relaxed);
        shared
            .backward_extensions
            .fetch_add(c.backward_extensions, Ordering::Relaxed);
        for child in children {
            spawn_cluster(s, idx, opts, shared, child);
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::overlap::{compute_basic_arcsets, OverlapOptions};
    use crate::seqio::{NormalizeOptions, ReadSet};

    fn arcs_of(rs: &ReadSet, tau: usize, mode: DestMode) -> Vec<(usize, usize, usize, String)> {
        let idx = FmIndex::build(rs);
        let (basics, _) = compute_basic_arcsets(&idx, &OverlapOptions::new(tau));
        let mut opts = ReduceOptions::new(tau);
        opts.mode = mode;
        let (g, _) = reduce_graph(&idx, &basics, &opts);
        g.arcs
            .into_iter()
            .map(|a| (a.source, a.target, a.overlap_len, a.label))
            .collect()
    }

    #[test]
    fn r5_string_graph() {
        let rs = fixtures::r5();
        let expected = vec![
            (0, 2, 4, "ccg".to_string()),
            (1, 2, 4, "tcg".to_string()),
            (2, 3, 5, "ta".to_string()),
            (2, 4, 5, "ta".to_string()),
        ];
        assert_eq!(arcs_of(&rs, 2, DestMode::Explicit), expected);
        assert_eq!(arcs_of(&rs, 2, DestMode::Window), expected);
    }

    #[test]
    fn two_reads_single_arc() {
        let rs = ReadSet::from_seqs(&["acgtac", "gtacgg"], NormalizeOptions::default()).unwrap();
        assert_eq!(
            arcs_of(&rs, 4, DestMode::Explicit),
            vec![(0, 1, 4, "ac".to_string())]
        );
    }

    fn r5_trace() -> Vec<TraceCluster> {
        let rs = fixtures::r5();
        let idx = FmIndex::build(&rs);
        let (basics, _) = compute_basic_arcsets(&idx, &OverlapOptions::new(2));
        let mut opts = ReduceOptions::new(2);
        opts.trace = true;
        let (_, stats) = reduce_graph(&idx, &basics, &opts);
        stats.trace.unwrap()
    }

    #[test]
    fn r5_cluster_ta() {
        let trace = r5_trace();
        let ta = trace.iter().find(|c| c.extension == "ta").unwrap();
        assert_eq!(ta.members.len(), 2);
        // taca first (lexicographic), tacatgt second and terminal
        assert_eq!(ta.members[0].body.len, 4);
        assert!(!ta.members[0].terminal);
        assert_eq!(ta.members[0].dest, vec![3, 4]);
        assert_eq!(ta.members[1].body.len, 7);
        assert!(ta.members[1].terminal);
        assert_eq!(ta.members[1].dest, vec![3, 4]);
        // the residual of taca is empty, so nothing extends "ta"
        assert!(!trace
            .iter()
            .any(|c| c.extension.len() == 3 && c.extension.ends_with("ta")));
    }

    #[test]
    fn r5_cluster_ccg_and_root() {
        let trace = r5_trace();
        let ccg = trace.iter().find(|c| c.extension == "ccg").unwrap();
        assert_eq!(ccg.members.len(), 1);
        assert!(ccg.members[0].terminal);
        assert_eq!(ccg.members[0].dest, vec![2]);

        let root = &trace[0];
        assert_eq!(root.extension, "");
        assert!(root.members.iter().all(|m| !m.terminal));
        let first_level: Vec<&str> = trace
            .iter()
            .filter(|c| c.extension.len() == 1)
            .map(|c| c.extension.as_str())
            .collect();
        // popped in reverse push order
        assert_eq!(first_level, vec!["g", "a"]);
    }
}
