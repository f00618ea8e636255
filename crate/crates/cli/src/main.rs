use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use fsg_core::fmindex::FmIndex;
use fsg_core::graph::Provenance;
use fsg_core::graph_io::{output_names, parse_tsv, stats, write_gfa1, write_tsv};
use fsg_core::oracle::{naive_overlap_graph, naive_string_graph};
use fsg_core::overlap::GenerationRepr;
use fsg_core::pipeline::{build_string_graph, BuildOptions};
use fsg_core::reduce::DestMode;
use fsg_core::seqio::{
    normalize, parse_reads, ContainedPolicy, NormalizeOptions, ReadSet, SeqFormat,
};
use fsg_core::sim::{simulate, write_fasta, SimParams};
use fsg_core::StringGraph;

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (rng: ChaCha8)");

/// Exit status for bad input.
const EXIT_INPUT: u8 = 2;
/// Exit status when the minimum overlap leaves nothing to explore.
const EXIT_EMPTY_EXPLORATION: u8 = 3;

#[derive(Parser)]
#[command(name = "fsg", version = VERSION, about = "String graph construction from an FM-index")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize reads and write their FM-index.
    Index(IndexArgs),
    /// Build the string graph of a read file or index.
    Build(BuildArgs),
    /// Build the string graph by brute force (small inputs only).
    Oracle(OracleArgs),
    /// Simulate error-free reads from a random genome.
    Gen(GenArgs),
    /// Summarize a TSV graph as JSON.
    Stats(StatsArgs),
    /// Time the pipeline and count index accesses for several minimum overlaps.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KeepContained {
    Drop,
    Error,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Tsv,
    Gfa,
}

#[derive(Clone, Copy, ValueEnum)]
enum DestModeArg {
    Explicit,
    Window,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenerationArg {
    List,
    Bitvectors,
}

#[derive(Args)]
struct ReadOpts {
    /// Add the reverse complement of every read.
    #[arg(long)]
    rc: bool,
    /// What to do with reads contained in other reads.
    #[arg(long, value_enum, default_value = "drop")]
    keep_contained: KeepContained,
}

impl ReadOpts {
    fn normalize_options(&self) -> NormalizeOptions {
        NormalizeOptions {
            add_rc: self.rc,
            contained: match self.keep_contained {
                KeepContained::Drop => ContainedPolicy::Drop,
                KeepContained::Error => ContainedPolicy::Error,
            },
        }
    }

    fn flags(&self) -> String {
        format!("rc={}", self.rc)
    }
}

#[derive(Args)]
struct IndexArgs {
    /// FASTA or FASTQ reads.
    input: PathBuf,
    #[command(flatten)]
    reads: ReadOpts,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct GraphOpts {
    /// Minimum overlap length.
    #[arg(short = 't', long = "min-overlap", default_value_t = 1)]
    tau: usize,
    #[arg(long)]
    allow_self_loops: bool,
    #[arg(long, value_enum, default_value = "tsv")]
    format: GraphFormat,
    /// Output file (stdout if absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BuildArgs {
    /// Reads (FASTA/FASTQ) or an index written by `fsg index`.
    input: PathBuf,
    #[command(flatten)]
    reads: ReadOpts,
    #[command(flatten)]
    graph: GraphOpts,
    #[arg(long, env = "FSG_THREADS", default_value_t = 1)]
    threads: usize,
    /// Representation of destination sets during reduction.
    #[arg(long, value_enum, default_value = "window")]
    dest_mode: DestModeArg,
    /// Representation of each generation of potential overlaps.
    #[arg(long, value_enum, default_value = "list")]
    generation: GenerationArg,
}

#[derive(Args)]
struct OracleArgs {
    input: PathBuf,
    #[command(flatten)]
    reads: ReadOpts,
    #[command(flatten)]
    graph: GraphOpts,
    /// Emit the overlap graph before transitive reduction.
    #[arg(long)]
    overlap_graph: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    genome_len: usize,
    #[arg(long)]
    read_len: usize,
    #[arg(long)]
    coverage: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    /// Graph in TSV format.
    input: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Reads or index.
    dataset: PathBuf,
    /// Comma-separated minimum overlaps.
    #[arg(long = "tau", value_delimiter = ',', required = true)]
    taus: Vec<usize>,
    /// Fill the backward-extension columns.
    #[arg(long)]
    count_extensions: bool,
    #[command(flatten)]
    reads: ReadOpts,
    #[arg(long, env = "FSG_THREADS", default_value_t = 1)]
    threads: usize,
    /// Runs per minimum overlap; the fastest is reported.
    #[arg(long, default_value_t = 1)]
    repeat: usize,
}

struct Input {
    reads: ReadSet,
    index: FmIndex,
}

fn warn(msg: impl AsRef<str>) {
    eprintln!("fsg: warning: {}", msg.as_ref());
}

fn load_reads(path: &Path, opts: &ReadOpts) -> Result<ReadSet> {
    let raw = parse_reads(path, SeqFormat::Auto)
        .with_context(|| format!("reading {}", path.display()))?;
    let rs = normalize(raw, opts.normalize_options())
        .with_context(|| format!("normalizing {}", path.display()))?;
    let r = &rs.report;
    if r.dropped_ambiguous > 0 {
        warn(format!(
            "dropped {} reads containing non-acgt characters",
            r.dropped_ambiguous
        ));
    }
    if r.duplicates_removed > 0 {
        warn(format!("removed {} duplicate reads", r.duplicates_removed));
    }
    if r.contained_removed > 0 {
        warn(format!("removed {} contained reads", r.contained_removed));
    }
    Ok(rs)
}

/// Loads either an index file or a read file, detected by the magic bytes.
fn load_input(path: &Path, opts: &ReadOpts) -> Result<Input> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    if FmIndex::looks_like_index(&bytes) {
        if opts.rc {
            warn("--rc is ignored for index input");
        }
        let index = FmIndex::read_from(bytes.as_slice())
            .with_context(|| format!("loading index {}", path.display()))?;
        let reads = ReadSet::from_index(&index);
        return Ok(Input { reads, index });
    }
    let reads = load_reads(path, opts)?;
    let index = FmIndex::build(&reads);
    Ok(Input { reads, index })
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn provenance(input: &Path, reads: &ReadOpts, graph: &GraphOpts) -> Provenance {
    Provenance {
        input: input.display().to_string(),
        flags: format!(
            "min_overlap={} {} self_loops={}",
            graph.tau,
            reads.flags(),
            graph.allow_self_loops
        ),
    }
}

fn write_graph(g: &StringGraph, rs: &ReadSet, opts: &GraphOpts) -> Result<()> {
    let names = output_names(rs);
    let mut out = open_output(opts.output.as_deref())?;
    match opts.format {
        GraphFormat::Tsv => write_tsv(g, &names, &mut out)?,
        GraphFormat::Gfa => write_gfa1(g, rs, &names, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn check_tau(tau: usize) -> Result<()> {
    if tau == 0 {
        bail!("--min-overlap must be at least 1");
    }
    Ok(())
}

/// Overlaps are proper, so no overlap reaches the longest read's length.
fn nothing_to_explore(tau: usize, rs: &ReadSet) -> bool {
    if tau >= rs.max_len {
        warn(format!(
            "minimum overlap {tau} is not below the longest read length {}; the graph is empty",
            rs.max_len
        ));
        return true;
    }
    false
}

fn cmd_index(args: &IndexArgs) -> Result<u8> {
    let rs = load_reads(&args.input, &args.reads)?;
    let idx = FmIndex::build(&rs);
    let mut out = open_output(Some(&args.output))?;
    idx.write_to(&mut out)?;
    out.flush()?;
    Ok(0)
}

fn cmd_build(args: &BuildArgs) -> Result<u8> {
    check_tau(args.graph.tau)?;
    let input = load_input(&args.input, &args.reads)?;
    let empty = nothing_to_explore(args.graph.tau, &input.reads);
    let mut opts = BuildOptions::new(args.graph.tau);
    opts.allow_self_loops = args.graph.allow_self_loops;
    opts.threads = args.threads.max(1);
    opts.dest_mode = match args.dest_mode {
        DestModeArg::Explicit => DestMode::Explicit,
        DestModeArg::Window => DestMode::Window,
    };
    opts.generation_repr = match args.generation {
        GenerationArg::List => GenerationRepr::FlatList,
        GenerationArg::Bitvectors => GenerationRepr::PairedBitvectors,
    };
    let (g, _) = build_string_graph(&input.index, &opts);
    let g = g.with_provenance(provenance(&args.input, &args.reads, &args.graph));
    write_graph(&g, &input.reads, &args.graph)?;
    Ok(if empty { EXIT_EMPTY_EXPLORATION } else { 0 })
}

fn cmd_oracle(args: &OracleArgs) -> Result<u8> {
    check_tau(args.graph.tau)?;
    let rs = load_reads(&args.input, &args.reads)?;
    let empty = nothing_to_explore(args.graph.tau, &rs);
    let (tau, self_loops) = (args.graph.tau, args.graph.allow_self_loops);
    let g = if args.overlap_graph {
        StringGraph::new(rs.len(), naive_overlap_graph(&rs, tau, self_loops), tau)
    } else {
        naive_string_graph(&rs, tau, self_loops)
    };
    let g = g.with_provenance(provenance(&args.input, &args.reads, &args.graph));
    write_graph(&g, &rs, &args.graph)?;
    Ok(if empty { EXIT_EMPTY_EXPLORATION } else { 0 })
}

fn cmd_gen(args: &GenArgs) -> Result<u8> {
    if args.read_len == 0 || args.genome_len < args.read_len {
        bail!("need --genome-len >= --read-len >= 1");
    }
    if !(args.coverage > 0.0 && args.coverage.is_finite()) {
        bail!("--coverage must be positive");
    }
    let sim = simulate(&SimParams {
        genome_len: args.genome_len,
        read_len: args.read_len,
        coverage: args.coverage,
        seed: args.seed,
    });
    let mut out = open_output(args.output.as_deref())?;
    write_fasta(&sim.reads, &mut out)?;
    out.flush()?;
    Ok(0)
}

fn cmd_stats(args: &StatsArgs) -> Result<u8> {
    let file =
        File::open(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let g = parse_tsv(io::BufReader::new(file), None)
        .with_context(|| format!("parsing {}", args.input.display()))?;
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &stats(&g))?;
    writeln!(out)?;
    Ok(0)
}

/// Process resident-set high-water mark in bytes, where the OS reports it.
fn peak_rss_bytes() -> Option<u64> {
    let status = fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

fn cmd_bench(args: &BenchArgs) -> Result<u8> {
    let input = load_input(&args.dataset, &args.reads)?;
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "tau,wall_ms,peak_mem_bytes,index_bytes,backward_extensions,overlap_extensions,reduce_extensions,clusters,arc_sets,arcs"
    )?;
    for &tau in &args.taus {
        check_tau(tau)?;
        let mut opts = BuildOptions::new(tau);
        opts.threads = args.threads.max(1);
        let mut best = None;
        for _ in 0..args.repeat.max(1) {
            let t = Instant::now();
            let (g, s) = build_string_graph(&input.index, &opts);
            let ms = t.elapsed().as_secs_f64() * 1e3;
            if best.as_ref().is_none_or(|(b, _, _)| ms < *b) {
                best = Some((ms, g.arcs.len(), s));
            }
        }
        let (ms, arcs, s) = best.expect("at least one run");
        let ext = |v: u64| {
            if args.count_extensions {
                v.to_string()
            } else {
                String::new()
            }
        };
        writeln!(
            out,
            "{tau},{ms:.3},{},{},{},{},{},{},{},{arcs}",
            peak_rss_bytes().map_or(String::new(), |b| b.to_string()),
            input.index.heap_bytes(),
            ext(s.backward_extensions()),
            ext(s.overlap.backward_extensions),
            ext(s.reduce.backward_extensions),
            s.reduce.clusters,
            s.reduce.arc_sets,
        )?;
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Index(a) => cmd_index(a),
        Command::Build(a) => cmd_build(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("fsg: error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
