//! TSV and GFA1 serialization of string graphs, and summary statistics.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{FsgError, Result};
use crate::graph::{Arc, Provenance, StringGraph};
use crate::seqio::ReadSet;

const TSV_MAGIC: &str = "#fsg-string-graph\tv1";

/// Output names for every read: the original header, made unique by
/// appending `.k` on collision.
pub fn output_names(rs: &ReadSet) -> Vec<String> {
    let mut used: HashSet<String> = HashSet::with_capacity(rs.len());
    rs.reads
        .iter()
        .map(|r| {
            let base = if r.name.is_empty() {
                r.id.to_string()
            } else {
                r.name.clone()
            };
            let mut name = base.clone();
            let mut k = 1;
            while used.contains(&name) {
                name = format!("{base}.{k}");
                k += 1;
            }
            used.insert(name.clone());
            name
        })
        .collect()
}

pub fn write_tsv<W: Write>(g: &StringGraph, names: &[String], mut w: W) -> Result<()> {
    writeln!(w, "{TSV_MAGIC}")?;
    writeln!(w, "#n_reads\t{}", g.n_reads)?;
    writeln!(w, "#tau\t{}", g.tau)?;
    writeln!(w, "#arcs\t{}", g.arcs.len())?;
    writeln!(w, "#input\t{}", g.provenance.input)?;
    writeln!(w, "#flags\t{}", g.provenance.flags)?;
    writeln!(w, "#source\ttarget\toverlap\tlabel")?;
    for a in &g.arcs {
        writeln!(
            w,
            "{}\t{}\t{}\t{}",
            names[a.source], names[a.target], a.overlap_len, a.label
        )?;
    }
    w.flush()?;
    Ok(())
}

/// Parses a TSV graph. With `names`, read names are resolved to their index
/// in that table; otherwise ids are assigned in order of first appearance.
pub fn parse_tsv<R: BufRead>(r: R, names: Option<&[String]>) -> Result<StringGraph> {
    let lookup: Option<HashMap<&str, usize>> = names.map(|ns| {
        ns.iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect()
    });
    let mut assigned: HashMap<String, usize> = HashMap::new();
    let mut n_reads = None;
    let mut tau = None;
    let mut declared_arcs = None;
    let mut provenance = Provenance::default();
    let mut arcs = Vec::new();

    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let bad = |msg: &str| FsgError::GraphFormat {
            line: lineno,
            msg: msg.to_string(),
        };
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('#') {
            let (key, value) = header.split_once('\t').unwrap_or((header, ""));
            let number = || {
                value
                    .parse::<usize>()
                    .map_err(|_| bad("expected an integer"))
            };
            match key {
                "n_reads" => n_reads = Some(number()?),
                "tau" => tau = Some(number()?),
                "arcs" => declared_arcs = Some(number()?),
                "input" => provenance.input = value.to_string(),
                "flags" => provenance.flags = value.to_string(),
                _ => {}
            }
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(bad("expected 4 tab-separated fields"));
        }
        let mut resolve = |name: &str| -> Result<usize> {
            match &lookup {
                Some(map) => map
                    .get(name)
                    .copied()
                    .ok_or_else(|| bad("unknown read name")),
                None => {
                    let next = assigned.len();
                    Ok(*assigned.entry(name.to_string()).or_insert(next))
                }
            }
        };
        let source = resolve(fields[0])?;
        let target = resolve(fields[1])?;
        let overlap_len = fields[2].parse().map_err(|_| bad("bad overlap length"))?;
        arcs.push(Arc {
            source,
            target,
            overlap_len,
            label: fields[3].to_string(),
        });
    }

    if let Some(n) = declared_arcs {
        if n != arcs.len() {
            return Err(FsgError::GraphFormat {
                line: 0,
                msg: format!("header declares {n} arcs, found {}", arcs.len()),
            });
        }
    }
    let n_reads = n_reads.unwrap_or_else(|| names.map_or(assigned.len(), |n| n.len()));
    let mut g = StringGraph::new(n_reads, arcs, tau.unwrap_or(0));
    g.provenance = provenance;
    Ok(g)
}

pub fn write_gfa1<W: Write>(
    g: &StringGraph,
    rs: &ReadSet,
    names: &[String],
    mut w: W,
) -> Result<()> {
    writeln!(w, "H\tVN:Z:1.0")?;
    for r in &rs.reads {
        writeln!(w, "S\t{}\t{}", names[r.id], r.seq_str())?;
    }
    for a in &g.arcs {
        writeln!(
            w,
            "L\t{}\t+\t{}\t+\t{}M",
            names[a.source], names[a.target], a.overlap_len
        )?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub arcs: usize,
    pub n_reads: usize,
    /// Vertices with at least one incident arc.
    pub vertices_with_arcs: usize,
    pub max_in_degree: usize,
    pub max_out_degree: usize,
    /// degree -> number of vertices, over all `n_reads` vertices.
    pub in_degree_hist: BTreeMap<usize, usize>,
    pub out_degree_hist: BTreeMap<usize, usize>,
    /// overlap length -> number of arcs.
    pub overlap_hist: BTreeMap<usize, usize>,
}

pub fn stats(g: &StringGraph) -> GraphStats {
    let n = g
        .arcs
        .iter()
        .map(|a| a.source.max(a.target) + 1)
        .max()
        .unwrap_or(0)
        .max(g.n_reads);
    let mut indeg = vec![0usize; n];
    let mut outdeg = vec![0usize; n];
    let mut overlap_hist = BTreeMap::new();
    for a in &g.arcs {
        outdeg[a.source] += 1;
        indeg[a.target] += 1;
        *overlap_hist.entry(a.overlap_len).or_insert(0) += 1;
    }
    let hist = |d: &[usize]| {
        let mut h = BTreeMap::new();
        for &x in d {
            *h.entry(x).or_insert(0) += 1;
        }
        h
    };
    GraphStats {
        arcs: g.arcs.len(),
        n_reads: g.n_reads,
        vertices_with_arcs: (0..n).filter(|&v| indeg[v] + outdeg[v] > 0).count(),
        max_in_degree: indeg.iter().copied().max().unwrap_or(0),
        max_out_degree: outdeg.iter().copied().max().unwrap_or(0),
        in_degree_hist: hist(&indeg),
        out_degree_hist: hist(&outdeg),
        overlap_hist,
    }
}
