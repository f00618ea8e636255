//! Read ingestion and normalization.
//!
//! Raw FASTA/FASTQ records are case-folded to lowercase `acgt`. Records with an
//! `n` are dropped and counted. [`normalize`] then removes exact duplicates and
//! reads contained in another read so that the resulting [`ReadSet`] is
//! substring free, optionally adding reverse complements first.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::alphabet::{reverse_complement, Base};
use crate::error::{FsgError, Result};
use crate::fmindex::FmIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqFormat {
    Fasta,
    Fastq,
    Auto,
}

/// A record as it appears in the input, before normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRead {
    pub name: String,
    pub seq: Vec<u8>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawReads {
    pub reads: Vec<RawRead>,
    /// Records dropped because they contain `n`.
    pub dropped_ambiguous: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Read {
    pub id: usize,
    /// Original header, up to the first whitespace. RC copies carry a `/rc` suffix.
    pub name: String,
    /// Lowercase `acgt`, never empty.
    pub seq: Vec<u8>,
    /// Set when this read was added as the reverse complement of read `rc_of`.
    pub rc_of: Option<usize>,
}

impl Read {
    pub fn seq_str(&self) -> &str {
        std::str::from_utf8(&self.seq).expect("read sequences are ascii")
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct NormalizationReport {
    pub records: usize,
    pub dropped_ambiguous: usize,
    pub duplicates_removed: usize,
    pub contained_removed: usize,
    pub rc_added: usize,
    /// Reverse complements discarded because they duplicate or are contained
    /// in another read (palindromes, for example).
    pub rc_redundant: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ContainedPolicy {
    #[default]
    Drop,
    Error,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NormalizeOptions {
    pub add_rc: bool,
    pub contained: ContainedPolicy,
}

/// Substring-free read collection with dense ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadSet {
    pub reads: Vec<Read>,
    pub max_len: usize,
    pub report: NormalizationReport,
}

impl ReadSet {
    pub fn len(&self) -> usize {
        self.reads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reads.is_empty()
    }

    pub fn seqs(&self) -> Vec<&[u8]> {
        self.reads.iter().map(|r| r.seq.as_slice()).collect()
    }

    pub fn total_len(&self) -> usize {
        self.reads.iter().map(|r| r.seq.len() + 1).sum()
    }

    /// Id of the read whose sequence is the reverse complement of `id`, if present.
    pub fn rc_partner(&self, id: usize) -> Option<usize> {
        let rc = reverse_complement(&self.reads[id].seq);
        self.reads.iter().position(|r| r.seq == rc)
    }

    /// Normalizes plain sequences named `s0`, `s1`, ...
    pub fn from_seqs<S: AsRef<[u8]>>(seqs: &[S], opts: NormalizeOptions) -> Result<ReadSet> {
        let raw = RawReads {
            reads: seqs
                .iter()
                .enumerate()
                .map(|(i, s)| RawRead {
                    name: format!("s{i}"),
                    seq: s.as_ref().to_ascii_lowercase(),
                })
                .collect(),
            dropped_ambiguous: 0,
        };
        normalize(raw, opts)
    }

    /// Rebuilds a read set from an index, naming each read by its id.
    pub fn from_index(idx: &FmIndex) -> ReadSet {
        let reads: Vec<Read> = (0..idx.n_reads())
            .map(|id| Read {
                id,
                name: id.to_string(),
                seq: idx.read_sequence(id),
                rc_of: None,
            })
            .collect();
        let max_len = reads.iter().map(Read::len).max().unwrap_or(0);
        ReadSet {
            reads,
            max_len,
            report: NormalizationReport::default(),
        }
    }
}

pub fn parse_reads(path: &Path, format: SeqFormat) -> Result<RawReads> {
    let text = fs::read_to_string(path)?;
    parse_str(&text, format)
}

pub fn parse_str(text: &str, format: SeqFormat) -> Result<RawReads> {
    let format = match format {
        SeqFormat::Auto => match detect_format(text)? {
            Some(f) => f,
            None => return Ok(RawReads::default()),
        },
        f => f,
    };
    match format {
        SeqFormat::Fasta => parse_fasta(text),
        SeqFormat::Fastq => parse_fastq(text),
        SeqFormat::Auto => unreachable!(),
    }
}

fn detect_format(text: &str) -> Result<Option<SeqFormat>> {
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        return match line.as_bytes()[0] {
            b'>' => Ok(Some(SeqFormat::Fasta)),
            b'@' => Ok(Some(SeqFormat::Fastq)),
            _ => Err(FsgError::Parse {
                line: i + 1,
                msg: "expected '>' or '@' at start of first record".into(),
            }),
        };
    }
    Ok(None)
}

fn header_name(header: &str) -> String {
    header.split_whitespace().next().unwrap_or("").to_string()
}

/// Appends the bases of `line` to `seq`. Returns false if an `n` was seen.
fn push_bases(seq: &mut Vec<u8>, line: &str, lineno: usize) -> Result<bool> {
    let mut clean = true;
    for ch in line.chars() {
        if let Ok(b) = Base::try_from(ch) {
            seq.push(b.to_ascii());
        } else if ch == 'n' || ch == 'N' {
            clean = false;
        } else {
            return Err(FsgError::Alphabet { line: lineno, ch });
        }
    }
    Ok(clean)
}

fn parse_fasta(text: &str) -> Result<RawReads> {
    struct Pending {
        name: String,
        seq: Vec<u8>,
        clean: bool,
        line: usize,
    }

    let mut out = RawReads::default();
    let mut cur: Option<Pending> = None;
    let finish = |p: Pending, out: &mut RawReads| -> Result<()> {
        if p.seq.is_empty() && p.clean {
            return Err(FsgError::Parse {
                line: p.line,
                msg: format!("record {:?} has an empty sequence", p.name),
            });
        }
        if p.clean {
            out.reads.push(RawRead {
                name: p.name,
                seq: p.seq,
            });
        } else {
            out.dropped_ambiguous += 1;
        }
        Ok(())
    };

    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('>') {
            if let Some(p) = cur.take() {
                finish(p, &mut out)?;
            }
            cur = Some(Pending {
                name: header_name(header),
                seq: Vec::new(),
                clean: true,
                line: lineno,
            });
        } else {
            let p = cur.as_mut().ok_or_else(|| FsgError::Parse {
                line: lineno,
                msg: "sequence data before the first header".into(),
            })?;
            if !push_bases(&mut p.seq, line, lineno)? {
                p.clean = false;
            }
        }
    }
    if let Some(p) = cur.take() {
        finish(p, &mut out)?;
    }
    Ok(out)
}

fn parse_fastq(text: &str) -> Result<RawReads> {
    let mut out = RawReads::default();
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();

    while let Some((hline, header)) = lines.next() {
        let name = header.strip_prefix('@').ok_or_else(|| FsgError::Parse {
            line: hline,
            msg: "expected '@' header".into(),
        })?;
        let truncated = |line| FsgError::Parse {
            line,
            msg: "truncated FASTQ record".into(),
        };
        let (sline, seq_line) = lines.next().ok_or_else(|| truncated(hline))?;
        let (pline, plus) = lines.next().ok_or_else(|| truncated(sline))?;
        if !plus.starts_with('+') {
            return Err(FsgError::Parse {
                line: pline,
                msg: "expected '+' separator".into(),
            });
        }
        let (qline, qual) = lines.next().ok_or_else(|| truncated(pline))?;
        if qual.len() != seq_line.len() {
            return Err(FsgError::Parse {
                line: qline,
                msg: "quality length differs from sequence length".into(),
            });
        }
        let mut seq = Vec::with_capacity(seq_line.len());
        if push_bases(&mut seq, seq_line, sline)? {
            out.reads.push(RawRead {
                name: header_name(name),
                seq,
            });
        } else {
            out.dropped_ambiguous += 1;
        }
    }
    Ok(out)
}

struct Candidate {
    name: String,
    seq: Vec<u8>,
    /// Index into the previous survivor list this read is the RC of.
    rc_of: Option<usize>,
}

#[derive(Default)]
struct FilterCounts {
    duplicates: usize,
    contained: usize,
    rc_removed: usize,
}

/// Removes duplicates (keeping the first occurrence) and contained reads.
/// Returns the indices of the survivors, in input order.
fn filter_substring_free(
    cands: &[Candidate],
    policy: ContainedPolicy,
    counts: &mut FilterCounts,
) -> Result<Vec<usize>> {
    let mut first: HashMap<&[u8], usize> = HashMap::with_capacity(cands.len());
    let mut unique = Vec::with_capacity(cands.len());
    for (i, c) in cands.iter().enumerate() {
        if first.contains_key(c.seq.as_slice()) {
            if policy == ContainedPolicy::Error {
                return Err(FsgError::ContainedRead {
                    name: c.name.clone(),
                });
            }
            if c.rc_of.is_some() {
                counts.rc_removed += 1;
            } else {
                counts.duplicates += 1;
            }
        } else {
            first.insert(c.seq.as_slice(), i);
            unique.push(i);
        }
    }

    // With duplicates gone, a read is contained in another read iff it occurs
    // more than once in the whole collection.
    let seqs: Vec<&[u8]> = unique.iter().map(|&i| cands[i].seq.as_slice()).collect();
    let idx = FmIndex::from_sequences(&seqs);
    let mut survivors = Vec::with_capacity(unique.len());
    for &i in &unique {
        if idx.count(&cands[i].seq) > 1 {
            if policy == ContainedPolicy::Error {
                return Err(FsgError::ContainedRead {
                    name: cands[i].name.clone(),
                });
            }
            if cands[i].rc_of.is_some() {
                counts.rc_removed += 1;
            } else {
                counts.contained += 1;
            }
        } else {
            survivors.push(i);
        }
    }
    Ok(survivors)
}

pub fn normalize(raw: RawReads, opts: NormalizeOptions) -> Result<ReadSet> {
    let mut report = NormalizationReport {
        records: raw.reads.len() + raw.dropped_ambiguous,
        dropped_ambiguous: raw.dropped_ambiguous,
        ..Default::default()
    };
    let cands: Vec<Candidate> = raw
        .reads
        .into_iter()
        .map(|r| Candidate {
            name: r.name,
            seq: r.seq,
            rc_of: None,
        })
        .collect();

    let mut counts = FilterCounts::default();
    let keep = filter_substring_free(&cands, opts.contained, &mut counts)?;
    let mut cands: Vec<Candidate> = {
        let mut slots: Vec<Option<Candidate>> = cands.into_iter().map(Some).collect();
        keep.iter().map(|&i| slots[i].take().unwrap()).collect()
    };

    if opts.add_rc {
        let n = cands.len();
        for i in 0..n {
            let rc = Candidate {
                name: format!("{}/rc", cands[i].name),
                seq: reverse_complement(&cands[i].seq),
                rc_of: Some(i),
            };
            cands.push(rc);
        }
        // RC removal must not fail the run: palindromes always collide.
        let keep = filter_substring_free(&cands, ContainedPolicy::Drop, &mut counts)?;
        let mut new_id = vec![usize::MAX; cands.len()];
        for (id, &i) in keep.iter().enumerate() {
            new_id[i] = id;
        }
        let mut slots: Vec<Option<Candidate>> = cands.into_iter().map(Some).collect();
        cands = keep
            .iter()
            .map(|&i| {
                let mut c = slots[i].take().unwrap();
                c.rc_of = c
                    .rc_of
                    .map(|src| new_id[src])
                    .filter(|&id| id != usize::MAX);
                c
            })
            .collect();
    }

    report.duplicates_removed = counts.duplicates;
    report.contained_removed = counts.contained;
    report.rc_redundant = counts.rc_removed;
    report.rc_added = cands.iter().filter(|c| c.rc_of.is_some()).count();

    if cands.is_empty() {
        return Err(FsgError::EmptyInput);
    }
    let reads: Vec<Read> = cands
        .into_iter()
        .enumerate()
        .map(|(id, c)| Read {
            id,
            name: c.name,
            seq: c.seq,
            rc_of: c.rc_of,
        })
        .collect();
    let max_len = reads.iter().map(Read::len).max().unwrap_or(0);
    Ok(ReadSet {
        reads,
        max_len,
        report,
    })
}
