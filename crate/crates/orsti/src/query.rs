//! Query subcommands and their dispatch against a loaded archive.

use std::collections::BTreeSet;

use clap::{Args, Subcommand};
use orsti_core::approx::GapIndex;
use orsti_core::doc_retrieval::list_documents;
use orsti_core::lz::Lz77Index;
use orsti_core::weighted_anc::LocusIndex;
use orsti_core::{SaRange, SuffixIndex};
use serde_json::Value;

use crate::archive::Index;
use crate::formats::pattern;
use crate::{Error, Result};

/// Pattern flags shared by every query.
#[derive(Debug, Clone, Default, Args)]
pub struct PatternArgs {
    /// Pattern as raw bytes of the argument.
    #[arg(long, global = true)]
    pub pattern: Option<String>,
    /// Pattern spelled in hex.
    #[arg(long, global = true)]
    pub pattern_hex: Option<String>,
    /// Second pattern piece for gap queries.
    #[arg(long, global = true)]
    pub pattern2: Option<String>,
    #[arg(long, global = true)]
    pub pattern2_hex: Option<String>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Op {
    /// SA-range of the pattern (1-based ranks).
    SaRange,
    /// Start positions of the pattern.
    Occ,
    /// Documents containing the pattern.
    Docs,
    /// The k most relevant documents for the pattern.
    Topk {
        #[arg(long)]
        k: usize,
    },
    /// Occurrences with exactly one mismatch.
    OneError,
    /// Occurrences with at most one mismatch.
    AtMostOne,
    /// Occurrences of pattern, then d arbitrary symbols, then pattern2.
    Gap {
        #[arg(long)]
        d: usize,
    },
    /// LZ77 parse of the substring [i, j].
    Scq {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Suffix in [l, r] sharing the longest prefix with suffix k.
    Ilcp {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        r: usize,
    },
    /// Occurrences lying inside [i, j].
    PriReport {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Number of occurrences lying inside [i, j].
    PriCount {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Number of occurrences starting at or before k.
    Rank {
        #[arg(long)]
        k: usize,
    },
    /// Start of the k-th occurrence.
    Select {
        #[arg(long)]
        k: usize,
    },
    /// First occurrence starting at or after i.
    Successive {
        #[arg(long)]
        i: usize,
    },
    /// Greedy leftmost non-overlapping occurrences.
    Nonoverlap,
    /// Highest ancestor of a node whose weight reaches t (1-based ids).
    Wanc {
        #[arg(long)]
        leaf: usize,
        #[arg(long)]
        t: u64,
    },
    /// SA-range of the substring [i, j].
    Locus {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Primary occurrences in the LZ77 index.
    PrimaryOcc {
        /// Also report secondary occurrences, found by scanning copies.
        #[arg(long)]
        with_secondary: bool,
    },
    /// Points inside a rectangle.
    GeoReport {
        /// X1,X2,Y1,Y2
        #[arg(long)]
        rect: String,
    },
}

/// One output line: named fields printed space-separated, or as an object.
#[derive(Debug, Clone, PartialEq)]
pub struct Record(pub Vec<(&'static str, Value)>);

impl Record {
    pub fn text(&self) -> String {
        let fields: Vec<String> = self
            .0
            .iter()
            .map(|(_, v)| match v {
                Value::Null => "-".to_string(),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            })
            .collect();
        fields.join(" ")
    }

    pub fn json(&self) -> String {
        let map: serde_json::Map<String, Value> = self.0.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        Value::Object(map).to_string()
    }
}

fn single(name: &'static str, v: impl Into<Value>) -> Record {
    Record(vec![(name, v.into())])
}

fn positions(ps: impl IntoIterator<Item = usize>) -> Vec<Record> {
    ps.into_iter().map(|p| single("pos", p)).collect()
}

fn range(r: SaRange) -> Vec<Record> {
    if r.is_empty() {
        return Vec::new();
    }
    vec![Record(vec![("lo", r.lo.into()), ("hi", r.hi.into())])]
}

fn mismatch(index: &Index, expected: &'static str) -> Error {
    Error::KindMismatch { expected, found: index.kind() }
}

fn parse_rect(s: &str) -> Result<[usize; 4]> {
    let bad = || Error::Format(format!("bad rectangle {s:?}, expected X1,X2,Y1,Y2"));
    let v: Vec<usize> = s.split(',').map(|f| f.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
    v.try_into().map_err(|_| bad())
}

/// All occurrences from the primary ones, by pushing each occurrence that
/// sits inside a copy source forward to the copy.
pub fn with_secondary(lz: &Lz77Index, q: &[u8]) -> Vec<usize> {
    let mut found: BTreeSet<usize> = lz.primary_occurrences(q).into_iter().collect();
    if q.is_empty() {
        return found.into_iter().collect();
    }
    let starts = lz.parse().starts();
    let mut work: Vec<usize> = found.iter().copied().collect();
    while let Some(o) = work.pop() {
        for (ph, &u) in lz.parse().phrases().iter().zip(&starts) {
            if ph.l < q.len() {
                continue;
            }
            let src = u - ph.f;
            if o >= src && o + q.len() <= src + ph.l && found.insert(o + ph.f) {
                work.push(o + ph.f);
            }
        }
    }
    found.into_iter().collect()
}

/// Runs `op` against `index`.
pub fn run(index: &Index, op: &Op, pat: &PatternArgs) -> Result<Vec<Record>> {
    let q = || pattern(pat.pattern.as_deref(), pat.pattern_hex.as_deref());
    let text_index = |expected| index.text_index().ok_or_else(|| mismatch(index, expected));
    Ok(match op {
        Op::SaRange => range(text_index("sa")?.sa_range(&q()?)),
        Op::Occ => positions(text_index("sa")?.occurrences(&q()?)),
        Op::Locus { i, j } => {
            let sidx: &SuffixIndex = text_index("sa")?;
            range(LocusIndex::from_index(sidx.clone()).locus(*i, *j)?)
        }
        Op::Docs => {
            let d = index.documents().ok_or_else(|| mismatch(index, "docs"))?;
            list_documents(d, &q()?).into_iter().map(|d| single("doc", d)).collect()
        }
        Op::Topk { k } => {
            let Index::Topk(t) = index else { return Err(mismatch(index, "topk")) };
            t.topk(&q()?, *k)
                .into_iter()
                .map(|(d, s)| Record(vec![("doc", d.into()), ("score", s.into())]))
                .collect()
        }
        Op::OneError | Op::AtMostOne | Op::Gap { .. } => {
            let Index::OneError(o) = index else { return Err(mismatch(index, "one-error")) };
            let q = q()?;
            match op {
                Op::OneError => positions(o.query_one_mismatch(&q)),
                Op::AtMostOne => positions(o.query_at_most_one(&q)),
                Op::Gap { d } => {
                    let q2 = pattern(pat.pattern2.as_deref(), pat.pattern2_hex.as_deref())?;
                    let g = GapIndex::from_indexes(o.forward().clone(), o.reverse().clone(), *d)?;
                    positions(g.query(&q, &q2)?)
                }
                _ => unreachable!(),
            }
        }
        Op::Scq { .. } | Op::Ilcp { .. } => {
            let Index::Scq { index: s, .. } = index else { return Err(mismatch(index, "scq")) };
            match op {
                Op::Scq { i, j } => s
                    .scq(*i, *j)?
                    .phrases()
                    .iter()
                    .map(|p| Record(vec![("f", p.f.into()), ("l", p.l.into()), ("c", p.c.map(u32::from).into())]))
                    .collect(),
                Op::Ilcp { k, l, r } => {
                    let (t, len) = s.ilcp(*k, *l, *r)?;
                    vec![Record(vec![("t", t.into()), ("len", len.into())])]
                }
                _ => unreachable!(),
            }
        }
        Op::PriReport { .. }
        | Op::PriCount { .. }
        | Op::Rank { .. }
        | Op::Select { .. }
        | Op::Successive { .. }
        | Op::Nonoverlap => {
            let Index::Restricted { index: r, .. } = index else { return Err(mismatch(index, "restricted")) };
            let q = q()?;
            match *op {
                Op::PriReport { i, j } => positions(r.pri_report(&q, i, j)?),
                Op::PriCount { i, j } => vec![single("count", r.pri_count(&q, i, j)?)],
                Op::Rank { k } => vec![single("count", r.substring_rank(&q, k))],
                Op::Select { k } => positions(r.substring_select(&q, k)),
                Op::Successive { i } => positions(r.successive(&q, i)),
                Op::Nonoverlap => positions(r.non_overlapping(&q)),
                _ => unreachable!(),
            }
        }
        Op::Wanc { leaf, t } => {
            let Index::Wanc { tree, nodes } = index else { return Err(mismatch(index, "wanc")) };
            if *leaf == 0 || *leaf > nodes.len() {
                return Err(orsti_core::Error::OutOfRange { index: *leaf, len: nodes.len() }.into());
            }
            vec![single("node", tree.weighted_ancestor(leaf - 1, *t)? + 1)]
        }
        Op::PrimaryOcc { with_secondary: all } => {
            let Index::Lz(lz) = index else { return Err(mismatch(index, "lz")) };
            let q = q()?;
            positions(if *all { with_secondary(lz, &q) } else { lz.primary_occurrences(&q) })
        }
        Op::GeoReport { rect } => {
            let Index::Geo(g) = index else { return Err(mismatch(index, "geo")) };
            let [x1, x2, y1, y2] = parse_rect(rect)?;
            g.report(x1, x2, y1, y2)?
                .into_iter()
                .map(|p| Record(vec![("x", p.x.into()), ("y", p.y.into()), ("id", (p.id + 1).into())]))
                .collect()
        }
    })
}

/// Renders records one per line, as text or JSON.
pub fn render(records: &[Record], as_json: bool) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&if as_json { r.json() } else { r.text() });
        out.push('\n');
    }
    out
}
