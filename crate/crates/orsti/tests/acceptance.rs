//! Acceptance suite. Prints one PASS or FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::hint::black_box;
use std::time::{Duration, Instant};

use orsti_core::approx::{GapIndex, OneErrorIndex};
use orsti_core::doc_retrieval::{list_documents, RelevanceMeasure, TopKIndex};
use orsti_core::geo::{node_range_decompose, GeoTextIndex};
use orsti_core::grid::{Dir, Point, RankGrid2, RankGrid3, WeightedGrid};
use orsti_core::lz::{lz_decompress, lz_parse, Lz77Index, LzParse, ScqIndex};
use orsti_core::restricted::RestrictedIndex;
use orsti_core::rmq::Rmq;
use orsti_core::weighted_anc::{LocusIndex, WeightedTree};
use orsti_core::{DocumentIndex, SaRange, SuffixIndex, Text};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Suite = (&'static str, fn(&mut StdRng) -> Outcome);
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Brute-force references.
mod oracle {
    use rand::rngs::StdRng;
    use rand::Rng;

    pub fn text(rng: &mut StdRng, n: usize, sigma: u8) -> Vec<u8> {
        (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect()
    }

    /// Length in `1..=max_n`, alphabet of 1 to 4 letters.
    pub fn small(rng: &mut StdRng, max_n: usize) -> Vec<u8> {
        let n = rng.gen_range(1..=max_n);
        let sigma = rng.gen_range(1..=4);
        text(rng, n, sigma)
    }

    pub fn suffix_array(t: &[u8]) -> Vec<usize> {
        let mut sa: Vec<usize> = (0..t.len()).collect();
        sa.sort_by(|&a, &b| t[a..].cmp(&t[b..]));
        sa.into_iter().map(|p| p + 1).collect()
    }

    pub fn lcp(a: &[u8], b: &[u8]) -> usize {
        a.iter().zip(b).take_while(|(x, y)| x == y).count()
    }

    pub fn occurrences(t: &[u8], q: &[u8]) -> Vec<usize> {
        if q.len() > t.len() {
            return Vec::new();
        }
        (0..=t.len() - q.len()).filter(|&p| &t[p..p + q.len()] == q).map(|p| p + 1).filter(|&p| p <= t.len()).collect()
    }

    pub fn hamming(t: &[u8], q: &[u8], keep: impl Fn(usize) -> bool) -> Vec<usize> {
        if q.is_empty() || q.len() > t.len() {
            return Vec::new();
        }
        (0..=t.len() - q.len())
            .filter(|&p| keep(t[p..p + q.len()].iter().zip(q).filter(|(a, b)| a != b).count()))
            .map(|p| p + 1)
            .collect()
    }

    /// Greedy LZ77 over every earlier source, ties to the nearest.
    pub fn lz(s: &[u8]) -> Vec<(usize, usize, Option<u8>)> {
        let n = s.len();
        let mut out = Vec::new();
        let mut k = 0;
        while k < n {
            let (mut best, mut src) = (0, 0);
            for t in 0..k {
                let l = (0..n - k).take_while(|&h| s[t + h] == s[k + h]).count();
                if l > 0 && l >= best {
                    best = l;
                    src = t;
                }
            }
            out.push((if best == 0 { 0 } else { k - src }, best, s.get(k + best).copied()));
            k += best + 1;
        }
        out
    }

    /// Ends of the phrases of a parse, 1-based.
    pub fn phrase_ends(parse: &[(usize, usize, Option<u8>)]) -> Vec<usize> {
        let mut end = 0;
        parse
            .iter()
            .map(|p| {
                end += p.1 + usize::from(p.2.is_some());
                end
            })
            .collect()
    }
}

fn triples(p: &LzParse) -> Vec<(usize, usize, Option<u8>)> {
    p.phrases().iter().map(|ph| (ph.f, ph.l, ph.c)).collect()
}

fn orsti(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_orsti")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

// 1. anchor examples

fn anchors() -> Outcome {
    let miss = SuffixIndex::build(b"mississippi").unwrap();
    ensure!(miss.suffix_array() == [11, 8, 5, 2, 1, 10, 9, 7, 4, 6, 3], "SA(mississippi) = {:?}", miss.suffix_array());
    ensure!(miss.sa_range(b"si") == SaRange::new(8, 9), "sa_range(si) = {:?}", miss.sa_range(b"si"));

    let s = ScqIndex::build(b"abaabaabaaba").unwrap();
    ensure!(s.suffix_index().isa(8) == Some(10), "isa[8] = {:?}", s.suffix_index().isa(8));
    let xy = |p: Option<Point>| p.map(|p| (p.x, p.y));
    let below = xy(s.pos_grid().successor_y(4, 7, 9, Dir::Below).unwrap());
    ensure!(below == Some((4, 7)), "successor below 9 = {below:?}");
    let above = xy(s.pos_grid().successor_y(4, 7, 11, Dir::Above).unwrap());
    ensure!(above == Some((5, 11)), "successor above 11 = {above:?}");
    let (t, len) = s.ilcp(8, 4, 7).unwrap();
    ensure!(t == 5, "ilcp(8, 4, 7) = ({t}, {len})");

    let dir = tempfile::TempDir::new().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let file = |name: &str, bytes: &[u8]| {
        std::fs::write(path(name), bytes).unwrap();
        path(name)
    };
    let m = file("miss.txt", b"mississippi");
    orsti(&["build", "--kind", "sa", "--input", &m, "--out", &path("miss.idx")])?;
    let got = orsti(&["query", "sa-range", "--pattern", "si", "--index", &path("miss.idx")])?;
    ensure!(got == "8 9\n", "cli sa-range = {got:?}");
    let got = orsti(&["query", "occ", "--pattern", "", "--index", &path("miss.idx")])?;
    let all: String = (1..=11).map(|p| format!("{p}\n")).collect();
    ensure!(got == all, "cli occ of the empty pattern = {got:?}");
    let docs = [file("d1", b"abab"), file("d2", b"ab"), file("d3", b"b")];
    orsti(&["build", "--kind", "topk", "--input", &docs[0], &docs[1], &docs[2], "--out", &path("tk.idx")])?;
    let got = orsti(&["query", "topk", "--k", "2", "--pattern", "ab", "--index", &path("tk.idx")])?;
    ensure!(got == "1 2\n2 1\n", "cli topk = {got:?}");
    let a = file("s.txt", b"abaabaabaaba");
    orsti(&["build", "--kind", "scq", "--input", &a, "--out", &path("s.idx")])?;
    let got = orsti(&["query", "ilcp", "--k", "8", "--l", "4", "--r", "7", "--index", &path("s.idx")])?;
    ensure!(got == "5 5\n", "cli ilcp = {got:?}");
    Ok("SA, sa_range, isa, range successors, ilcp and the cli examples".into())
}

// 2. oracle equivalence

fn suite_suffix_arrays(rng: &mut StdRng) -> Outcome {
    for _ in 0..500 {
        let n = rng.gen_range(1..=200);
        let sigma = rng.gen_range(1..=4);
        let t = oracle::text(rng, n, sigma);
        let idx = SuffixIndex::build(&t).unwrap();
        let sa = oracle::suffix_array(&t);
        ensure!(idx.suffix_array() == sa, "suffix array of {t:?}");
        for h in 1..n {
            ensure!(idx.lcp(h) == oracle::lcp(&t[sa[h - 1] - 1..], &t[sa[h] - 1..]), "lcp {h} of {t:?}");
        }
        for _ in 0..10 {
            let m = rng.gen_range(0..4);
            let q = oracle::text(rng, m, sigma);
            ensure!(idx.occurrences(&q) == oracle::occurrences(&t, &q), "occurrences of {q:?} in {t:?}");
        }
    }
    Ok("500 texts".into())
}

fn span(rng: &mut StdRng, max: usize) -> (usize, usize) {
    let a = rng.gen_range(0..=max + 1);
    let b = rng.gen_range(0..=max + 1);
    (a.min(b), a.max(b))
}

fn suite_grids(rng: &mut StdRng) -> Outcome {
    let mut plane = 0;
    while plane < 100_000 {
        let n = rng.gen_range(1..=60);
        let u = rng.gen_range(1..=20);
        let pts: Vec<(usize, usize)> = (0..n).map(|_| (rng.gen_range(0..=u), rng.gen_range(0..=u))).collect();
        let g = RankGrid2::new(&pts).unwrap();
        let mut all: Vec<Point> = pts.iter().enumerate().map(|(id, &(x, y))| Point { x, y, id }).collect();
        all.sort_by_key(|p| (p.x, p.y, p.id));
        for _ in 0..100 {
            let (x1, x2) = span(rng, u);
            let (y1, y2) = span(rng, u);
            let inside: Vec<Point> = all.iter().filter(|p| (x1..=x2).contains(&p.x) && (y1..=y2).contains(&p.y)).copied().collect();
            ensure!(g.report(x1, x2, y1, y2).unwrap() == inside, "report {pts:?}");
            ensure!(g.count(x1, x2, y1, y2).unwrap() == inside.len(), "count {pts:?}");
            let column: Vec<Point> = all.iter().filter(|p| (x1..=x2).contains(&p.x)).copied().collect();
            let bound = rng.gen_range(0..=u + 1);
            let below = column.iter().filter(|p| p.y <= bound).min_by_key(|p| (std::cmp::Reverse(p.y), p.x, p.id)).copied();
            let above = column.iter().filter(|p| p.y >= bound).min_by_key(|p| (p.y, p.x, p.id)).copied();
            ensure!(g.successor_y(x1, x2, bound, Dir::Below).unwrap() == below, "successor below {pts:?}");
            ensure!(g.successor_y(x1, x2, bound, Dir::Above).unwrap() == above, "successor above {pts:?}");
            let mut by_y = column.clone();
            by_y.sort_by_key(|p| (p.y, p.x, p.id));
            let k = rng.gen_range(1..=by_y.len() + 1);
            ensure!(g.kth_smallest_y(x1, x2, k).unwrap() == by_y.get(k - 1).copied(), "kth {pts:?}");
            plane += 5;
        }
    }
    let mut cube = 0;
    while cube < 100_000 {
        let n = rng.gen_range(1..=50);
        let u = rng.gen_range(1..=15);
        let pts: Vec<(usize, usize, usize)> = (0..n).map(|_| (rng.gen_range(0..=u), rng.gen_range(0..=u), rng.gen_range(0..=u))).collect();
        let g = RankGrid3::new(&pts).unwrap();
        for _ in 0..200 {
            let (x1, x2) = span(rng, u);
            let (y1, y2) = span(rng, u);
            let (z1, z2) = span(rng, u);
            let mut expect: Vec<usize> = (0..n)
                .filter(|&i| (x1..=x2).contains(&pts[i].0) && (y1..=y2).contains(&pts[i].1) && (z1..=z2).contains(&pts[i].2))
                .collect();
            expect.sort_by_key(|&i| (pts[i], i));
            let got: Vec<usize> = g.report(x1, x2, y1, y2, z1, z2).unwrap().iter().map(|p| p.id).collect();
            ensure!(got == expect, "cube report {pts:?}");
            cube += 1;
        }
    }
    let mut weighted = 0;
    while weighted < 100_000 {
        let n = rng.gen_range(1..=60);
        let mut xs: Vec<usize> = (1..=3 * n).collect();
        xs.shuffle(rng);
        let pts: Vec<(usize, usize, i64)> = xs[..n].iter().map(|&x| (x, rng.gen_range(0..=n), rng.gen_range(-5..=20))).collect();
        let g = WeightedGrid::new(&pts).unwrap();
        for _ in 0..200 {
            let (x1, x2) = span(rng, 3 * n);
            let ymax = rng.gen_range(0..=n + 1);
            let k = rng.gen_range(0..8);
            let mut inside: Vec<(i64, usize)> =
                pts.iter().filter(|p| (x1..=x2).contains(&p.0) && p.1 <= ymax).map(|p| (p.2, p.0)).collect();
            inside.sort_by_key(|&(w, x)| (std::cmp::Reverse(w), x));
            inside.truncate(k);
            let got: Vec<(i64, usize)> = g.topk_3sided(x1, x2, ymax, k).unwrap().iter().map(|p| (p.weight, p.x)).collect();
            ensure!(got == inside, "weighted top-k {pts:?}");
            weighted += 1;
        }
    }
    let mut rmq = 0;
    while rmq < 100_000 {
        let n = rng.gen_range(1..=150);
        let vals: Vec<i64> = (0..n).map(|_| rng.gen_range(-10..10)).collect();
        let r = Rmq::new(vals.clone()).unwrap();
        for _ in 0..100 {
            let i = rng.gen_range(1..=n);
            let j = rng.gen_range(i..=n);
            let min = *vals[i - 1..j].iter().min().unwrap();
            ensure!(r.rmq(i, j).unwrap() == (i..=j).find(|&h| vals[h - 1] == min).unwrap(), "rmq {vals:?}");
            let bound = rng.gen_range(-11..11);
            let expect: Vec<usize> = (i..=j).filter(|&h| vals[h - 1] < bound).collect();
            ensure!(r.bounded_report(i, j, bound).unwrap() == expect, "bounded report {vals:?}");
            rmq += 2;
        }
    }
    Ok(format!("{plane} plane, {cube} cube, {weighted} weighted, {rmq} rmq queries"))
}

fn suite_hamming(rng: &mut StdRng) -> Outcome {
    let mut with_exact = 0;
    let mut queries = 0;
    for _ in 0..300 {
        let t = oracle::small(rng, 60);
        let idx = OneErrorIndex::build(&t).unwrap();
        for _ in 0..20 {
            let m = rng.gen_range(1..=t.len().min(7));
            let start = rng.gen_range(0..=t.len() - m);
            let mut q = t[start..start + m].to_vec();
            match rng.gen_range(0..3) {
                0 => {}
                1 => q[rng.gen_range(0..m)] = b'a' + rng.gen_range(0..5),
                _ => q = oracle::text(rng, m, 5),
            }
            if !oracle::occurrences(&t, &q).is_empty() {
                with_exact += 1;
            }
            let at_most = idx.query_at_most_one(&q);
            ensure!(at_most == oracle::hamming(&t, &q, |d| d <= 1), "at most one error, {q:?} in {t:?}");
            ensure!(at_most.windows(2).all(|w| w[0] < w[1]), "duplicate report, {q:?} in {t:?}");
            ensure!(idx.query_one_mismatch(&q) == oracle::hamming(&t, &q, |d| d == 1), "one mismatch, {q:?} in {t:?}");
            queries += 1;
        }
    }
    ensure!(with_exact > 1000, "only {with_exact} probes had exact occurrences");
    for _ in 0..200 {
        let t = oracle::small(rng, 50);
        let d = rng.gen_range(0..5);
        let g = GapIndex::build(&t, d).unwrap();
        for _ in 0..20 {
            let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let (q1, q2) = (oracle::text(rng, a, 3), oracle::text(rng, b, 3));
            let expect: Vec<usize> = (1..=t.len())
                .filter(|&p| {
                    let end = p - 1 + a + d + b;
                    end <= t.len() && t[p - 1..p - 1 + a] == q1[..] && t[p - 1 + a + d..end] == q2[..]
                })
                .collect();
            ensure!(g.query(&q1, &q2).unwrap() == expect, "gap {d}, {q1:?} {q2:?} in {t:?}");
        }
    }
    Ok(format!("{queries} probes, {with_exact} with exact occurrences"))
}

fn suite_scq(rng: &mut StdRng) -> Outcome {
    let mut pairs = 0;
    for _ in 0..50 {
        let t = oracle::small(rng, 80);
        let idx = ScqIndex::build(&t).unwrap();
        for i in 1..=t.len() {
            for j in i..=t.len() {
                ensure!(triples(&idx.scq(i, j).unwrap()) == oracle::lz(&t[i - 1..j]), "scq({i}, {j}) of {t:?}");
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ranges over 50 strings"))
}

fn suite_primary(rng: &mut StdRng) -> Outcome {
    let mut patterns = 0;
    for _ in 0..60 {
        let t = oracle::small(rng, 40);
        let idx = Lz77Index::build(&t).unwrap();
        let ends = oracle::phrase_ends(&oracle::lz(&t));
        for i in 0..t.len() {
            for j in i + 1..=t.len() {
                let q = &t[i..j];
                let expect: Vec<usize> = oracle::occurrences(&t, q)
                    .into_iter()
                    .filter(|&p| ends.iter().any(|&e| p <= e && e < p + q.len()))
                    .collect();
                ensure!(idx.primary_occurrences(q) == expect, "primary occurrences of {q:?} in {t:?}");
                patterns += 1;
            }
        }
    }
    Ok(format!("{patterns} substrings"))
}

fn collection(rng: &mut StdRng) -> Vec<Vec<u8>> {
    let k = rng.gen_range(1..=8);
    let sigma = rng.gen_range(1..=3);
    (0..k)
        .map(|_| {
            let n = rng.gen_range(1..=15);
            oracle::text(rng, n, sigma)
        })
        .collect()
}

fn suite_documents(rng: &mut StdRng) -> Outcome {
    let mut queries = 0;
    for case in 0..300 {
        let docs = collection(rng);
        let ranks: Vec<i64> = (0..docs.len()).map(|_| rng.gen_range(-3..10)).collect();
        let measure = if case % 2 == 0 { RelevanceMeasure::TermFrequency } else { RelevanceMeasure::DocRank(ranks.clone()) };
        let tk = TopKIndex::build(&docs, measure.clone()).unwrap();
        for _ in 0..30 {
            let d = &docs[rng.gen_range(0..docs.len())];
            let i = rng.gen_range(0..d.len());
            let q = if rng.gen_bool(0.2) { oracle::text(rng, 2, 4) } else { d[i..rng.gen_range(i + 1..=d.len())].to_vec() };
            let tf: Vec<usize> = docs.iter().map(|d| oracle::occurrences(d, &q).len()).collect();
            let listed: Vec<usize> = (1..=docs.len()).filter(|&d| tf[d - 1] > 0).collect();
            ensure!(list_documents(tk.document_index(), &q) == listed, "listing {q:?} in {docs:?}");
            let k = rng.gen_range(0..=docs.len() + 1);
            let mut expect: Vec<(usize, i64)> = listed
                .iter()
                .map(|&d| match &measure {
                    RelevanceMeasure::TermFrequency => (d, tf[d - 1] as i64),
                    RelevanceMeasure::DocRank(r) => (d, r[d - 1]),
                })
                .collect();
            expect.sort_by_key(|&(d, w)| (std::cmp::Reverse(w), d));
            expect.truncate(k);
            ensure!(tk.topk(&q, k) == expect, "top-{k} of {q:?} in {docs:?}");
            queries += 1;
        }
    }
    Ok(format!("{queries} listing and top-k queries"))
}

fn random_tree(rng: &mut StdRng, size: usize, max_w: u64) -> Vec<(Option<usize>, u64)> {
    let mut ids: Vec<usize> = (0..size).collect();
    ids.shuffle(rng);
    let mut nodes = vec![(None, 0); size];
    for i in 1..size {
        let p = if rng.gen_bool(0.5) { i - 1 } else { rng.gen_range(0..i) };
        nodes[ids[i]] = (Some(ids[p]), rng.gen_range(1..=max_w));
    }
    nodes
}

fn walk_up(t: &WeightedTree, mut v: usize, th: u64) -> usize {
    while let Some(p) = t.parent(v) {
        if t.weight(p) < th {
            break;
        }
        v = p;
    }
    v
}

fn suite_weighted_ancestors(rng: &mut StdRng) -> Outcome {
    let mut queries = 0;
    for _ in 0..200 {
        let size = rng.gen_range(1..=200);
        let t = WeightedTree::new(&random_tree(rng, size, 5)).unwrap();
        for &u in t.leaves() {
            for th in 1..=t.weight(u) {
                ensure!(t.weighted_ancestor(u, th).unwrap() == walk_up(&t, u, th), "leaf {u} threshold {th}");
                queries += 1;
            }
        }
    }
    for _ in 0..60 {
        let t = oracle::small(rng, 40);
        let idx = LocusIndex::build(&t).unwrap();
        for i in 1..=t.len() {
            for j in i..=t.len() {
                ensure!(idx.locus(i, j).unwrap() == idx.suffix_index().sa_range(&t[i - 1..j]), "locus({i}, {j}) of {t:?}");
                queries += 1;
            }
        }
    }
    Ok(format!("{queries} (leaf, t) and locus queries"))
}

fn geo_points(rng: &mut StdRng, n: usize) -> Vec<(usize, usize)> {
    if rng.gen_bool(0.5) {
        let mut ys: Vec<usize> = (1..=n).collect();
        ys.shuffle(rng);
        ys.into_iter().enumerate().map(|(i, y)| (i + 1, y)).collect()
    } else {
        (0..n).map(|_| (rng.gen_range(1..=n), rng.gen_range(1..=n))).collect()
    }
}

fn suite_geo(rng: &mut StdRng) -> Outcome {
    let mut worst = 0.0f64;
    let mut queries = 0;
    for _ in 0..40 {
        let n = rng.gen_range(1..=128);
        let pts = geo_points(rng, n);
        let g = GeoTextIndex::new(&pts).unwrap();
        let grid = RankGrid2::new(&pts).unwrap();
        let w = g.width();
        for _ in 0..500 {
            let x1 = rng.gen_range(1..=n);
            let x2 = rng.gen_range(x1..=n);
            let y1 = rng.gen_range(1..=n);
            let y2 = rng.gen_range(y1..=n);
            let (got, count) = g.report_counted(x1, x2, y1, y2).unwrap();
            ensure!(got == grid.report(x1, x2, y1, y2).unwrap(), "geo report {pts:?}");
            ensure!(count <= 4 * w * w, "{count} pattern queries for width {w}");
            worst = worst.max(count as f64 / (4 * w * w) as f64);
            queries += 1;
        }
    }
    Ok(format!("{queries} rectangles, counter at most {:.0}% of the bound", worst * 100.0))
}

fn suite_restricted(rng: &mut StdRng) -> Outcome {
    let mut queries = 0;
    for _ in 0..300 {
        let t = oracle::small(rng, 60);
        let n = t.len();
        let idx = RestrictedIndex::build(&t).unwrap();
        for _ in 0..20 {
            let m = rng.gen_range(1..=4);
            let q = oracle::text(rng, m, 3);
            let occ = oracle::occurrences(&t, &q);
            let i = rng.gen_range(1..=n);
            let j = rng.gen_range(i..=n);
            let inside: Vec<usize> = occ.iter().copied().filter(|&p| p >= i && p + m - 1 <= j).collect();
            ensure!(idx.pri_report(&q, i, j).unwrap() == inside, "pri_report {q:?} {i} {j} in {t:?}");
            ensure!(idx.pri_count(&q, i, j).unwrap() == inside.len(), "pri_count in {t:?}");
            let k = rng.gen_range(0..=n + 1);
            ensure!(idx.substring_rank(&q, k) == occ.iter().filter(|&&p| p <= k).count(), "rank in {t:?}");
            let s = rng.gen_range(1..=occ.len() + 1);
            ensure!(idx.substring_select(&q, s) == occ.get(s - 1).copied(), "select in {t:?}");
            ensure!(idx.successive(&q, k) == occ.iter().copied().find(|&p| p >= k), "successive in {t:?}");
            let mut greedy: Vec<usize> = Vec::new();
            for &p in &occ {
                if greedy.last().is_none_or(|&l| p >= l + m) {
                    greedy.push(p);
                }
            }
            ensure!(idx.non_overlapping(&q) == greedy, "non-overlapping in {t:?}");
            queries += 1;
        }
    }
    Ok(format!("{queries} probes"))
}

fn timed_suites(rng: &mut StdRng, suites: &[Suite]) -> Outcome {
    let mut notes = Vec::new();
    for (name, suite) in suites {
        let start = Instant::now();
        let detail = suite(rng).map_err(|e| format!("{name}: {e}"))?;
        let took = start.elapsed();
        ensure!(took < Duration::from_secs(60), "{name} took {took:.1?}");
        notes.push(format!("{name} {detail} in {took:.1?}"));
    }
    Ok(notes.join("; "))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xACCE55);
    timed_suites(
        &mut rng,
        &[
            ("suffix arrays", suite_suffix_arrays),
            ("grids", suite_grids),
            ("hamming", suite_hamming),
            ("scq", suite_scq),
            ("primary occurrences", suite_primary),
            ("documents", suite_documents),
            ("weighted ancestors", suite_weighted_ancestors),
            ("geo", suite_geo),
            ("restricted", suite_restricted),
        ],
    )
}

// 3. structural invariants

fn lcp_minimum_identity(rng: &mut StdRng) -> Outcome {
    let mut pairs = 0;
    for _ in 0..30 {
        let t = oracle::small(rng, 100);
        let idx = SuffixIndex::build(&t).unwrap();
        let n = t.len();
        for a in 1..=n {
            let mut run = usize::MAX;
            for b in a + 1..=n {
                run = run.min(idx.lcp(b - 1));
                ensure!(run == oracle::lcp(&t[idx.sa(a) - 1..], &t[idx.sa(b) - 1..]), "ranks {a}, {b} of {t:?}");
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} rank pairs"))
}

fn distinct_count_identity(rng: &mut StdRng) -> Outcome {
    let mut pairs = 0;
    while pairs < 10_000 {
        let docs = collection(rng);
        let idx = DocumentIndex::build(&docs).unwrap();
        let (da, psi) = (idx.da(), idx.psi());
        let n = da.len();
        for _ in 0..50 {
            let l = rng.gen_range(1..=n);
            let r = rng.gen_range(l..=n);
            let distinct: BTreeSet<u32> = da[l - 1..r].iter().copied().collect();
            let firsts = (l..=r).filter(|&i| psi[i - 1] < l as i64).count();
            ensure!(firsts == distinct.len(), "range [{l}, {r}] of {docs:?}");
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (range, collection) pairs"))
}

fn first_occurrence_is_primary(rng: &mut StdRng) -> Outcome {
    let mut substrings = 0;
    for _ in 0..20 {
        let t = oracle::small(rng, 60);
        let idx = Lz77Index::build(&t).unwrap();
        for i in 0..t.len() {
            for j in i + 1..=t.len() {
                let q = &t[i..j];
                ensure!(
                    idx.primary_occurrences(q).first() == oracle::occurrences(&t, q).first(),
                    "first occurrence of {q:?} in {t:?}"
                );
                substrings += 1;
            }
        }
    }
    Ok(format!("{substrings} substrings of 20 texts"))
}

fn one_slot_per_document(rng: &mut StdRng) -> Outcome {
    let mut nodes = 0;
    for _ in 0..150 {
        let docs = collection(rng);
        let tk = TopKIndex::build(&docs, RelevanceMeasure::TermFrequency).unwrap();
        let da = tk.document_index().da();
        let tree = tk.tree();
        for v in 0..tree.len() {
            let node = tree.node(v);
            let present: BTreeSet<usize> = (node.range.lo..=node.range.hi).map(|r| da[r - 1] as usize).collect();
            let (l, r) = tk.node_bounds(v);
            for d in 1..=docs.len() {
                let count = tk.slots()[l - 1..r].iter().filter(|s| s.doc == d && s.parent_depth < node.depth as i64).count();
                ensure!(count == usize::from(present.contains(&d)), "node {v} doc {d} of {docs:?}");
            }
            nodes += 1;
        }
    }
    Ok(format!("{nodes} nodes"))
}

fn decomposition_size(rng: &mut StdRng) -> Outcome {
    let mut ranges = 0;
    for _ in 0..60 {
        let n = rng.gen_range(1..=200);
        let g = GeoTextIndex::new(&geo_points(rng, n)).unwrap();
        for trie in [g.xtrie(), g.ytrie()] {
            let values = trie.values();
            for _ in 0..100 {
                let q = rng.gen_range(1..=n);
                let r = rng.gen_range(q..=n);
                let parts = node_range_decompose(trie, q, r).unwrap();
                ensure!(parts.len() <= 2 * trie.width(), "{} parts for width {}", parts.len(), trie.width());
                let mut covered: Vec<usize> = parts.iter().flat_map(|&v| values[trie.node(v).lo..trie.node(v).hi].to_vec()).collect();
                covered.sort_unstable();
                let expect: Vec<usize> = values.iter().copied().filter(|v| (q..=r).contains(v)).collect();
                ensure!(covered == expect, "decomposition of [{q}, {r}] does not cover exactly");
                ranges += 1;
            }
        }
    }
    Ok(format!("{ranges} ranges"))
}

fn structural_invariants() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x57);
    timed_suites(
        &mut rng,
        &[
            ("LCP minimum", lcp_minimum_identity),
            ("distinct-count identity", distinct_count_identity),
            ("first occurrence primary", first_occurrence_is_primary),
            ("one slot per document", one_slot_per_document),
            ("decomposition size", decomposition_size),
        ],
    )
}

// 4. round-trips

fn round_trips() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x4071);
    for _ in 0..1000 {
        let t = oracle::small(&mut rng, 500);
        let text = Text::new(t.clone()).unwrap();
        let parse = lz_parse(&text);
        ensure!(lz_decompress(&parse).unwrap() == text, "lz round trip of {t:?}");
        if t.len() <= 150 {
            ensure!(triples(&parse) == oracle::lz(&t), "greedy parse of {t:?}");
        }
    }
    let mut diffs = 0;
    for kind in common::KINDS {
        for n in [1, 5, 30, 120] {
            diffs += common::round_trip_diffs(&mut rng, kind, n, 100);
        }
    }
    ensure!(diffs == 0, "{diffs} answers changed across save and load");
    Ok(format!("1000 lz strings; {} kinds x 4 sizes x 100 queries, 0 diffs", common::KINDS.len()))
}

// 5. performance smoke

fn megabyte_text(rng: &mut StdRng) -> Vec<u8> {
    let n = 1 << 20;
    let mut t: Vec<u8> = Vec::with_capacity(n);
    while t.len() < n {
        if t.len() > 1000 && rng.gen_bool(0.7) {
            // a mutated copy of an earlier stretch
            let len = rng.gen_range(20..400);
            let s = rng.gen_range(0..t.len() - len);
            for k in 0..len {
                let b = if rng.gen_bool(0.02) { b'a' + rng.gen_range(0..4) } else { t[s + k] };
                t.push(b);
            }
        } else {
            for _ in 0..rng.gen_range(1..50) {
                t.push(b'a' + rng.gen_range(0..4));
            }
        }
    }
    t.truncate(n);
    t
}

fn performance() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x9E7F);
    let t = megabyte_text(&mut rng);
    let n = t.len();
    let text = Text::new(t.clone()).unwrap();
    let docs: Vec<Text> = t.chunks(1024).map(|c| Text::new(c.to_vec()).unwrap()).collect();
    let points: Vec<(usize, usize)> = (0..1 << 15).map(|_| (rng.gen_range(1..=1 << 15), rng.gen_range(1..=1 << 15))).collect();

    let start = Instant::now();
    let sa = SuffixIndex::new(&text);
    let listing = DocumentIndex::new(docs.clone()).unwrap();
    let topk = TopKIndex::new(DocumentIndex::new(docs).unwrap(), RelevanceMeasure::TermFrequency).unwrap();
    let one = OneErrorIndex::new(text.clone());
    let lz = Lz77Index::new(text.clone());
    let scq = ScqIndex::new(&text);
    let restricted = RestrictedIndex::new(&text);
    let locus = LocusIndex::new(&text);
    let geo = GeoTextIndex::new(&points).unwrap();
    let gap = GapIndex::from_indexes(one.forward().clone(), one.reverse().clone(), 3).unwrap();
    let build = start.elapsed();
    ensure!(build < Duration::from_secs(30), "building every index took {build:.1?}");

    // typical queries: patterns of 4 to 16 symbols, spans up to 2^14
    let pattern = |rng: &mut StdRng| {
        let m = rng.gen_range(4..=16);
        if rng.gen_bool(0.8) {
            let p = rng.gen_range(0..n - m);
            t[p..p + m].to_vec()
        } else {
            oracle::text(rng, m, 4)
        }
    };
    let window = |rng: &mut StdRng| {
        let i = rng.gen_range(1..=n);
        (i, (i + rng.gen_range(0..1 << 14)).min(n))
    };
    let mut worst = (Duration::ZERO, "");
    let mut total = 0;
    let mut time = |name: &'static str, f: &mut dyn FnMut()| {
        let s = Instant::now();
        f();
        let took = s.elapsed();
        if took > worst.0 {
            worst = (took, name);
        }
        total += 1;
    };
    for _ in 0..50 {
        let q = pattern(&mut rng);
        let q2 = pattern(&mut rng);
        let (i, j) = window(&mut rng);
        let k = rng.gen_range(1..=n);
        time("sa-range", &mut || { black_box(sa.sa_range(&q)); });
        time("occ", &mut || { black_box(sa.occurrences(&q)); });
        time("docs", &mut || { black_box(list_documents(&listing, &q)); });
        time("topk", &mut || { black_box(topk.topk(&q, 10)); });
        time("one-error", &mut || { black_box(one.query_one_mismatch(&q)); });
        time("at-most-one", &mut || { black_box(one.query_at_most_one(&q)); });
        time("primary-occ", &mut || { black_box(lz.primary_occurrences(&q)); });
        time("scq", &mut || { black_box(scq.scq(i, j).unwrap()); });
        time("ilcp", &mut || { black_box(scq.ilcp(k, i, j).unwrap()); });
        time("pri-report", &mut || { black_box(restricted.pri_report(&q, i, j).unwrap()); });
        time("pri-count", &mut || { black_box(restricted.pri_count(&q, i, j).unwrap()); });
        time("rank", &mut || { black_box(restricted.substring_rank(&q, k)); });
        time("select", &mut || { black_box(restricted.substring_select(&q, 3)); });
        time("successive", &mut || { black_box(restricted.successive(&q, k)); });
        time("nonoverlap", &mut || { black_box(restricted.non_overlapping(&q)); });
        time("locus", &mut || { black_box(locus.locus(i, j).unwrap()); });
        let (x1, x2) = window(&mut rng);
        let (y1, y2) = window(&mut rng);
        time("geo-report", &mut || { black_box(geo.report(x1.min(1 << 15), x2.min(1 << 15), y1.min(1 << 15), y2.min(1 << 15)).unwrap()); });
        time("gap", &mut || { black_box(gap.query(&q[..4], &q2[..4]).unwrap()); });
    }
    ensure!(worst.0 < Duration::from_millis(100), "{} took {:.1?}", worst.1, worst.0);

    // output-heavy extremes, reported but not gated
    let stress = |f: &mut dyn FnMut()| {
        let s = Instant::now();
        f();
        s.elapsed()
    };
    let full_scq = stress(&mut || { black_box(scq.scq(1, n).unwrap()); });
    let wide_hamming = stress(&mut || { black_box(one.query_at_most_one(b"ab")); });
    let dense_nonoverlap = stress(&mut || { black_box(restricted.non_overlapping(b"a")); });
    Ok(format!(
        "build {build:.1?}; {total} typical queries, slowest {} {:.1?}; extremes: whole-text scq {full_scq:.0?}, at-most-one \"ab\" {wide_hamming:.0?}, nonoverlap \"a\" {dense_nonoverlap:.0?}",
        worst.1, worst.0
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 5] = [
        ("1 anchor examples", anchors),
        ("2 oracle equivalence", oracle_equivalence),
        ("3 structural invariants", structural_invariants),
        ("4 round-trips", round_trips),
        ("5 performance smoke", performance),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
