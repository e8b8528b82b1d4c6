#![allow(dead_code)]

use orsti::query::{run, Op, PatternArgs};
use orsti::{Index, Kind};
use rand::rngs::StdRng;
use rand::Rng;

pub const KINDS: [Kind; 9] = [
    Kind::Sa,
    Kind::Docs,
    Kind::OneError,
    Kind::Lz,
    Kind::Scq,
    Kind::Restricted,
    Kind::Topk,
    Kind::Wanc,
    Kind::Geo,
];

pub fn random_bytes(rng: &mut StdRng, n: usize, sigma: u8) -> Vec<u8> {
    (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect()
}

/// Raw inputs suitable for building `kind`.
pub fn random_inputs(rng: &mut StdRng, kind: Kind, n: usize) -> Vec<Vec<u8>> {
    match kind {
        Kind::Docs | Kind::Topk => (0..rng.gen_range(1..6))
            .map(|_| {
                let m = rng.gen_range(1..n / 3 + 2);
                random_bytes(rng, m, 3)
            })
            .collect(),
        Kind::Wanc => {
            let mut lines = String::from("0 0\n");
            for v in 2..=n {
                lines.push_str(&format!("{} {}\n", rng.gen_range(1..v), rng.gen_range(1..5)));
            }
            vec![lines.into_bytes()]
        }
        Kind::Geo => {
            let pts = rng.gen_range(1..n / 2 + 2);
            let lines: String = (0..pts).map(|_| format!("{} {}\n", rng.gen_range(1..=pts), rng.gen_range(1..=pts))).collect();
            vec![lines.into_bytes()]
        }
        _ => vec![random_bytes(rng, n, 3)],
    }
}

fn span(rng: &mut StdRng, n: usize) -> (usize, usize) {
    let i = rng.gen_range(1..=n);
    (i, rng.gen_range(i..=n))
}

/// A random query that fits `index`, with its pattern flags.
pub fn random_query(rng: &mut StdRng, index: &Index) -> (Op, PatternArgs) {
    let pat = |rng: &mut StdRng| {
        let m = rng.gen_range(0..5);
        String::from_utf8(random_bytes(rng, m, 3)).unwrap()
    };
    let mut args = PatternArgs { pattern: Some(pat(rng)), ..Default::default() };
    let n = index.text_index().map_or(0, |s| s.text_len());
    let op = match index {
        Index::Sa { .. } => match rng.gen_range(0..3) {
            0 => Op::SaRange,
            1 => Op::Occ,
            _ => {
                let (i, j) = span(rng, n);
                Op::Locus { i, j }
            }
        },
        Index::Docs(_) => Op::Docs,
        Index::Topk(_) => Op::Topk { k: rng.gen_range(1..5) },
        Index::OneError(_) => match rng.gen_range(0..3) {
            0 => Op::OneError,
            1 => Op::AtMostOne,
            _ => {
                args.pattern = Some(format!("{}a", pat(rng)));
                args.pattern2 = Some(format!("b{}", pat(rng)));
                Op::Gap { d: rng.gen_range(0..4) }
            }
        },
        Index::Lz(_) => Op::PrimaryOcc { with_secondary: rng.gen() },
        Index::Scq { .. } => {
            if rng.gen() {
                let (i, j) = span(rng, n);
                Op::Scq { i, j }
            } else {
                let (l, r) = span(rng, n);
                Op::Ilcp { k: rng.gen_range(1..=n), l, r }
            }
        }
        Index::Restricted { .. } => match rng.gen_range(0..6) {
            0 => {
                let (i, j) = span(rng, n);
                Op::PriReport { i, j }
            }
            1 => {
                let (i, j) = span(rng, n);
                Op::PriCount { i, j }
            }
            2 => Op::Rank { k: rng.gen_range(0..=n) },
            3 => Op::Select { k: rng.gen_range(1..5) },
            4 => Op::Successive { i: rng.gen_range(1..=n) },
            _ => Op::Nonoverlap,
        },
        Index::Wanc { nodes, .. } => Op::Wanc { leaf: rng.gen_range(1..=nodes.len()), t: rng.gen_range(1..12) },
        Index::Geo(g) => {
            let m = g.points().len();
            let (x1, x2) = span(rng, m);
            let (y1, y2) = span(rng, m);
            Op::GeoReport { rect: format!("{x1},{x2},{y1},{y2}") }
        }
    };
    (op, args)
}

/// Query output, or the error text, for comparisons.
pub fn answer(index: &Index, op: &Op, args: &PatternArgs) -> Result<Vec<String>, String> {
    run(index, op, args).map(|rs| rs.iter().map(|r| r.text()).collect()).map_err(|e| e.to_string())
}

/// Number of differing answers over `queries` random queries before and
/// after a save/load cycle.
pub fn round_trip_diffs(rng: &mut StdRng, kind: Kind, n: usize, queries: usize) -> usize {
    let inputs = random_inputs(rng, kind, n);
    let built = Index::build(kind, &inputs, None).unwrap();
    let loaded = Index::load(&built.save()).unwrap();
    assert_eq!(loaded.kind(), kind);
    (0..queries)
        .filter(|_| {
            let (op, args) = random_query(rng, &built);
            answer(&built, &op, &args) != answer(&loaded, &op, &args)
        })
        .count()
}
