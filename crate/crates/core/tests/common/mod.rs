//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;

/// Random text over the first `sigma` lowercase letters.
pub fn random_text(rng: &mut StdRng, n: usize, sigma: u8) -> Vec<u8> {
    (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect()
}

/// Random text of length `1..=max_n` with a random alphabet of 1 to 4 letters.
pub fn random_small(rng: &mut StdRng, max_n: usize) -> Vec<u8> {
    let n = rng.gen_range(1..=max_n);
    let sigma = rng.gen_range(1..=4);
    random_text(rng, n, sigma)
}

/// 1-based suffix array by sorting every suffix.
pub fn naive_sa(t: &[u8]) -> Vec<usize> {
    let mut sa: Vec<usize> = (0..t.len()).collect();
    sa.sort_by(|&a, &b| t[a..].cmp(&t[b..]));
    sa.into_iter().map(|p| p + 1).collect()
}

pub fn lcp(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// 1-based start positions of `q` in `t`; the empty pattern occurs at 1..=n.
pub fn occurrences(t: &[u8], q: &[u8]) -> Vec<usize> {
    if q.len() > t.len() {
        return Vec::new();
    }
    (0..=t.len() - q.len())
        .filter(|&p| &t[p..p + q.len()] == q)
        .map(|p| p + 1)
        .filter(|&p| p <= t.len())
        .collect()
}

pub fn hamming_positions(t: &[u8], q: &[u8], keep: impl Fn(usize) -> bool) -> Vec<usize> {
    if q.is_empty() || q.len() > t.len() {
        return Vec::new();
    }
    (0..=t.len() - q.len())
        .filter(|&p| keep(t[p..p + q.len()].iter().zip(q).filter(|(a, b)| a != b).count()))
        .map(|p| p + 1)
        .collect()
}

/// Greedy LZ77 by scanning every earlier source; ties go to the nearest.
/// Returns `(F, L, C)` triples, `C` absent when the copy reaches the end.
pub fn greedy_lz<T: Copy + Eq>(s: &[T], from: usize) -> Vec<(usize, usize, Option<T>)> {
    let n = s.len();
    let mut out = Vec::new();
    let mut k = from;
    while k < n {
        let (mut best, mut src) = (0, 0);
        for t in 0..k {
            let l = (0..n - k).take_while(|&h| s[t + h] == s[k + h]).count();
            if l > 0 && l >= best {
                best = l;
                src = t;
            }
        }
        let f = if best == 0 { 0 } else { k - src };
        let c = s.get(k + best).copied();
        out.push((f, best, c));
        k += best + 1;
    }
    out
}

/// 1-based phrase starts of a parse given as `(F, L, C)` triples.
pub fn phrase_starts<T>(phrases: &[(usize, usize, Option<T>)]) -> Vec<usize> {
    let mut u = 1;
    phrases
        .iter()
        .map(|p| {
            let s = u;
            u += p.1 + usize::from(p.2.is_some());
            s
        })
        .collect()
}
