//! Suffix sorting by prefix doubling and LCP by Kasai's method.
//!
//! A suffix that runs off the end compares smaller than any extension of it,
//! i.e. an implicit terminator below every symbol.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) fn suffix_array(symbols: &[u32]) -> Vec<u32> {
    let n = symbols.len();
    if n == 0 {
        return Vec::new();
    }
    let mut alphabet = symbols.to_vec();
    alphabet.sort_unstable();
    alphabet.dedup();
    // ranks start at 1 so 0 can stand for "past the end"
    let mut rank: Vec<u32> = symbols
        .iter()
        .map(|s| alphabet.binary_search(s).unwrap() as u32 + 1)
        .collect();
    let mut sa: Vec<u32> = (0..n as u32).collect();
    sa.sort_unstable_by_key(|&i| rank[i as usize]);
    let mut max_rank = alphabet.len();
    let mut by_second = Vec::with_capacity(n);
    let mut next = vec![0u32; n];
    let mut h = 1usize;
    while max_rank < n {
        by_second.clear();
        by_second.extend((n.saturating_sub(h)..n).map(|i| i as u32));
        by_second.extend(sa.iter().filter(|&&p| p as usize >= h).map(|&p| p - h as u32));
        let mut count = vec![0usize; max_rank + 2];
        for &p in &by_second {
            count[rank[p as usize] as usize + 1] += 1;
        }
        for r in 1..count.len() {
            count[r] += count[r - 1];
        }
        for &p in &by_second {
            let slot = &mut count[rank[p as usize] as usize];
            sa[*slot] = p;
            *slot += 1;
        }
        let key = |i: u32| {
            let i = i as usize;
            (rank[i], if i + h < n { rank[i + h] } else { 0 })
        };
        next[sa[0] as usize] = 1;
        let mut r = 1;
        for k in 1..n {
            if key(sa[k]) != key(sa[k - 1]) {
                r += 1;
            }
            next[sa[k] as usize] = r;
        }
        core::mem::swap(&mut rank, &mut next);
        max_rank = r as usize;
        h *= 2;
    }
    sa
}

/// `lcp[k]` is the common-prefix length of the suffixes at ranks `k` and `k+1`.
pub(crate) fn lcp_array(symbols: &[u32], sa: &[u32]) -> Vec<u32> {
    let n = symbols.len();
    if n < 2 {
        return Vec::new();
    }
    let mut isa = vec![0u32; n];
    for (r, &p) in sa.iter().enumerate() {
        isa[p as usize] = r as u32;
    }
    let mut lcp = vec![0u32; n - 1];
    let mut h = 0usize;
    for i in 0..n {
        let r = isa[i] as usize;
        if r + 1 < n {
            let j = sa[r + 1] as usize;
            while i + h < n && j + h < n && symbols[i + h] == symbols[j + h] {
                h += 1;
            }
            lcp[r] = h as u32;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

/// Whether `sa` lists every position of `symbols` in suffix order: each
/// adjacent pair is ordered by first symbol, then by the ranks of the
/// suffixes one position further on.
pub(crate) fn is_suffix_array(symbols: &[u32], sa: &[u32]) -> bool {
    let n = symbols.len();
    if sa.len() != n {
        return false;
    }
    let mut isa = vec![u32::MAX; n];
    for (r, &p) in sa.iter().enumerate() {
        match isa.get_mut(p as usize) {
            Some(slot) if *slot == u32::MAX => *slot = r as u32,
            _ => return false,
        }
    }
    sa.windows(2).all(|w| {
        let (a, b) = (w[0] as usize, w[1] as usize);
        match symbols[a].cmp(&symbols[b]) {
            core::cmp::Ordering::Less => true,
            core::cmp::Ordering::Greater => false,
            core::cmp::Ordering::Equal => a + 1 == n || (b + 1 < n && isa[a + 1] < isa[b + 1]),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    #[test]
    fn agrees_with_sorting_all_suffixes() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..300 {
            let n = rng.gen_range(1..120);
            let sigma = rng.gen_range(1..5u32);
            let s: Vec<u32> = (0..n).map(|_| rng.gen_range(0..sigma)).collect();
            let mut expect: Vec<u32> = (0..n as u32).collect();
            expect.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
            let sa = suffix_array(&s);
            assert_eq!(sa, expect);
            let lcp = lcp_array(&s, &sa);
            for k in 0..n - 1 {
                let (a, b) = (&s[sa[k] as usize..], &s[sa[k + 1] as usize..]);
                let direct = a.iter().zip(b).take_while(|(x, y)| x == y).count();
                assert_eq!(lcp[k] as usize, direct);
            }
        }
    }
}
