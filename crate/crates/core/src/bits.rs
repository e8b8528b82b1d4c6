//! Plain bit vector with constant-time rank and logarithmic select.
//!
//! Bits sit in 64-byte blocks holding the ones count before the block, the
//! packed counts before each word inside it, and six words, so a rank
//! touches one cache line and counts bits in one word.

use alloc::vec::Vec;

const WORDS: usize = 6;
const BLOCK_BITS: usize = 64 * WORDS;

#[derive(Debug, Clone, Copy, Default)]
#[repr(C, align(64))]
struct Block {
    before: u64,
    // 9 bits per word w >= 1: ones in words[..w]
    inner: u64,
    words: [u64; WORDS],
}

impl Block {
    fn ones_before_word(&self, w: usize) -> usize {
        if w == 0 {
            0
        } else {
            (self.inner >> (9 * (w - 1)) & 0x1ff) as usize
        }
    }

    fn seal(&mut self) {
        let mut acc = 0u64;
        self.inner = 0;
        for w in 1..WORDS {
            acc += self.words[w - 1].count_ones() as u64;
            self.inner |= acc << (9 * (w - 1));
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RankBits {
    // one more block than the bits need, so rank at `len` has a block
    blocks: Vec<Block>,
    len: usize,
    ones: usize,
}

impl RankBits {
    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut blocks = alloc::vec![Block::default()];
        let mut len = 0;
        let mut ones = 0;
        for b in bits {
            if len > 0 && len % BLOCK_BITS == 0 {
                blocks.last_mut().unwrap().seal();
                blocks.push(Block { before: ones as u64, ..Block::default() });
            }
            if b {
                let r = len % BLOCK_BITS;
                blocks.last_mut().unwrap().words[r / 64] |= 1 << (r % 64);
                ones += 1;
            }
            len += 1;
        }
        blocks.last_mut().unwrap().seal();
        if len > 0 && len % BLOCK_BITS == 0 {
            blocks.push(Block { before: ones as u64, ..Block::default() });
        }
        RankBits { blocks, len, ones }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn get(&self, i: usize) -> bool {
        let r = i % BLOCK_BITS;
        self.blocks[i / BLOCK_BITS].words[r / 64] >> (r % 64) & 1 == 1
    }

    /// Ones in `[0, i)`.
    pub fn rank1(&self, i: usize) -> usize {
        let block = &self.blocks[i / BLOCK_BITS];
        let r = i % BLOCK_BITS;
        let (w, b) = (r / 64, r % 64);
        let mut acc = block.before as usize + block.ones_before_word(w);
        if b > 0 {
            acc += (block.words[w] & ((1u64 << b) - 1)).count_ones() as usize;
        }
        acc
    }

    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    /// Position of the `k`-th one (0-based `k`).
    pub fn select1(&self, k: usize) -> usize {
        debug_assert!(k < self.ones);
        // last block with fewer than k + 1 ones before it
        let b = self.blocks.partition_point(|blk| blk.before as usize <= k) - 1;
        let mut rest = k - self.blocks[b].before as usize;
        for (w, &word) in self.blocks[b].words.iter().enumerate() {
            let c = word.count_ones() as usize;
            if rest < c {
                return b * BLOCK_BITS + w * 64 + nth_one(word, rest);
            }
            rest -= c;
        }
        unreachable!("the block holds the k-th one")
    }

    /// Position of the `k`-th zero (0-based `k`).
    pub fn select0(&self, k: usize) -> usize {
        debug_assert!(k < self.len - self.ones);
        let zeros_before = |b: usize| b * BLOCK_BITS - self.blocks[b].before as usize;
        let (mut lo, mut hi) = (0, self.blocks.len());
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if zeros_before(mid) <= k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut rest = k - zeros_before(lo);
        for (w, &word) in self.blocks[lo].words.iter().enumerate() {
            let c = word.count_zeros() as usize;
            if rest < c {
                return lo * BLOCK_BITS + w * 64 + nth_one(!word, rest);
            }
            rest -= c;
        }
        unreachable!("the block holds the k-th zero")
    }
}

fn nth_one(mut word: u64, n: usize) -> usize {
    for _ in 0..n {
        word &= word - 1;
    }
    word.trailing_zeros() as usize
}
