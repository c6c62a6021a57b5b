//! Packed bit vectors backing matrix rows, item masks, and outcome storage.
//!
//! Bits are stored LSB-first in `u64` words; any unused bits in the last word
//! are kept zero so word-wise comparisons and popcounts stay exact.

use std::fmt;

#[inline]
pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

/// Mask selecting the valid bits of the final word of a `len`-bit vector.
#[inline]
pub(crate) fn tail_mask(len: usize) -> u64 {
    match len % 64 {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// Dense bit vector of fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bitset {
    len: usize,
    words: Vec<u64>,
}

impl Bitset {
    pub fn zeros(len: usize) -> Self {
        Bitset {
            len,
            words: vec![0u64; words_for(len)],
        }
    }

    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut b = Bitset::zeros(len);
        for &i in indices {
            b.set(i, true);
        }
        b
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        let mut b = Bitset { len, words };
        b.mask_tail();
        b
    }

    fn mask_tail(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.len);
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let w = &mut self.words[i / 64];
        if value {
            *w |= 1 << (i % 64);
        } else {
            *w &= !(1 << (i % 64));
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.count_ones());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    /// Hamming distance to another vector of the same length.
    pub fn distance(&self, other: &Bitset) -> usize {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset_of(&self, other: &Bitset) -> bool {
        assert_eq!(self.len, other.len);
        subset_of(&self.words, &other.words)
    }

    pub fn and(&self, other: &Bitset) -> Bitset {
        assert_eq!(self.len, other.len);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Bitset {
            len: self.len,
            words,
        }
    }
}

impl fmt::Debug for Bitset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `a ⊆ b` on equal-length word slices.
#[inline]
pub fn subset_of(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

#[inline]
pub fn and_popcount(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

#[inline]
pub fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}
