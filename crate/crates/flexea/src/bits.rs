//! Fixed-length binary search points.
//!
//! A [`BitString`] is stored as packed 64-bit words so that counting ones
//! (the dominant cost of most fitness evaluations here) is a handful of
//! popcounts. The length is fixed at construction and never changes.

use crate::error::{Error, Result};
use crate::rng::RandomSource;

const WORD_BITS: usize = 64;

/// A fixed-length bitstring over `{0,1}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    len: usize,
    words: Vec<u64>,
}

impl BitString {
    /// All-zeros string of length `n`.
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize);
        }
        Ok(Self {
            len: n,
            words: vec![0; n.div_ceil(WORD_BITS)],
        })
    }

    /// All-ones string of length `n`.
    pub fn ones(n: usize) -> Result<Self> {
        let mut s = Self::zeros(n)?;
        for w in &mut s.words {
            *w = u64::MAX;
        }
        s.mask_tail();
        Ok(s)
    }

    /// String with exactly `k` ones in the first `k` positions.
    pub fn with_leading_ones(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidArgument(format!(
                "ones count {k} exceeds length {n}"
            )));
        }
        let mut s = Self::zeros(n)?;
        for i in 0..k {
            s.set(i, true);
        }
        Ok(s)
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = Self::zeros(text.len())?;
        for (i, ch) in text.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => s.set(i, true),
                other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
            }
        }
        Ok(s)
    }

    pub fn from_bools(bits: &[bool]) -> Result<Self> {
        let mut s = Self::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            s.set(i, b);
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // length is always >= 1
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Number of ones.
    #[inline]
    pub fn ones_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of zeros.
    #[inline]
    pub fn zeros_count(&self) -> usize {
        self.len - self.ones_count()
    }

    /// Length of the maximal all-ones prefix.
    pub fn leading_ones(&self) -> usize {
        let mut total = 0;
        for (j, &w) in self.words.iter().enumerate() {
            let remaining = self.len - j * WORD_BITS;
            let in_word = remaining.min(WORD_BITS);
            let ones = (w.trailing_ones() as usize).min(in_word);
            total += ones;
            if ones < in_word {
                break;
            }
        }
        total
    }

    /// Overwrites this string with the contents of `other` (equal lengths).
    pub fn copy_from(&mut self, other: &BitString) {
        debug_assert_eq!(self.len, other.len);
        self.words.copy_from_slice(&other.words);
    }

    fn mask_tail(&mut self) {
        let tail = self.len % WORD_BITS;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    /// Uniform random bitstring: every member of `{0,1}^n` has probability
    /// `2^-n`.
    pub fn random(n: usize, rng: &mut RandomSource) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize);
        }
        let mut s = Self::zeros(n)?;
        for w in &mut s.words {
            *w = rng.next_word();
        }
        s.mask_tail();
        Ok(s)
    }
}

impl std::fmt::Display for BitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Uniform random bitstring of length `n`.
pub fn random_bitstring(n: usize, rng: &mut RandomSource) -> Result<BitString> {
    BitString::random(n, rng)
}

/// Number of positions where `x` and `y` differ.
pub fn hamming_distance(x: &BitString, y: &BitString) -> Result<usize> {
    if x.len != y.len {
        return Err(Error::InvalidArgument(format!(
            "length mismatch: {} vs {}",
            x.len, y.len
        )));
    }
    Ok(x.words
        .iter()
        .zip(&y.words)
        .map(|(a, b)| (a ^ b).count_ones() as usize)
        .sum())
}
