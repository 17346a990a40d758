//! Exact-`r`-bit-flip mutation.
//!
//! The flip positions are drawn by a partial Fisher-Yates shuffle over the
//! position indices, which is exactly uniform over all `C(n, r)` subsets and
//! costs `O(r)` work per call once the index table exists. [`KBitFlipper`]
//! keeps that table (and the offspring buffer bookkeeping) alive across
//! calls; [`flip_k_bits`] is the one-shot convenience form with identical
//! RNG consumption.

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// Reusable scratch state for exact-`k`-bit-flip mutation.
#[derive(Debug, Clone)]
pub struct KBitFlipper {
    // Always the identity permutation between calls.
    indices: Vec<u32>,
    swaps: Vec<(u32, u32)>,
}

impl KBitFlipper {
    pub fn new(n: usize) -> Self {
        Self {
            indices: (0..n as u32).collect(),
            swaps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Writes a copy of `x` with exactly `r` uniformly chosen bits flipped
    /// into `out`.
    pub fn flip_into(
        &mut self,
        x: &BitString,
        r: usize,
        rng: &mut RandomSource,
        out: &mut BitString,
    ) -> Result<()> {
        let n = x.len();
        debug_assert_eq!(self.indices.len(), n);
        if r == 0 || r > n {
            return Err(Error::InvalidRate { rate: r, n });
        }
        out.copy_from(x);
        self.swaps.clear();
        for j in 0..r {
            let k = rng.int_in(j, n - 1);
            self.indices.swap(j, k);
            self.swaps.push((j as u32, k as u32));
            out.flip(self.indices[j] as usize);
        }
        // Undo the swaps so the table is the identity again.
        while let Some((j, k)) = self.swaps.pop() {
            self.indices.swap(j as usize, k as usize);
        }
        Ok(())
    }
}

/// Returns a copy of `x` with exactly `r` bits flipped, uniformly over all
/// `C(n, r)` possible subsets of positions. `x` itself is unmodified.
pub fn flip_k_bits(x: &BitString, r: usize, rng: &mut RandomSource) -> Result<BitString> {
    let mut out = x.clone();
    KBitFlipper::new(x.len()).flip_into(x, r, rng, &mut out)?;
    Ok(out)
}

/// Standard bit mutation: flips each bit independently with probability
/// `prob`. A mutation that flips no bits still produces (and costs) one
/// offspring evaluation in the algorithms that use it.
pub fn standard_bit_mutation(
    x: &BitString,
    prob: f64,
    rng: &mut RandomSource,
) -> Result<BitString> {
    if !(0.0..=1.0).contains(&prob) {
        return Err(Error::InvalidParameter(format!(
            "per-bit flip probability {prob} outside [0,1]"
        )));
    }
    let mut out = x.clone();
    for i in 0..x.len() {
        if rng.coin(prob) {
            out.flip(i);
        }
    }
    Ok(out)
}
