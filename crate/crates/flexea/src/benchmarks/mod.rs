//! The benchmark suite: classic pseudo-Boolean functions, the spanning-tree
//! problem, and hurdle functions with mixed gap widths.

mod hurdles;
mod mst;

pub use hurdles::{GeneralizedHurdles, LevelPattern, TwoRates, TwoRatesParams};
pub use mst::{EdgeId, MstFitness, MstSolution, WeightedGraph};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::fitness::FitnessFunction;

/// Number of ones; optimum is the all-ones string.
#[derive(Debug, Clone)]
pub struct OneMax {
    n: usize,
}

impl OneMax {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize);
        }
        Ok(Self { n })
    }
}

impl FitnessFunction for OneMax {
    fn name(&self) -> &str {
        "onemax"
    }

    fn size(&self) -> usize {
        self.n
    }

    fn evaluate(&self, x: &BitString) -> f64 {
        x.ones_count() as f64
    }

    fn is_optimum(&self, x: &BitString) -> bool {
        x.ones_count() == self.n
    }
}

/// Length of the maximal all-ones prefix; optimum is the all-ones string.
#[derive(Debug, Clone)]
pub struct LeadingOnes {
    n: usize,
}

impl LeadingOnes {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize);
        }
        Ok(Self { n })
    }
}

impl FitnessFunction for LeadingOnes {
    fn name(&self) -> &str {
        "leadingones"
    }

    fn size(&self) -> usize {
        self.n
    }

    fn evaluate(&self, x: &BitString) -> f64 {
        x.leading_ones() as f64
    }

    fn is_optimum(&self, x: &BitString) -> bool {
        x.leading_ones() == self.n
    }
}

/// OneMax with the optimum moved to the strings with exactly `n - k` ones:
/// `k + |x|_1` up to that point, `n - |x|_1` beyond it. `k = 0` is OneMax.
#[derive(Debug, Clone)]
pub struct TrimmedOneMax {
    n: usize,
    k: usize,
}

impl TrimmedOneMax {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize);
        }
        if k > n {
            return Err(Error::InvalidParameter(format!(
                "trim width {k} exceeds size {n}"
            )));
        }
        Ok(Self { n, k })
    }
}

impl FitnessFunction for TrimmedOneMax {
    fn name(&self) -> &str {
        "trimmed-onemax"
    }

    fn size(&self) -> usize {
        self.n
    }

    fn evaluate(&self, x: &BitString) -> f64 {
        let ones = x.ones_count();
        if ones <= self.n - self.k {
            (self.k + ones) as f64
        } else {
            (self.n - ones) as f64
        }
    }

    fn is_optimum(&self, x: &BitString) -> bool {
        x.ones_count() == self.n - self.k
    }
}

/// The jump function with gap width `k`: fitness `k + |x|_1` on
/// `|x|_1 in [0..n-k] u {n}` and `n - |x|_1` in the gap. The unique optimum
/// is the all-ones string; the strings with exactly `n - k` ones form the
/// plateau of local optima.
///
/// The first branch includes `|x|_1 = 0`, the convention under which the
/// all-zeros string is not a second plateau point.
#[derive(Debug, Clone)]
pub struct Jump {
    n: usize,
    k: usize,
}

impl Jump {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize);
        }
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!(
                "gap width {k} outside [1..{n}]"
            )));
        }
        Ok(Self { n, k })
    }
}

impl FitnessFunction for Jump {
    fn name(&self) -> &str {
        "jump"
    }

    fn size(&self) -> usize {
        self.n
    }

    fn evaluate(&self, x: &BitString) -> f64 {
        let ones = x.ones_count();
        if ones <= self.n - self.k || ones == self.n {
            (self.k + ones) as f64
        } else {
            (self.n - ones) as f64
        }
    }

    fn is_optimum(&self, x: &BitString) -> bool {
        x.ones_count() == self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitString;
    use crate::rng::RandomSource;

    #[test]
    fn onemax_values() {
        let f = OneMax::new(4).unwrap();
        assert_eq!(f.evaluate(&BitString::parse("0000").unwrap()), 0.0);
        assert_eq!(f.evaluate(&BitString::parse("1111").unwrap()), 4.0);
        assert_eq!(f.evaluate(&BitString::parse("1011").unwrap()), 3.0);
        assert!(f.is_optimum(&BitString::parse("1111").unwrap()));
        assert!(!f.is_optimum(&BitString::parse("1011").unwrap()));
    }

    #[test]
    fn leading_ones_values() {
        let f = LeadingOnes::new(4).unwrap();
        assert_eq!(f.evaluate(&BitString::parse("0111").unwrap()), 0.0);
        assert_eq!(f.evaluate(&BitString::parse("1111").unwrap()), 4.0);
        assert_eq!(f.evaluate(&BitString::parse("1101").unwrap()), 2.0);
    }

    #[test]
    fn trimmed_reduces_to_onemax_at_zero() {
        let f = TrimmedOneMax::new(6, 0).unwrap();
        let g = OneMax::new(6).unwrap();
        let mut rng = RandomSource::new(2);
        for _ in 0..50 {
            let x = BitString::random(6, &mut rng).unwrap();
            assert_eq!(f.evaluate(&x), g.evaluate(&x));
        }
    }

    #[test]
    fn trimmed_boundary_values() {
        let f = TrimmedOneMax::new(6, 2).unwrap();
        let x = BitString::with_leading_ones(6, 4).unwrap();
        assert_eq!(f.evaluate(&x), 6.0);
        assert!(f.is_optimum(&x));
        let y = BitString::with_leading_ones(6, 5).unwrap();
        assert_eq!(f.evaluate(&y), 1.0);
    }

    #[test]
    fn jump_values() {
        let f = Jump::new(4, 2).unwrap();
        assert_eq!(f.evaluate(&BitString::parse("1111").unwrap()), 6.0);
        let plateau = BitString::with_leading_ones(4, 2).unwrap();
        assert_eq!(f.evaluate(&plateau), 4.0);
        let gap = BitString::with_leading_ones(4, 3).unwrap();
        assert_eq!(f.evaluate(&gap), 1.0);
    }

    #[test]
    fn jump_plateau_has_binomial_many_points() {
        // All C(n, n-k) strings with n-k ones share the plateau value n.
        let n = 12;
        let k = 3;
        let f = Jump::new(n, k).unwrap();
        let mut plateau = 0usize;
        for mask in 0u32..(1 << n) {
            let x = BitString::from_bools(
                &(0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>(),
            )
            .unwrap();
            if f.evaluate(&x) == n as f64 && !f.is_optimum(&x) {
                plateau += 1;
            }
        }
        assert_eq!(plateau as f64, crate::schedule::binomial(n, n - k));
    }

    #[test]
    fn fitness_depends_only_on_ones_count() {
        let mut rng = RandomSource::new(9);
        let n = 16;
        let fns: Vec<Box<dyn FitnessFunction>> = vec![
            Box::new(OneMax::new(n).unwrap()),
            Box::new(TrimmedOneMax::new(n, 3).unwrap()),
            Box::new(Jump::new(n, 4).unwrap()),
        ];
        for _ in 0..100 {
            let a = BitString::random(n, &mut rng).unwrap();
            let mut b = a.clone();
            // Swap a 1 and a 0 if both exist: same ones-count, different string.
            if let (Some(i), Some(j)) = (
                (0..n).find(|&i| a.get(i)),
                (0..n).find(|&j| !a.get(j)),
            ) {
                b.flip(i);
                b.flip(j);
            }
            for f in &fns {
                assert_eq!(f.evaluate(&a), f.evaluate(&b));
            }
        }
    }
}
