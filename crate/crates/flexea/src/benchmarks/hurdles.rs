//! Hurdle functions: OneMax interrupted by infeasible bands whose widths
//! alternate, so that crossing them requires holding several exact flip
//! rates at once.

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::fitness::FitnessFunction;

/// Which grid levels inside the hurdle region are feasible, as a predicate
/// on the level index `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelPattern {
    /// Indices alternately advance by 2 and 1 (feasible iff `i mod 3 != 1`),
    /// producing gaps of width `2g` and `g` in turn.
    AlternatingTwoOne,
    /// Every grid level is feasible; gaps all have width `g`.
    AlwaysFeasible,
}

impl LevelPattern {
    pub fn feasible(&self, i: usize) -> bool {
        match self {
            LevelPattern::AlternatingTwoOne => i % 3 != 1,
            LevelPattern::AlwaysFeasible => true,
        }
    }
}

/// Validated geometry for [`TwoRates`]: `s = (3/4)n - sqrt(n)`,
/// `g = log2(n)`, and `s`, `(3/4)n`, `g`, `sqrt(n)/g` must all be integers.
#[derive(Debug, Clone, Copy)]
pub struct TwoRatesParams {
    n: usize,
    s: usize,
    g: usize,
    top: usize,
}

impl TwoRatesParams {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 || !n.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "size {n} is not a power of two"
            )));
        }
        if n % 4 != 0 {
            return Err(Error::InvalidParameter(format!(
                "(3/4) * {n} is not an integer"
            )));
        }
        let sqrt = (n as f64).sqrt().round() as usize;
        if sqrt * sqrt != n {
            return Err(Error::InvalidParameter(format!(
                "sqrt({n}) is not an integer"
            )));
        }
        let g = n.trailing_zeros() as usize;
        if sqrt % g != 0 {
            return Err(Error::InvalidParameter(format!(
                "sqrt(n)/g = {sqrt}/{g} is not an integer"
            )));
        }
        let top = 3 * n / 4;
        Ok(Self {
            n,
            s: top - sqrt,
            g,
            top,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Start of the hurdle region.
    pub fn s(&self) -> usize {
        self.s
    }

    /// Grid spacing (the base gap width).
    pub fn g(&self) -> usize {
        self.g
    }

    /// First ones-count past the hurdle region.
    pub fn top(&self) -> usize {
        self.top
    }

    /// The feasible grid levels `s + i*g` with `i mod 3 != 1`, up to `top`.
    pub fn feasible_levels(&self) -> Vec<usize> {
        (0..)
            .map(|i| (i, self.s + i * self.g))
            .take_while(|&(_, level)| level <= self.top)
            .filter(|&(i, _)| LevelPattern::AlternatingTwoOne.feasible(i))
            .map(|(_, level)| level)
            .collect()
    }
}

fn hurdle_value(ones: usize, s: usize, g: usize, top: usize, pattern: LevelPattern) -> f64 {
    if ones < s || ones >= top {
        return ones as f64;
    }
    let offset = ones - s;
    if offset % g == 0 && pattern.feasible(offset / g) {
        ones as f64
    } else {
        -1.0
    }
}

/// The fixed-geometry hurdle function with gaps of width `g` and `2g`
/// alternating; optimum is the all-ones string.
#[derive(Debug, Clone)]
pub struct TwoRates {
    params: TwoRatesParams,
}

impl TwoRates {
    pub fn new(params: TwoRatesParams) -> Self {
        Self { params }
    }

    pub fn params(&self) -> &TwoRatesParams {
        &self.params
    }
}

impl FitnessFunction for TwoRates {
    fn name(&self) -> &str {
        "two-rates"
    }

    fn size(&self) -> usize {
        self.params.n
    }

    fn evaluate(&self, x: &BitString) -> f64 {
        hurdle_value(
            x.ones_count(),
            self.params.s,
            self.params.g,
            self.params.top,
            LevelPattern::AlternatingTwoOne,
        )
    }

    fn is_optimum(&self, x: &BitString) -> bool {
        x.ones_count() == self.params.n
    }
}

/// Hurdle function with configurable geometry: region start `s`, grid
/// spacing `g`, region end `top` (exclusive), and a feasibility pattern.
/// Useful for exercising the mixed-gap structure at sizes where the strict
/// [`TwoRatesParams`] arithmetic has no solutions.
#[derive(Debug, Clone)]
pub struct GeneralizedHurdles {
    n: usize,
    s: usize,
    g: usize,
    top: usize,
    pattern: LevelPattern,
}

impl GeneralizedHurdles {
    pub fn new(n: usize, s: usize, g: usize, top: usize, pattern: LevelPattern) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize);
        }
        if g == 0 || s >= top || top > n {
            return Err(Error::InvalidParameter(format!(
                "inconsistent hurdle geometry: s={s}, g={g}, top={top}, n={n}"
            )));
        }
        Ok(Self {
            n,
            s,
            g,
            top,
            pattern,
        })
    }

    pub fn region(&self) -> (usize, usize, usize) {
        (self.s, self.g, self.top)
    }
}

impl FitnessFunction for GeneralizedHurdles {
    fn name(&self) -> &str {
        "hurdles"
    }

    fn size(&self) -> usize {
        self.n
    }

    fn evaluate(&self, x: &BitString) -> f64 {
        hurdle_value(x.ones_count(), self.s, self.g, self.top, self.pattern)
    }

    fn is_optimum(&self, x: &BitString) -> bool {
        x.ones_count() == self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at_level(n: usize, ones: usize) -> BitString {
        BitString::with_leading_ones(n, ones).unwrap()
    }

    #[test]
    fn params_validation() {
        let p = TwoRatesParams::new(256).unwrap();
        assert_eq!(p.s(), 176);
        assert_eq!(p.g(), 8);
        assert_eq!(p.top(), 192);
        // 16 passes (g = 4, sqrt = 4); 64 fails (sqrt/g = 8/6).
        assert!(TwoRatesParams::new(16).is_ok());
        assert!(TwoRatesParams::new(64).is_err());
        assert!(TwoRatesParams::new(100).is_err());
    }

    #[test]
    fn two_rates_values_at_n256() {
        let f = TwoRates::new(TwoRatesParams::new(256).unwrap());
        assert_eq!(f.evaluate(&at_level(256, 100)), 100.0);
        assert_eq!(f.evaluate(&at_level(256, 184)), -1.0);
        assert_eq!(f.evaluate(&at_level(256, 192)), 192.0);
        assert_eq!(f.evaluate(&at_level(256, 176)), 176.0);
    }

    #[test]
    fn infeasible_levels_exactly_match_pattern() {
        let p = TwoRatesParams::new(256).unwrap();
        let f = TwoRates::new(p);
        for ones in 0..=256usize {
            let got = f.evaluate(&at_level(256, ones));
            let on_grid = ones >= p.s() && (ones - p.s()) % p.g() == 0;
            let feasible = ones < p.s()
                || ones >= p.top()
                || (on_grid && LevelPattern::AlternatingTwoOne.feasible((ones - p.s()) / p.g()));
            if feasible {
                assert_eq!(got, ones as f64, "ones={ones}");
            } else {
                assert_eq!(got, -1.0, "ones={ones}");
            }
        }
        // On the grid itself, -1 appears exactly at indices i mod 3 == 1.
        for (i, level) in (0..).map(|i| (i, p.s() + i * p.g())) {
            if level >= p.top() {
                break;
            }
            let got = f.evaluate(&at_level(256, level));
            if i % 3 == 1 {
                assert_eq!(got, -1.0);
            } else {
                assert_eq!(got, level as f64);
            }
        }
    }

    #[test]
    fn always_feasible_pattern_is_onemax_on_grid() {
        let f = GeneralizedHurdles::new(32, 10, 2, 20, LevelPattern::AlwaysFeasible).unwrap();
        for ones in 0..=32usize {
            let got = f.evaluate(&at_level(32, ones));
            if (10..20).contains(&ones) && (ones - 10) % 2 != 0 {
                assert_eq!(got, -1.0);
            } else {
                assert_eq!(got, ones as f64);
            }
        }
    }

    #[test]
    fn generalized_matches_two_rates_on_its_own_geometry() {
        let p = TwoRatesParams::new(256).unwrap();
        let f = TwoRates::new(p);
        let g = GeneralizedHurdles::new(
            p.n(),
            p.s(),
            p.g(),
            p.top(),
            LevelPattern::AlternatingTwoOne,
        )
        .unwrap();
        for ones in 0..=256usize {
            let x = at_level(256, ones);
            assert_eq!(f.evaluate(&x), g.evaluate(&x));
        }
    }

    #[test]
    fn desk_scale_geometry_values() {
        let f = GeneralizedHurdles::new(64, 40, 2, 48, LevelPattern::AlternatingTwoOne).unwrap();
        assert_eq!(f.evaluate(&at_level(64, 44)), 44.0); // i = 2, feasible
        assert_eq!(f.evaluate(&at_level(64, 42)), -1.0); // i = 1, hurdle
        assert_eq!(f.evaluate(&at_level(64, 41)), -1.0); // off grid
        assert_eq!(f.evaluate(&at_level(64, 48)), 48.0); // past the region
    }

    #[test]
    fn bad_geometry_rejected() {
        assert!(GeneralizedHurdles::new(16, 10, 0, 12, LevelPattern::AlwaysFeasible).is_err());
        assert!(GeneralizedHurdles::new(16, 12, 1, 10, LevelPattern::AlwaysFeasible).is_err());
        assert!(GeneralizedHurdles::new(16, 4, 1, 20, LevelPattern::AlwaysFeasible).is_err());
    }
}
