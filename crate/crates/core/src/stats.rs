//! Compensated summation and across-trial mean / standard error.

use std::ops::AddAssign;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum StatsError {
    #[error("need at least 2 values for a standard error, got {0}")]
    TooFewValues(usize),
    #[error("ratio denominator must be positive, got {0}")]
    NonPositiveDenominator(f64),
}

/// Neumaier's variant of Kahan summation. The error bound does not grow with
/// the number of terms, and a large term followed by many small ones (or the
/// reverse) is handled.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedAccumulator {
    sum: f64,
    compensation: f64,
}

impl CompensatedAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another accumulator into this one.
    pub fn merge(&mut self, other: &CompensatedAccumulator) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl AddAssign<f64> for CompensatedAccumulator {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl FromIterator<f64> for CompensatedAccumulator {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanSem {
    pub mean: f64,
    pub sem: f64,
    pub count: usize,
}

/// Mean and standard error of the mean, `s / sqrt(k)` with the sample
/// (k - 1) standard deviation. Values are summed in index order.
pub fn mean_sem(values: &[f64]) -> Result<MeanSem, StatsError> {
    let k = values.len();
    if k < 2 {
        return Err(StatsError::TooFewValues(k));
    }
    let mean = values
        .iter()
        .copied()
        .collect::<CompensatedAccumulator>()
        .value()
        / k as f64;
    let sq = values
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .collect::<CompensatedAccumulator>()
        .value();
    let sd = (sq / (k - 1) as f64).sqrt();
    Ok(MeanSem {
        mean,
        sem: sd / (k as f64).sqrt(),
        count: k,
    })
}

/// One trial's ratio estimate, e.g. Σ N·X / Σ X for average game length.
pub fn trial_ratio(numerator_sum: f64, denominator_sum: f64) -> Result<f64, StatsError> {
    if denominator_sum > 0.0 {
        Ok(numerator_sum / denominator_sum)
    } else {
        Err(StatsError::NonPositiveDenominator(denominator_sum))
    }
}

/// Splits probability mass into three rates whose left-to-right sum
/// `a + b + c` is exactly 1.0.
///
/// `c` is taken as the complement of `a + b`. When `a + b >= 0.5` the
/// subtraction is exact; otherwise `1 - (a + b)` lies in (0.5, 1] and its
/// rounding error is at most 2^-54, which rounds back to 1.0 on addition.
/// If rounding pushes `a + b` above 1 (true `c` is zero), `b` is replaced by
/// `1 - a` instead, by the same argument. Inputs must lie in [0, 1].
pub fn complete_rates(a: f64, b: f64) -> (f64, f64, f64) {
    let ab = a + b;
    if ab <= 1.0 {
        (a, b, 1.0 - ab)
    } else {
        (a, 1.0 - a, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mean_sem_of_one_two_three() {
        let m = mean_sem(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(m.mean, 2.0);
        assert!((m.sem - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(m.count, 3);
    }

    #[test]
    fn constant_values_have_zero_sem() {
        let m = mean_sem(&[7.25; 12]).unwrap();
        assert_eq!(m.mean, 7.25);
        assert_eq!(m.sem, 0.0);
    }

    #[test]
    fn too_few_values() {
        assert_eq!(mean_sem(&[]), Err(StatsError::TooFewValues(0)));
        assert_eq!(mean_sem(&[1.0]), Err(StatsError::TooFewValues(1)));
    }

    #[test]
    fn ten_tic_tac_toe_trials() {
        let trials = [
            255051.0, 260562.0, 252352.0, 256586.0, 250916.0, 256457.0, 257380.0, 251800.0,
            257448.0, 248988.0,
        ];
        let m = mean_sem(&trials).unwrap();
        // 2547540 / 10, summed by hand.
        assert_eq!(m.mean, 254754.0);
        // Sample sd 3600.98, sem 1138.73 (computed independently).
        assert!((m.sem - 1138.730960323816).abs() < 1e-6, "sem {}", m.sem);
    }

    #[test]
    fn ratios() {
        assert_eq!(trial_ratio(90.0, 10.0), Ok(9.0));
        assert_eq!(trial_ratio(0.0, 10.0), Ok(0.0));
        assert!(trial_ratio(1.0, 0.0).is_err());
        assert!(trial_ratio(1.0, -2.0).is_err());
    }

    #[test]
    fn ones_then_huge_values() {
        let mut acc = CompensatedAccumulator::new();
        for _ in 0..10_000_000 {
            acc.add(1.0);
        }
        for _ in 0..10_000_000 {
            acc.add(1e16);
        }
        let exact = 1e23 + 1e7;
        let got = acc.value();
        let ulp = exact * f64::EPSILON;
        assert!((got - exact).abs() <= ulp, "got {got:e}, want {exact:e}");
        // Naive summation drifts far further.
        let naive: f64 = (0..10_000_000)
            .map(|_| 1.0)
            .chain((0..10_000_000).map(|_| 1e16))
            .sum();
        assert!((naive - exact).abs() > ulp);
    }

    #[test]
    fn merge_matches_sequential() {
        let values: Vec<f64> = (1..=1000).map(|i| 1.0 / i as f64).collect();
        let whole: CompensatedAccumulator = values.iter().copied().collect();
        let mut left: CompensatedAccumulator = values[..400].iter().copied().collect();
        let right: CompensatedAccumulator = values[400..].iter().copied().collect();
        left.merge(&right);
        assert!((left.value() - whole.value()).abs() <= f64::EPSILON * whole.value());
    }

    proptest! {
        #[test]
        fn rates_sum_to_exactly_one(x in 0f64..1e12, y in 0f64..1e12, z in prop_oneof![Just(0.0), 0f64..1e12]) {
            let total = x + y + z;
            prop_assume!(total > 0.0);
            let (a, b, c) = complete_rates(x / total, y / total);
            prop_assert_eq!(a + b + c, 1.0);
            prop_assert!((0.0..=1.0).contains(&c));
            prop_assert!((c - z / total).abs() < 1e-15);
            prop_assert!((b - y / total).abs() < 1e-15);
        }

        #[test]
        fn sem_halves_with_four_copies(values in prop::collection::vec(-1e6f64..1e6, 2..40)) {
            let base = mean_sem(&values).unwrap();
            let quad: Vec<f64> = values.iter().copied().cycle().take(values.len() * 4).collect();
            let q = mean_sem(&quad).unwrap();
            // Duplication changes the k-1 denominator: the ratio is
            // sqrt(4(k-1)/(4k-1))/2, tending to one half.
            let k = values.len() as f64;
            let expect = base.sem * ((k - 1.0) * 4.0 / (4.0 * k - 1.0)).sqrt() / 2.0;
            prop_assert!((q.sem - expect).abs() <= 1e-9 * base.sem.max(1e-300));
        }

        #[test]
        fn mean_sem_is_permutation_stable(mut values in prop::collection::vec(0f64..1e9, 2..50)) {
            let a = mean_sem(&values).unwrap();
            values.reverse();
            let b = mean_sem(&values).unwrap();
            prop_assert!((a.mean - b.mean).abs() <= 1e-12 * a.mean.abs().max(1.0));
            prop_assert!((a.sem - b.sem).abs() <= 1e-9 * a.sem.max(1.0));
        }
    }
}
