use rand::Rng;
use serde::Serialize;
use statrs::statistics::{Data, OrderStatistics, Statistics};

use crate::measures::trial_rng;

pub fn mean(xs: &[f64]) -> f64 {
    xs.mean()
}

/// Unbiased sample variance; 0 for fewer than two points.
pub fn variance(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    xs.variance()
}

pub fn covariance(xs: &[f64], ys: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    xs.covariance(ys)
}

pub fn quantile(xs: &[f64], tau: f64) -> f64 {
    Data::new(xs.to_vec()).quantile(tau)
}

pub fn median(xs: &[f64]) -> f64 {
    quantile(xs, 0.5)
}

fn central_moments(xs: &[f64]) -> (f64, f64, f64) {
    let m = xs.mean();
    let n = xs.len() as f64;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &x in xs {
        let d = x - m;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    (m2 / n, m3 / n, m4 / n)
}

/// Moment skewness g₁ = m₃/m₂^{3/2}; 0 for degenerate samples.
pub fn skewness(xs: &[f64]) -> f64 {
    let (m2, m3, _) = central_moments(xs);
    if m2 <= 0.0 {
        0.0
    } else {
        m3 / m2.powf(1.5)
    }
}

/// Moment excess kurtosis g₂ = m₄/m₂² − 3; 0 for degenerate samples.
pub fn excess_kurtosis(xs: &[f64]) -> f64 {
    let (m2, _, m4) = central_moments(xs);
    if m2 <= 0.0 {
        0.0
    } else {
        m4 / (m2 * m2) - 3.0
    }
}

/// Percentile bootstrap (2.5%, 97.5%) of a statistic of resampled indices.
pub fn bootstrap_ci<F>(len: usize, reps: usize, seed: u64, stream: u64, mut stat: F) -> [f64; 2]
where
    F: FnMut(&[usize]) -> f64,
{
    if len == 0 || reps == 0 {
        return [f64::NAN, f64::NAN];
    }
    let mut rng = trial_rng(seed, stream);
    let mut idx = vec![0usize; len];
    let mut values = Vec::with_capacity(reps);
    for _ in 0..reps {
        for slot in idx.iter_mut() {
            *slot = rng.random_range(0..len);
        }
        values.push(stat(&idx));
    }
    [quantile(&values, 0.025), quantile(&values, 0.975)]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub ci: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentStats {
    pub count: usize,
    pub mean: Estimate,
    pub variance: Estimate,
    pub skewness: Estimate,
    pub excess_kurtosis: Estimate,
}

/// Sample moments with bootstrap intervals; `stream` keys the resampling RNG.
pub fn moment_stats(xs: &[f64], reps: usize, seed: u64, stream: u64) -> MomentStats {
    let pick = |idx: &[usize]| idx.iter().map(|&i| xs[i]).collect::<Vec<f64>>();
    let est = |s: u64, f: &dyn Fn(&[f64]) -> f64| Estimate {
        value: f(xs),
        ci: bootstrap_ci(xs.len(), reps, seed, stream.wrapping_add(s), |idx| f(&pick(idx))),
    };
    MomentStats {
        count: xs.len(),
        mean: est(0, &mean),
        variance: est(1, &variance),
        skewness: est(2, &skewness),
        excess_kurtosis: est(3, &excess_kurtosis),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_of_small_samples() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(mean(&xs), 2.5);
        assert!((variance(&xs) - 5.0 / 3.0).abs() < 1e-12);
        assert!(skewness(&xs).abs() < 1e-12);
        assert!((excess_kurtosis(&xs) + 1.36).abs() < 1e-12);
        assert_eq!(skewness(&[2.0; 5]), 0.0);
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
    }

    #[test]
    fn bootstrap_is_reproducible() {
        let xs: Vec<f64> = (0..50).map(|i| (i * i % 17) as f64).collect();
        let a = moment_stats(&xs, 100, 3, 0);
        let b = moment_stats(&xs, 100, 3, 0);
        assert_eq!(a, b);
        assert!(a.mean.ci[0] <= a.mean.value && a.mean.value <= a.mean.ci[1]);
    }
}
