//! Estimators and goodness-of-fit tests used by the harness and the test suites.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// A point estimate with its standard error.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
}

impl Estimate {
    pub fn contains(&self, target: f64, sigmas: f64) -> bool {
        (self.mean - target).abs() <= sigmas * self.stderr
    }
}

/// Sample mean and standard error of the mean (n − 1 denominator).
pub fn mean_stderr(xs: &[f64]) -> Estimate {
    let n = xs.len();
    if n == 0 {
        return Estimate { mean: f64::NAN, stderr: f64::NAN };
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return Estimate { mean, stderr: 0.0 };
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    Estimate { mean, stderr: (var / n as f64).sqrt() }
}

/// Binomial proportion with stderr `sqrt(p(1-p)/n)`.
pub fn proportion(successes: usize, trials: usize) -> Estimate {
    if trials == 0 {
        return Estimate { mean: f64::NAN, stderr: f64::NAN };
    }
    let p = successes as f64 / trials as f64;
    Estimate { mean: p, stderr: (p * (1.0 - p) / trials as f64).sqrt() }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Pearson goodness-of-fit of `observed` counts against cell probabilities.
///
/// Adjacent cells are pooled until every pooled cell expects at least five
/// observations; cells with zero probability must have zero counts, otherwise
/// the p-value is 0.
pub fn chi_square_gof(observed: &[u64], probs: &[f64]) -> ChiSquareTest {
    assert_eq!(observed.len(), probs.len());
    let total: u64 = observed.iter().sum();
    let total_f = total as f64;
    let mut pooled: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(probs) {
        if p <= 0.0 {
            if o > 0 {
                return ChiSquareTest { statistic: f64::INFINITY, dof: 0, p_value: 0.0 };
            }
            continue;
        }
        acc.0 += o as f64;
        acc.1 += p * total_f;
        if acc.1 >= 5.0 {
            pooled.push(acc);
            acc = (0.0, 0.0);
        }
    }
    if acc.1 > 0.0 || acc.0 > 0.0 {
        match pooled.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => pooled.push(acc),
        }
    }
    if pooled.len() < 2 {
        return ChiSquareTest { statistic: 0.0, dof: 0, p_value: 1.0 };
    }
    let statistic: f64 = pooled.iter().map(|(o, e)| (o - e).powi(2) / e).sum();
    let dof = pooled.len() - 1;
    let dist = ChiSquared::new(dof as f64).expect("positive dof");
    ChiSquareTest { statistic, dof, p_value: 1.0 - dist.cdf(statistic) }
}

/// Two-sample chi-square homogeneity test on count histograms over the same cells.
pub fn chi_square_two_sample(a: &[u64], b: &[u64]) -> ChiSquareTest {
    let len = a.len().max(b.len());
    let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0) as f64;
    let na: f64 = a.iter().sum::<u64>() as f64;
    let nb: f64 = b.iter().sum::<u64>() as f64;
    let n = na + nb;
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    for i in 0..len {
        acc.0 += get(a, i);
        acc.1 += get(b, i);
        let pooled = acc.0 + acc.1;
        if pooled * na.min(nb) / n >= 5.0 {
            cells.push(acc);
            acc = (0.0, 0.0);
        }
    }
    if acc.0 + acc.1 > 0.0 {
        match cells.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => cells.push(acc),
        }
    }
    if cells.len() < 2 {
        return ChiSquareTest { statistic: 0.0, dof: 0, p_value: 1.0 };
    }
    let mut statistic = 0.0;
    for &(x, y) in &cells {
        let col = x + y;
        let ea = col * na / n;
        let eb = col * nb / n;
        statistic += (x - ea).powi(2) / ea + (y - eb).powi(2) / eb;
    }
    let dof = cells.len() - 1;
    let dist = ChiSquared::new(dof as f64).expect("positive dof");
    ChiSquareTest { statistic, dof, p_value: 1.0 - dist.cdf(statistic) }
}

/// Total-variation distance `½ Σ |p_i − q_i|` between two distributions.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    let len = p.len().max(q.len());
    let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
    0.5 * (0..len).map(|i| (get(p, i) - get(q, i)).abs()).sum::<f64>()
}

/// Normalise a histogram of counts into frequencies.
pub fn frequencies(counts: &[u64]) -> Vec<f64> {
    let total: u64 = counts.iter().sum();
    counts.iter().map(|&c| c as f64 / total.max(1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proportion_stderr_is_binomial() {
        let e = proportion(30, 120);
        assert_eq!(e.mean, 0.25);
        assert!((e.stderr - (0.25f64 * 0.75 / 120.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn chi_square_accepts_exact_counts_and_rejects_skew() {
        let ok = chi_square_gof(&[333, 334, 333], &[1.0 / 3.0; 3]);
        assert!(ok.p_value > 0.99);
        let bad = chi_square_gof(&[500, 300, 200], &[1.0 / 3.0; 3]);
        assert!(bad.p_value < 1e-10);
        let impossible = chi_square_gof(&[10, 1], &[1.0, 0.0]);
        assert_eq!(impossible.p_value, 0.0);
    }

    #[test]
    fn two_sample_detects_identical_histograms() {
        let t = chi_square_two_sample(&[100, 200, 300], &[100, 200, 300]);
        assert!(t.p_value > 0.999);
    }

    #[test]
    fn tv_of_disjoint_supports_is_one() {
        assert_eq!(total_variation(&[1.0, 0.0], &[0.0, 1.0]), 1.0);
        assert_eq!(total_variation(&[0.5, 0.5], &[0.5, 0.5]), 0.0);
    }

    #[test]
    fn mean_stderr_matches_hand_computation() {
        let e = mean_stderr(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(e.mean, 2.5);
        assert!((e.stderr - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
    }
}
