use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Empirical law of an integer statistic: histogram plus float moments.
///
/// `var` and `skew` are population moments of the histogram.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistSummary {
    pub trials: u64,
    pub hist: BTreeMap<i64, u64>,
    pub mean: f64,
    pub var: f64,
    pub skew: f64,
}

impl DistSummary {
    /// `counts[v]` is the number of trials with value `v`; zero counts are
    /// dropped from the histogram.
    pub fn from_counts(counts: &[u64]) -> Self {
        let hist = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, &c)| (v as i64, c))
            .collect();
        Self::from_hist(hist)
    }

    pub fn from_hist(hist: BTreeMap<i64, u64>) -> Self {
        let trials: u64 = hist.values().sum();
        let nt = trials as f64;
        let mean = hist.iter().map(|(&v, &c)| v as f64 * c as f64).sum::<f64>() / nt;
        let central = |p: i32| {
            hist.iter()
                .map(|(&v, &c)| (v as f64 - mean).powi(p) * c as f64)
                .sum::<f64>()
                / nt
        };
        let var = central(2);
        let skew = if var > 0.0 {
            central(3) / var.powf(1.5)
        } else {
            0.0
        };
        DistSummary {
            trials,
            hist,
            mean,
            var,
            skew,
        }
    }

    /// Standard deviation with the `trials - 1` denominator.
    pub fn sample_std(&self) -> f64 {
        if self.trials < 2 {
            return 0.0;
        }
        (self.var * self.trials as f64 / (self.trials - 1) as f64).sqrt()
    }

    /// Standard error of the sample mean.
    pub fn std_error(&self) -> f64 {
        self.sample_std() / (self.trials as f64).sqrt()
    }

    pub fn sorted_samples(&self) -> Vec<i64> {
        self.hist
            .iter()
            .flat_map(|(&v, &c)| std::iter::repeat_n(v, c as usize))
            .collect()
    }

    /// `(value, fraction of trials)` in increasing value order.
    pub fn frequencies(&self) -> Vec<(i64, f64)> {
        let nt = self.trials as f64;
        self.hist
            .iter()
            .map(|(&v, &c)| (v, c as f64 / nt))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("summary serialises")
    }

    /// Two columns, `value,count`, with a header row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("value,count\n");
        for (v, c) in &self.hist {
            writeln!(s, "{v},{c}").unwrap();
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_of_small_histogram() {
        let s = DistSummary::from_counts(&[0, 1, 3]);
        assert_eq!(s.trials, 4);
        assert_eq!(s.mean, 1.75);
        assert!((s.var - 0.1875).abs() < 1e-15);
        assert!(s.skew < 0.0);
        assert_eq!(s.sorted_samples(), vec![1, 2, 2, 2]);
        assert_eq!(s.hist.values().sum::<u64>(), s.trials);
    }

    #[test]
    fn serialised_forms() {
        let s = DistSummary::from_counts(&[2, 0, 2]);
        assert_eq!(
            s.to_json(),
            r#"{"trials":4,"hist":{"0":2,"2":2},"mean":1.0,"var":1.0,"skew":0.0}"#
        );
        assert_eq!(s.to_csv(), "value,count\n0,2\n2,2\n");
    }
}
