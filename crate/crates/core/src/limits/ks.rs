//! Kolmogorov–Smirnov distance between a discrete law and a continuous one.

use serde::{Deserialize, Serialize};

use super::LawDescriptor;
use crate::error::{domain, Result};
use crate::pmf::Pmf;
use crate::sim::DistSummary;

/// What is being compared with the limit law.
#[derive(Clone, Copy, Debug)]
pub enum FitData<'a> {
    Exact(&'a Pmf),
    Simulated(&'a DistSummary),
    Samples(&'a [f64]),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub ks_stat: f64,
    /// Sample count, or number of support points for exact laws.
    pub sample_or_support_size: u64,
    pub law: LawDescriptor,
}

/// `sup_x |F_data(x) - F_law(x)|` after rescaling data values to
/// `(v - a) / b`.
///
/// The law's cdf is continuous, so the supremum is attained just before or at
/// a jump of the step function: at each atom both the left and right limits
/// are compared.
pub fn ks_fit(data: FitData<'_>, a: f64, b: f64, law: &LawDescriptor) -> Result<FitReport> {
    law.validate()?;
    if !(b > 0.0 && b.is_finite() && a.is_finite()) {
        return domain(format!(
            "rescale needs finite a and b > 0, got a = {a}, b = {b}"
        ));
    }
    // (rescaled atom, cumulative mass through it)
    let (steps, size): (Vec<(f64, f64)>, u64) = match data {
        FitData::Exact(pmf) => {
            let pts = pmf.cdf_points();
            let support = pmf
                .iter()
                .filter(|(_, p)| !num_traits::Zero::is_zero(*p))
                .count();
            (
                pts.into_iter()
                    .map(|(v, c)| ((v as f64 - a) / b, c))
                    .collect(),
                support as u64,
            )
        }
        FitData::Simulated(s) => {
            let nt = s.trials as f64;
            let mut acc = 0u64;
            let steps = s
                .hist
                .iter()
                .map(|(&v, &c)| {
                    acc += c;
                    ((v as f64 - a) / b, acc as f64 / nt)
                })
                .collect();
            (steps, s.trials)
        }
        FitData::Samples(xs) => {
            if xs.iter().any(|x| x.is_nan()) {
                return domain("samples contain NaN");
            }
            let mut sorted = xs.to_vec();
            sorted.sort_by(|p, q| p.total_cmp(q));
            let nt = sorted.len() as f64;
            let mut steps: Vec<(f64, f64)> = Vec::new();
            for (i, &x) in sorted.iter().enumerate() {
                let (y, c) = ((x - a) / b, (i + 1) as f64 / nt);
                match steps.last_mut() {
                    Some(last) if last.0 == y => last.1 = c,
                    _ => steps.push((y, c)),
                }
            }
            (steps, xs.len() as u64)
        }
    };
    if steps.is_empty() {
        return domain("no data to compare");
    }
    let mut d: f64 = 0.0;
    let mut below = 0.0;
    for &(x, c) in &steps {
        let f = law.cdf(x);
        d = d.max((c - f).abs()).max((below - f).abs());
        below = c;
    }
    Ok(FitReport {
        ks_stat: d,
        sample_or_support_size: size,
        law: *law,
    })
}
