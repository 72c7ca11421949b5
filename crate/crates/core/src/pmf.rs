//! Exact probability mass functions over a contiguous integer range.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Result};
use crate::poly::RationalPoly;

/// Law of an integer random variable: `P(X = offset + i) = probs[i]`.
///
/// Leading and trailing zero masses are stripped on construction, so
/// `offset` is the minimum of the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pmf {
    offset: i64,
    probs: Vec<BigRational>,
}

impl Pmf {
    /// Checked constructor: masses must be nonnegative and sum to exactly one.
    pub fn new(offset: i64, probs: Vec<BigRational>) -> Result<Self> {
        if probs.iter().any(Signed::is_negative) {
            return domain("negative probability mass");
        }
        let total: BigRational = probs.iter().sum();
        if !total.is_one() {
            return domain(format!("probability masses sum to {total}, not 1"));
        }
        Ok(Self::trimmed(offset, probs))
    }

    fn trimmed(mut offset: i64, mut probs: Vec<BigRational>) -> Self {
        while probs.last().is_some_and(Zero::is_zero) {
            probs.pop();
        }
        let lead = probs.iter().take_while(|p| p.is_zero()).count();
        probs.drain(..lead);
        offset += lead as i64;
        Pmf { offset, probs }
    }

    pub fn point(value: i64) -> Self {
        Pmf {
            offset: value,
            probs: vec![BigRational::one()],
        }
    }

    /// Normalises nonnegative integer weights, `weights[i]` sitting at
    /// `offset + i`.
    pub fn from_weights(offset: i64, weights: &[BigUint]) -> Result<Self> {
        let total: BigUint = weights.iter().sum();
        if total.is_zero() {
            return domain("all weights are zero");
        }
        let total = BigInt::from(total);
        let probs = weights
            .iter()
            .map(|w| BigRational::new(BigInt::from(w.clone()), total.clone()))
            .collect();
        Ok(Self::trimmed(offset, probs))
    }

    /// Reads a counting polynomial `sum_k c_k q^k` as the law
    /// `P(X = k) = c_k / sum_j c_j`.
    pub fn from_poly(p: &RationalPoly) -> Result<Self> {
        let total = p.eval_at_one();
        if total.is_zero() {
            return domain("polynomial sums to zero");
        }
        Self::new(0, p.coeffs().iter().map(|c| c / &total).collect())
    }

    /// Mixture `sum_i w_i * law_i`; weights must sum to one.
    pub fn mixture<'a, I>(parts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigRational, &'a Pmf)>,
    {
        let parts: Vec<_> = parts.into_iter().filter(|(w, _)| !w.is_zero()).collect();
        let Some(lo) = parts.iter().map(|(_, p)| p.offset).min() else {
            return domain("empty mixture");
        };
        let hi = parts.iter().map(|(_, p)| p.max_value()).max().unwrap_or(lo);
        let mut probs = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (w, p) in &parts {
            for (v, pr) in p.iter() {
                probs[(v - lo) as usize] += w * pr;
            }
        }
        Self::new(lo, probs)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    pub fn min_value(&self) -> i64 {
        self.offset
    }

    pub fn max_value(&self) -> i64 {
        self.offset + self.probs.len() as i64 - 1
    }

    pub fn prob(&self, value: i64) -> BigRational {
        usize::try_from(value - self.offset)
            .ok()
            .and_then(|i| self.probs.get(i).cloned())
            .unwrap_or_else(BigRational::zero)
    }

    /// `(value, probability)` pairs over the support range, zeros included.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, p)| (self.offset + i as i64, p))
    }

    pub fn shift(&self, by: i64) -> Self {
        Pmf {
            offset: self.offset + by,
            probs: self.probs.clone(),
        }
    }

    pub fn total(&self) -> BigRational {
        self.probs.iter().sum()
    }

    /// `E[X^r]`
    pub fn raw_moment(&self, r: u32) -> BigRational {
        self.iter()
            .map(|(v, p)| p * BigRational::from_integer(BigInt::from(v).pow(r)))
            .sum()
    }

    /// `E[X (X-1) ... (X-r+1)]`
    pub fn factorial_moment(&self, r: u32) -> BigRational {
        self.iter()
            .map(|(v, p)| {
                let ff: BigInt = (0..r as i64).map(|i| BigInt::from(v - i)).product();
                p * BigRational::from_integer(ff)
            })
            .sum()
    }

    pub fn mean(&self) -> BigRational {
        self.raw_moment(1)
    }

    pub fn variance(&self) -> BigRational {
        let m = self.mean();
        self.raw_moment(2) - &m * &m
    }

    pub fn mean_f64(&self) -> f64 {
        self.mean().to_f64().unwrap_or(f64::NAN)
    }

    pub fn variance_f64(&self) -> f64 {
        self.variance().to_f64().unwrap_or(f64::NAN)
    }

    /// `(value, P(X <= value))` for every value in the support range,
    /// accumulated exactly and rounded once.
    pub fn cdf_points(&self) -> Vec<(i64, f64)> {
        let mut acc = BigRational::zero();
        self.iter()
            .map(|(v, p)| {
                acc += p;
                (v, acc.to_f64().unwrap_or(f64::NAN))
            })
            .collect()
    }
}

/// `"num/den"`, also for integers.
pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub(crate) fn parse_ratio(s: &str) -> Option<BigRational> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

#[derive(Serialize, Deserialize)]
struct PmfRepr {
    offset: i64,
    probs: Vec<String>,
}

impl Serialize for Pmf {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PmfRepr {
            offset: self.offset,
            probs: self.probs.iter().map(ratio_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Pmf {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PmfRepr::deserialize(d)?;
        let probs = repr
            .probs
            .iter()
            .map(|s| parse_ratio(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Pmf::new(repr.offset, probs).map_err(D::Error::custom)
    }
}
