//! Continuous limit laws and goodness-of-fit against them.

pub mod ks;
pub mod quad;

use std::f64::consts::PI;
use std::fmt::Write as _;

use libm::{erf, erfc};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub use ks::{ks_fit, FitData, FitReport};

const QUANTILE_TOL: f64 = 1e-12;
const QUANTILE_MAX_ITER: usize = 200;

/// A named limit law with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum LawDescriptor {
    /// Density `sqrt(2/pi) 8 x^2 exp(-2 x^2)` on `x >= 0`.
    GeneralizedGamma,
    /// Tail `exp(-z (rho + z))` on `z >= 0`.
    LinExp { rho: f64 },
    /// One-sided stable law of index 1/2 and scale `c`.
    Levy { c: f64 },
    /// Law of `1 / (1 + L)` with `L ~ Levy(c)`, on `(0, 1)`.
    ReciprocalShiftedLevy { c: f64 },
    /// Density `1 / (pi sqrt(x (1 - x)))` on `(0, 1)`.
    Arcsine,
}

impl LawDescriptor {
    pub fn validate(&self) -> Result<()> {
        match *self {
            LawDescriptor::LinExp { rho } if !(rho > 0.0 && rho.is_finite()) => {
                domain(format!("LinExp needs rho > 0, got {rho}"))
            }
            LawDescriptor::Levy { c } | LawDescriptor::ReciprocalShiftedLevy { c }
                if !(c > 0.0 && c.is_finite()) =>
            {
                domain(format!("Levy scale must be positive, got {c}"))
            }
            _ => Ok(()),
        }
    }

    /// Closed support interval; the upper end may be infinite.
    pub fn support(&self) -> (f64, f64) {
        match self {
            LawDescriptor::ReciprocalShiftedLevy { .. } | LawDescriptor::Arcsine => (0.0, 1.0),
            _ => (0.0, f64::INFINITY),
        }
    }

    /// Density, zero off the support.
    pub fn pdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if !(x > lo && x < hi) {
            return 0.0;
        }
        match *self {
            LawDescriptor::GeneralizedGamma => gg_pdf(x),
            LawDescriptor::LinExp { rho } => linexp_pdf_raw(rho, x),
            LawDescriptor::Levy { c } => levy_pdf_raw(c, x),
            LawDescriptor::ReciprocalShiftedLevy { c } => r_pdf_raw(c, x),
            LawDescriptor::Arcsine => arcsine_pdf(x),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x <= lo {
            return 0.0;
        }
        if x >= hi {
            return 1.0;
        }
        match *self {
            LawDescriptor::GeneralizedGamma => gg_cdf(x),
            LawDescriptor::LinExp { rho } => linexp_cdf_raw(rho, x),
            LawDescriptor::Levy { c } => levy_cdf_raw(c, x),
            LawDescriptor::ReciprocalShiftedLevy { c } => r_cdf_raw(c, x),
            LawDescriptor::Arcsine => arcsine_cdf(x),
        }
    }

    pub fn name(&self) -> String {
        match self {
            LawDescriptor::GeneralizedGamma => "generalized_gamma".into(),
            LawDescriptor::LinExp { rho } => format!("linexp(rho={rho})"),
            LawDescriptor::Levy { c } => format!("levy(c={c})"),
            LawDescriptor::ReciprocalShiftedLevy { c } => format!("reciprocal_shifted_levy(c={c})"),
            LawDescriptor::Arcsine => "arcsine".into(),
        }
    }
}

pub fn gg_pdf(x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    (2.0 / PI).sqrt() * 8.0 * x * x * (-2.0 * x * x).exp()
}

pub fn gg_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let v = erf(2f64.sqrt() * x) - (2.0 / PI).sqrt() * 2.0 * x * (-2.0 * x * x).exp();
    v.clamp(0.0, 1.0)
}

/// `E[G^r] = Gamma((r + 3) / 2) / (2^(r/2 - 1) sqrt(pi))`.
///
/// The gamma argument is an integer or a half-integer, so it is expanded
/// into factorials; even orders come out as exact dyadic rationals.
pub fn gg_moment(r: u32) -> f64 {
    let k = r / 2;
    if r.is_multiple_of(2) {
        // Gamma(k + 3/2) = sqrt(pi) (2k + 2)! / (4^(k+1) (k + 1)!)
        let ratio: f64 = (k + 2..=2 * k + 2).map(f64::from).product();
        ratio / 4f64.powi(k as i32 + 1) / 2f64.powi(k as i32 - 1)
    } else {
        // Gamma(k + 2) = (k + 1)!
        let fact: f64 = (1..=k + 1).map(f64::from).product();
        fact / (2f64.powf(r as f64 / 2.0 - 1.0) * PI.sqrt())
    }
}

/// `(mean, standard deviation, skewness)` of the generalized gamma law.
pub fn gg_shape_stats() -> (f64, f64, f64) {
    let (m1, m2, m3) = (gg_moment(1), gg_moment(2), gg_moment(3));
    let sd = (m2 - m1 * m1).sqrt();
    let mu3 = m3 - 3.0 * m1 * m2 + 2.0 * m1.powi(3);
    (m1, sd, mu3 / sd.powi(3))
}

pub fn linexp_cdf(rho: f64, z: f64) -> Result<f64> {
    LawDescriptor::LinExp { rho }.validate()?;
    Ok(if z <= 0.0 {
        0.0
    } else {
        linexp_cdf_raw(rho, z)
    })
}

pub fn linexp_pdf(rho: f64, z: f64) -> Result<f64> {
    LawDescriptor::LinExp { rho }.validate()?;
    Ok(if z < 0.0 { 0.0 } else { linexp_pdf_raw(rho, z) })
}

fn linexp_cdf_raw(rho: f64, z: f64) -> f64 {
    -(-z * (rho + z)).exp_m1()
}

fn linexp_pdf_raw(rho: f64, z: f64) -> f64 {
    (rho + 2.0 * z) * (-z * (rho + z)).exp()
}

pub fn levy_pdf(c: f64, x: f64) -> Result<f64> {
    LawDescriptor::Levy { c }.validate()?;
    if x.is_nan() || x <= 0.0 {
        return domain(format!("Levy density is defined for x > 0, got {x}"));
    }
    Ok(levy_pdf_raw(c, x))
}

pub fn levy_cdf(c: f64, x: f64) -> Result<f64> {
    LawDescriptor::Levy { c }.validate()?;
    Ok(if x <= 0.0 { 0.0 } else { levy_cdf_raw(c, x) })
}

fn levy_pdf_raw(c: f64, x: f64) -> f64 {
    (c / (2.0 * PI)).sqrt() * (-c / (2.0 * x)).exp() / x.powf(1.5)
}

fn levy_cdf_raw(c: f64, x: f64) -> f64 {
    erfc((c / (2.0 * x)).sqrt())
}

pub fn r_pdf(c: f64, x: f64) -> Result<f64> {
    LawDescriptor::ReciprocalShiftedLevy { c }.validate()?;
    if !(x > 0.0 && x < 1.0) {
        return domain(format!("density is defined on (0, 1), got {x}"));
    }
    Ok(r_pdf_raw(c, x))
}

pub fn r_cdf(c: f64, x: f64) -> Result<f64> {
    LawDescriptor::ReciprocalShiftedLevy { c }.validate()?;
    Ok(LawDescriptor::ReciprocalShiftedLevy { c }.cdf(x))
}

fn r_pdf_raw(c: f64, x: f64) -> f64 {
    let y = 1.0 - x;
    (c / (2.0 * PI)).sqrt() * y.powf(-1.5) * x.powf(-0.5) * (-c * x / (2.0 * y)).exp()
}

fn r_cdf_raw(c: f64, x: f64) -> f64 {
    erf((c * x / (2.0 * (1.0 - x))).sqrt())
}

/// Zero off `(0, 1)`.
pub fn arcsine_pdf(x: f64) -> f64 {
    if !(x > 0.0 && x < 1.0) {
        return 0.0;
    }
    1.0 / (PI * (x * (1.0 - x)).sqrt())
}

pub fn arcsine_cdf(x: f64) -> f64 {
    2.0 / PI * x.clamp(0.0, 1.0).sqrt().asin()
}

/// Smallest `x` with `cdf(x) >= p`, by bisection to `1e-12`.
pub fn quantile(law: &LawDescriptor, p: f64) -> Result<f64> {
    law.validate()?;
    if !(p > 0.0 && p < 1.0) {
        return domain(format!("quantile level must lie in (0, 1), got {p}"));
    }
    let (mut lo, upper) = law.support();
    let mut hi = if upper.is_finite() { upper } else { lo + 1.0 };
    let mut iter = 0;
    while law.cdf(hi) < p {
        lo = hi;
        hi *= 2.0;
        iter += 1;
        if iter > QUANTILE_MAX_ITER {
            return Err(Error::Numeric(format!("no quantile bracket for p = {p}")));
        }
    }
    for _ in 0..QUANTILE_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= QUANTILE_TOL || mid == lo || mid == hi {
            return Ok(hi);
        }
        if law.cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Numeric(format!(
        "quantile bisection did not converge for p = {p}"
    )))
}

/// `x,pdf,cdf` rows for plotting.
pub fn density_table_csv(law: &LawDescriptor, xs: &[f64]) -> Result<String> {
    law.validate()?;
    let mut s = String::from("x,pdf,cdf\n");
    for &x in xs {
        writeln!(s, "{x},{},{}", law.pdf(x), law.cdf(x)).unwrap();
    }
    Ok(s)
}
