//! Truncated power series in `z` with polynomial coefficients in `q`, and
//! the closed-form generating functions of the guessing game.
//!
//! The closed forms are expanded to a fixed order and compared coefficient
//! by coefficient with the polynomials built by the recurrences in
//! [`crate::exact`].

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exact::ExactEngine;
use crate::poly::RationalPoly;

pub const DEFAULT_SERIES_CAP: usize = 64;

/// `sum_{n <= order} c_n(q) z^n`; higher powers are discarded by every
/// operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<RationalPoly>,
}

impl TruncatedSeries {
    /// Pads with zeros or truncates to `order + 1` coefficients.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<RationalPoly>) -> Self {
        coeffs.resize(order + 1, RationalPoly::zero());
        TruncatedSeries { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(order, Vec::new())
    }

    pub fn constant(order: usize, c: RationalPoly) -> Self {
        Self::from_coeffs(order, vec![c])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, RationalPoly::one())
    }

    /// `c(q) z^k`.
    pub fn monomial(order: usize, c: RationalPoly, k: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[RationalPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &RationalPoly {
        &self.coeffs[n]
    }

    pub fn scale(&self, c: &RationalPoly) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn check_orders(&self, other: &Self) {
        assert_eq!(self.order, other.order, "series orders differ");
    }

    /// `1 / self`; the constant term must be a nonzero constant in `q`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.degree() != Some(0) {
            return Err(Error::Numeric(format!(
                "series inverse needs a nonzero constant z^0 coefficient, got {c0}"
            )));
        }
        let inv0 = c0.coeff(0).recip();
        let mut out: Vec<RationalPoly> = Vec::with_capacity(self.order + 1);
        out.push(RationalPoly::constant(inv0.clone()));
        for n in 1..=self.order {
            let mut acc = RationalPoly::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() && !out[n - i].is_zero() {
                    acc = &acc + &(&self.coeffs[i] * &out[n - i]);
                }
            }
            out.push((-&acc).scale(&inv0));
        }
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: out,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// `self(inner(z))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_orders(inner);
        if !inner.coeffs[0].is_zero() {
            return domain("inner series of a composition must vanish at z = 0");
        }
        // Horner from the top coefficient
        let mut acc = Self::zero(self.order);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(self.order, c.clone());
        }
        Ok(acc)
    }

    /// `(n, power of q)` of the first coefficient that differs.
    pub fn first_mismatch(&self, other: &Self) -> Option<(usize, usize)> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .find_map(|(n, (a, b))| a.first_difference(b).map(|k| (n, k)))
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_orders(rhs);
        TruncatedSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_orders(rhs);
        TruncatedSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_orders(rhs);
        let mut out = vec![RationalPoly::zero(); self.order + 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs[..=self.order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        TruncatedSeries {
            order: self.order,
            coeffs: out,
        }
    }
}

/// `B(t) = (1 - sqrt(1 - 4t)) / 2 = sum_{k >= 1} Cat_{k-1} t^k`, the root of
/// `B = t + B^2` vanishing at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalanSeries {
    coeffs: Vec<BigInt>,
}

impl CatalanSeries {
    /// Coefficients of `t^0..=t^n`.
    pub fn new(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        if n >= 1 {
            coeffs[1] = BigInt::one();
        }
        // Cat_k = Cat_{k-1} * 2(2k-1) / (k+1)
        for k in 2..=n {
            let m = (k - 1) as u64;
            coeffs[k] = &coeffs[k - 1] * (2 * (2 * m - 1)) / (m + 1);
        }
        CatalanSeries { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `B(q^a z^b)` as a series in `z` to `order`.
    pub fn at_monomial(
        &self,
        order: usize,
        q_power: usize,
        z_power: usize,
    ) -> Result<TruncatedSeries> {
        if z_power == 0 {
            return domain("substituted monomial must contain z");
        }
        let needed = order / z_power;
        if needed >= self.coeffs.len() {
            return domain(format!(
                "Catalan series of length {} is too short for order {order}",
                self.coeffs.len()
            ));
        }
        let mut s = TruncatedSeries::zero(order);
        for k in 1..=needed {
            let c = BigRational::from_integer(self.coeffs[k].clone());
            s.coeffs[k * z_power] = RationalPoly::monomial(c, k * q_power);
        }
        Ok(s)
    }
}

/// `B(t)` to order `n` as a series in `t` with constant coefficients.
pub fn series_b(n: usize) -> TruncatedSeries {
    CatalanSeries::new(n)
        .at_monomial(n, 0, 1)
        .expect("order fits the series")
}

/// Ingredients shared by the closed forms.
struct Pieces {
    z: TruncatedSeries,
    one: TruncatedSeries,
    /// `1 / (1 - qz)`
    geo_q: TruncatedSeries,
    f_tilde: TruncatedSeries,
    f_tilde_diag: TruncatedSeries,
}

fn poly(cs: &[i64]) -> RationalPoly {
    RationalPoly::from_i64s(cs)
}

fn pieces(order: usize) -> Result<Pieces> {
    let one = TruncatedSeries::one(order);
    let z = TruncatedSeries::monomial(order, RationalPoly::one(), 1);
    let q_plus_1 = poly(&[1, 1]);
    let b = CatalanSeries::new(order / 2 + 1).at_monomial(order, 1, 2)?;

    let geo_q = (&one - &z.scale(&RationalPoly::q())).inverse()?;
    // 1 - (1+q) z
    let lin = &one - &z.scale(&q_plus_1);
    let one_minus_b = &one - &b;
    let one_minus_qb = &one - &b.scale(&q_plus_1);

    let f_tilde_diag = one_minus_qb.inverse()?;
    // q z^2 (q - (1+q) z)
    let tie_num = &TruncatedSeries::monomial(order, poly(&[0, 0, 1]), 2)
        - &TruncatedSeries::monomial(order, poly(&[0, 1, 1]), 3);
    let tie_den = &(&lin * &one_minus_b) * &one_minus_qb;
    let f_tilde = &(&one - &z).div(&lin)? + &tie_num.div(&tie_den)?;
    Ok(Pieces {
        z,
        one,
        geo_q,
        f_tilde,
        f_tilde_diag,
    })
}

/// `sum_n (sum_{a+b=n} F_{a,b}(q)) z^n` from the closed form
/// `2 F~(z, z) - F~_0(z)`.
pub fn closed_form_f_diagonal(order: usize) -> Result<TruncatedSeries> {
    let p = pieces(order)?;
    Ok(&p.f_tilde.scale(&poly(&[2])) - &p.f_tilde_diag)
}

/// `sum_n D_n(q) z^n` from the closed form, written out in full.
pub fn closed_form_d(order: usize) -> Result<TruncatedSeries> {
    let p = pieces(order)?;
    let bracket = &p.f_tilde.scale(&poly(&[2])) - &p.f_tilde_diag;
    Ok(d_from_f(&p, &bracket))
}

/// `D = (1 - z) / (1 - qz)^2 + z F / (1 - qz)`, with `F` the diagonal series
/// supplied by the caller.
pub fn d_from_f_diagonal(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    let p = pieces(f.order())?;
    Ok(d_from_f(&p, f))
}

fn d_from_f(p: &Pieces, f: &TruncatedSeries) -> TruncatedSeries {
    let lead = &(&(&p.one - &p.z) * &p.geo_q) * &p.geo_q;
    &lead + &(&(&p.z * &p.geo_q) * f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientCheck {
    pub n: usize,
    pub equal: bool,
    /// Lowest power of `q` at which the two coefficients differ.
    pub first_mismatch_power: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GfReport {
    pub order: usize,
    pub all_equal: bool,
    /// `D_n` from the closed form vs the recurrence.
    pub d_checks: Vec<CoefficientCheck>,
    /// Diagonal sums of `F` from the closed form vs the recurrence.
    pub f_diagonal_checks: Vec<CoefficientCheck>,
    /// `D` rebuilt from the recurrence's `F` diagonal vs the recurrence's `D`.
    pub relation_checks: Vec<CoefficientCheck>,
}

fn compare(lhs: &TruncatedSeries, rhs: &[RationalPoly]) -> Vec<CoefficientCheck> {
    lhs.coeffs()
        .iter()
        .zip(rhs)
        .enumerate()
        .map(|(n, (a, b))| {
            let first = a.first_difference(b);
            CoefficientCheck {
                n,
                equal: first.is_none(),
                first_mismatch_power: first,
            }
        })
        .collect()
}

/// Expands the closed forms to `order` and checks them against the
/// recurrence polynomials, coefficient by coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GfVerifier {
    series_cap: usize,
}

impl Default for GfVerifier {
    fn default() -> Self {
        Self::new(DEFAULT_SERIES_CAP)
    }
}

impl GfVerifier {
    pub fn new(series_cap: usize) -> Self {
        GfVerifier { series_cap }
    }

    pub fn verify(&self, engine: &ExactEngine, order: usize) -> Result<GfReport> {
        if order > self.series_cap {
            return Err(Error::SizeLimit {
                what: "series order",
                got: order,
                cap: self.series_cap,
            });
        }
        let d_rec = engine.d_polys(order)?;
        let f_rec = engine.f_diagonal_sums(order)?;

        let d_checks = compare(&closed_form_d(order)?, &d_rec);
        let f_diagonal_checks = compare(&closed_form_f_diagonal(order)?, &f_rec);
        let f_series = TruncatedSeries::from_coeffs(order, f_rec);
        let relation_checks = compare(&d_from_f_diagonal(&f_series)?, &d_rec);

        let all_equal = d_checks
            .iter()
            .chain(&f_diagonal_checks)
            .chain(&relation_checks)
            .all(|c| c.equal);
        Ok(GfReport {
            order,
            all_equal,
            d_checks,
            f_diagonal_checks,
            relation_checks,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(order: usize, cs: &[&[i64]]) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(order, cs.iter().map(|c| poly(c)).collect())
    }

    #[test]
    fn catalan_numbers() {
        let c: Vec<i64> = CatalanSeries::new(8)
            .coeffs()
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(c, vec![0, 1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn catalan_functional_equation() {
        let n = 12;
        let b = series_b(n);
        let t = TruncatedSeries::monomial(n, RationalPoly::one(), 1);
        assert_eq!(b, &t + &(&b * &b));
    }

    #[test]
    fn inverse_and_division() {
        // 1 / (1 - qz) = sum q^n z^n
        let x = s(4, &[&[1], &[0, -1]]);
        let inv = x.inverse().unwrap();
        assert_eq!(
            inv,
            s(
                4,
                &[&[1], &[0, 1], &[0, 0, 1], &[0, 0, 0, 1], &[0, 0, 0, 0, 1]]
            )
        );
        assert_eq!(&x * &inv, TruncatedSeries::one(4));
        assert!(s(3, &[&[0, 1], &[1]]).inverse().is_err());
        assert!(s(3, &[&[], &[1]]).inverse().is_err());
    }

    #[test]
    fn composition() {
        let n = 6;
        let z = TruncatedSeries::monomial(n, RationalPoly::one(), 1);
        let z2q = TruncatedSeries::monomial(n, RationalPoly::q(), 2);
        // B(q z^2) by composition equals direct substitution
        let by_compose = series_b(n).compose(&z2q).unwrap();
        assert_eq!(
            by_compose,
            CatalanSeries::new(n).at_monomial(n, 1, 2).unwrap()
        );
        assert!(series_b(n)
            .compose(&(&z + &TruncatedSeries::one(n)))
            .is_err());
    }

    #[test]
    fn low_order_closed_forms() {
        let d = closed_form_d(3).unwrap();
        assert_eq!(d.coeff(0), &poly(&[1]));
        assert_eq!(d.coeff(1), &poly(&[0, 2]));
        assert_eq!(d.coeff(2), &poly(&[0, 1, 3]));
        let f = closed_form_f_diagonal(2).unwrap();
        // F_{0,0} = 1; F_{1,0} + F_{0,1} = 2q; F_{2,0} + F_{1,1} + F_{0,2} = 3q^2 + q
        assert_eq!(f.coeffs(), &[poly(&[1]), poly(&[0, 2]), poly(&[0, 1, 3])]);
    }

    #[test]
    fn verifier_reports_and_caps() {
        let report = GfVerifier::default()
            .verify(&ExactEngine::default(), 10)
            .unwrap();
        assert!(report.all_equal);
        assert_eq!(report.d_checks.len(), 11);
        assert!(matches!(
            GfVerifier::new(5).verify(&ExactEngine::default(), 6),
            Err(Error::SizeLimit { .. })
        ));
    }
}
