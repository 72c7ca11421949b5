//! Exact finite-`n` laws via big-integer recurrences.
//!
//! Two-color quantities live on the states `(m1, m2)` of the table in
//! [`table`]; deck-level quantities are lifted from the anti-diagonal sums of
//! that table. Counting polynomials have nonnegative integer coefficients, so
//! the tables are built over `BigUint` and only the public results are
//! rationals.

mod moments;
pub(crate) mod table;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::pmf::Pmf;
use crate::poly::RationalPoly;

pub use moments::{MomentVector, MAX_MOMENT_ORDER};
use table::{cell_at, deck_series, Cell, CountPoly, FirstTie, Recurrence};

pub const DEFAULT_POLY_CAP: usize = 200;

/// Exact engine with a cap on the size of full polynomial tables.
///
/// Every operation is a pure function of its arguments; tables are local to
/// the call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactEngine {
    poly_cap: usize,
}

impl Default for ExactEngine {
    fn default() -> Self {
        ExactEngine {
            poly_cap: DEFAULT_POLY_CAP,
        }
    }
}

/// Outcome of rebuilding the law of `X_n` from its mixture decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixtureCheck {
    pub n: usize,
    pub equal: bool,
    pub max_discrepancy: BigRational,
}

/// The ingredients of the decomposition of `X_n`: a fair coin for "first
/// card correct", a coin of bias `2^{-(n-1)}` for the all-`b` word, and the
/// split `J_n` of the remaining cards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixtureSpec {
    pub n: usize,
    pub i1_prob: BigRational,
    pub i2_prob: BigRational,
    pub j_pmf: Pmf,
}

impl MixtureSpec {
    pub fn new(n: usize) -> Result<Self> {
        Ok(MixtureSpec {
            n,
            i1_prob: BigRational::new(1.into(), 2.into()),
            i2_prob: BigRational::new(1.into(), pow2(n - 1)),
            j_pmf: truncated_binom_pmf(n)?,
        })
    }
}

impl ExactEngine {
    pub fn new(poly_cap: usize) -> Self {
        ExactEngine { poly_cap }
    }

    pub fn poly_cap(&self) -> usize {
        self.poly_cap
    }

    fn check_cap(&self, what: &'static str, got: usize) -> Result<()> {
        if got > self.poly_cap {
            Err(Error::SizeLimit {
                what,
                got,
                cap: self.poly_cap,
            })
        } else {
            Ok(())
        }
    }

    /// `F_{m1,m2}(q)`: correct-guess counting polynomial of the two-color
    /// game summed over all `binom(m1+m2, m1)` arrangements.
    pub fn f_poly(&self, m1: usize, m2: usize) -> Result<RationalPoly> {
        self.check_cap("m1 + m2", m1 + m2)?;
        Ok(RationalPoly::from_biguints(&cell_at(&CountPoly, m1, m2)))
    }

    /// `D_n(q)`: correct-guess counting polynomial over all `2^n` words.
    pub fn d_poly(&self, n: usize) -> Result<RationalPoly> {
        self.check_cap("n", n)?;
        let mut series = deck_series(&CountPoly, n);
        Ok(RationalPoly::from_biguints(&series.swap_remove(n)))
    }

    /// `D_0, ..., D_{n_max}` from a single table sweep.
    pub fn d_polys(&self, n_max: usize) -> Result<Vec<RationalPoly>> {
        self.check_cap("n", n_max)?;
        Ok(deck_series(&CountPoly, n_max)
            .iter()
            .map(|c| RationalPoly::from_biguints(c))
            .collect())
    }

    /// `sum_{a+b=s} F_{a,b}(q)` for `s = 0..=level`.
    pub fn f_diagonal_sums(&self, level: usize) -> Result<Vec<RationalPoly>> {
        self.check_cap("m1 + m2", level)?;
        // the stored sums leave out the a = 0 cells, F_{0,s} = q^s
        Ok(table::diagonal_sums(&CountPoly, level)
            .iter()
            .enumerate()
            .map(|(s, c)| {
                &RationalPoly::from_biguints(c) + &RationalPoly::monomial(BigRational::one(), s)
            })
            .collect())
    }

    /// Law of the number of correct guesses `X_n`.
    pub fn pgf_x(&self, n: usize) -> Result<Pmf> {
        Pmf::from_poly(&self.d_poly(n)?)
    }

    /// Law of the two-color correct-guess count `C_{m1,m2}`.
    pub fn pgf_c(&self, m1: usize, m2: usize) -> Result<Pmf> {
        Pmf::from_poly(&self.f_poly(m1, m2)?)
    }

    /// Laws of `C_{s-j, j}` for `j = 0..=s`.
    pub fn c_row(&self, s: usize) -> Result<Vec<Pmf>> {
        self.check_cap("m1 + m2", s)?;
        row_laws(&CountPoly, s)
    }

    /// Rebuilds the law of `X_n` as
    /// `1/2 (X_{n-1} + 1) + 2^{-n} delta_n + 1/2 (1 - 2^{1-n}) C_{n-1-J, J}`
    /// and compares it with [`Self::pgf_x`].
    pub fn mixture_check(&self, n: usize) -> Result<MixtureCheck> {
        if n < 2 {
            return domain(format!("mixture check needs n >= 2, got {n}"));
        }
        self.check_cap("n", n)?;
        let spec = MixtureSpec::new(n)?;
        let prev = self.pgf_x(n - 1)?.shift(1);
        let top = Pmf::point(n as i64);
        let two_color = self.c_row(n - 1)?;
        let rest = BigRational::one() - &spec.i1_prob;
        let split_weight = &rest * (BigRational::one() - &spec.i2_prob);

        let mut parts: Vec<(BigRational, &Pmf)> =
            vec![(spec.i1_prob.clone(), &prev), (&rest * &spec.i2_prob, &top)];
        for (j, pj) in spec.j_pmf.iter() {
            parts.push((&split_weight * pj, &two_color[j as usize]));
        }
        let rebuilt = Pmf::mixture(parts)?;
        let direct = self.pgf_x(n)?;

        let lo = rebuilt.min_value().min(direct.min_value());
        let hi = rebuilt.max_value().max(direct.max_value());
        let max_discrepancy = (lo..=hi)
            .map(|v| (rebuilt.prob(v) - direct.prob(v)).abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        Ok(MixtureCheck {
            n,
            equal: rebuilt == direct,
            max_discrepancy,
        })
    }

    /// Law of `H_{m1,m2}`: half the number of cards left at the first tied
    /// state `(k, k)` with `k >= 1`, or 0 when the two-color path only ties
    /// at the origin. A tied start gives `H = m1`.
    pub fn h_dist(&self, m1: usize, m2: usize) -> Result<Pmf> {
        self.check_cap("m1 + m2", m1 + m2)?;
        Pmf::from_weights(0, &cell_at(&FirstTie, m1, m2))
    }

    /// Laws of `H_{s-j, j}` for `j = 0..=s`.
    pub fn h_row(&self, s: usize) -> Result<Vec<Pmf>> {
        self.check_cap("m1 + m2", s)?;
        row_laws(&FirstTie, s)
    }

    /// Law of `P_n`, half the deck size at the first pure-luck guess (0 if
    /// there is none).
    pub fn p_dist(&self, n: usize) -> Result<Pmf> {
        self.check_cap("n", n)?;
        let mut series = deck_series(&FirstTie, n);
        Pmf::from_weights(0, &series.swap_remove(n))
    }

    /// `E[X_n^{(r)}]` for `r = 0..=r_max`, scaled by `2^n`, from a table of
    /// Taylor coefficients at `q = 1`. No full polynomial is built, so `n` is
    /// not bounded by the polynomial cap.
    pub fn factorial_moments_x(&self, n: usize, r_max: usize) -> Result<MomentVector> {
        moments::factorial_moments_x(n, r_max)
    }

    /// `E[Y_n^r]` for `Y_n = (X_n - n/2) / sqrt(n)`, `r = 0..=r_max`.
    pub fn centered_moments_y(&self, n: usize, r_max: usize) -> Result<Vec<f64>> {
        moments::centered_moments_y(n, r_max)
    }
}

/// Normalised cells on the anti-diagonal `a + b = s`, indexed by `b`.
fn row_laws<R: Recurrence>(rec: &R, s: usize) -> Result<Vec<Pmf>> {
    let mut cells: Vec<Option<Cell>> = vec![None; s + 1];
    table::sweep(rec, table::Region::Triangle(s), |a, b, c| {
        if a + b == s {
            cells[b] = Some(c.clone());
            cells[a] = Some(c.clone());
        }
    });
    cells
        .into_iter()
        .map(|c| Pmf::from_weights(0, &c.expect("anti-diagonal is complete")))
        .collect()
}

pub(crate) fn pow2(k: usize) -> BigInt {
    BigInt::one() << k
}

fn binom(n: usize, k: usize) -> BigUint {
    table::binomial_row(n, k)
        .pop()
        .unwrap_or_else(BigUint::zero)
}

/// Law of the top card after one riffle shuffle of `n` cards: label 1 has
/// probability `1/2 + 2^{-n}`, label `m >= 2` has `binom(n-1, m-1) / 2^n`.
pub fn first_card_pmf(n: usize) -> Result<Pmf> {
    if n == 0 {
        return domain("the top card of an empty deck is undefined");
    }
    let denom = pow2(n);
    let mut probs = Vec::with_capacity(n);
    probs.push(BigRational::new(1.into(), 2.into()) + BigRational::new(1.into(), denom.clone()));
    for m in 2..=n {
        probs.push(BigRational::new(binom(n - 1, m - 1).into(), denom.clone()));
    }
    Pmf::new(1, probs)
}

/// Probability that card `j` is on top given the first `j - 1` cards came
/// out as `1, ..., j-1`: `(2^{n-j} + j) / (2^{n-j+1} + j - 1)`.
pub fn run_continuation_prob(n: usize, j: usize) -> Result<BigRational> {
    if j == 0 || j > n {
        return domain(format!("need 1 <= j <= n, got j = {j}, n = {n}"));
    }
    let num = pow2(n - j) + BigInt::from(j);
    let den = pow2(n - j + 1) + BigInt::from(j - 1);
    Ok(BigRational::new(num, den))
}

/// `J_n`: Binomial(n-1, 1/2) conditioned on `J <= n - 2`.
pub fn truncated_binom_pmf(n: usize) -> Result<Pmf> {
    if n < 2 {
        return domain(format!("truncated binomial needs n >= 2, got {n}"));
    }
    let weights = table::binomial_row(n - 1, n - 2);
    Pmf::from_weights(0, &weights)
}
