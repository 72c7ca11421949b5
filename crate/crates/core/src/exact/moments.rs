use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::table::{binomial_row, deck_series, TaylorAtOne};
use crate::error::{domain, Error, Result};

pub const MAX_MOMENT_ORDER: usize = 8;

/// Derivatives at `q = 1` of a counting polynomial: `entries[j] = P^{(j)}(1)`,
/// i.e. the `j`-th factorial moment times the total weight `P(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentVector {
    entries: Vec<BigRational>,
}

impl MomentVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        MomentVector { entries }
    }

    pub fn order(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    /// Total weight, `2^n` for decks of `n` cards.
    pub fn weight(&self) -> &BigRational {
        &self.entries[0]
    }

    pub fn factorial_moment(&self, j: usize) -> BigRational {
        &self.entries[j] / self.weight()
    }

    pub fn factorial_moments(&self) -> Vec<BigRational> {
        (0..self.entries.len())
            .map(|j| self.factorial_moment(j))
            .collect()
    }

    /// `E[X^k]` for `k = 0..=order`, via Stirling numbers of the second kind.
    pub fn raw_moments(&self) -> Vec<BigRational> {
        let fm = self.factorial_moments();
        let s2 = stirling2_table(self.order());
        (0..=self.order())
            .map(|k| {
                (0..=k)
                    .map(|j| &fm[j] * BigRational::from_integer(s2[k][j].clone()))
                    .sum()
            })
            .collect()
    }
}

fn stirling2_table(max: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); max + 1]; max + 1];
    t[0][0] = 1.into();
    for k in 1..=max {
        for j in 1..=k {
            t[k][j] = &t[k - 1][j - 1] + BigInt::from(j) * &t[k - 1][j];
        }
    }
    t
}

pub(crate) fn factorial_moments_x(n: usize, r_max: usize) -> Result<MomentVector> {
    if r_max > MAX_MOMENT_ORDER {
        return Err(Error::SizeLimit {
            what: "r_max",
            got: r_max,
            cap: MAX_MOMENT_ORDER,
        });
    }
    let taylor = deck_series(&TaylorAtOne { order: r_max }, n).swap_remove(n);
    let mut fact = BigInt::from(1);
    let entries = taylor
        .iter()
        .enumerate()
        .map(|(j, t)| {
            if j > 0 {
                fact *= j;
            }
            BigRational::from_integer(&fact * BigInt::from(t.clone()))
        })
        .collect();
    Ok(MomentVector { entries })
}

/// Exact `E[(X_n - n/2)^r]`, `r = 0..=r_max`.
pub(crate) fn shifted_moments_x(n: usize, r_max: usize) -> Result<Vec<BigRational>> {
    let raw = factorial_moments_x(n, r_max)?.raw_moments();
    let shift = -BigRational::new(BigInt::from(n), BigInt::from(2));
    Ok((0..=r_max)
        .map(|r| {
            let binoms = binomial_row(r, r);
            (0..=r)
                .map(|k| {
                    let c = BigRational::from_integer(binoms[k].clone().into());
                    c * &raw[k] * pow(&shift, r - k)
                })
                .sum()
        })
        .collect())
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::from_integer(1.into()), |acc, _| acc * x)
}

pub(crate) fn centered_moments_y(n: usize, r_max: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return domain("Y_n is undefined for n = 0");
    }
    let shifted = shifted_moments_x(n, r_max)?;
    let scale = (n as f64).sqrt();
    Ok(shifted
        .iter()
        .enumerate()
        .map(|(r, m)| m.to_f64().unwrap_or(f64::NAN) / scale.powi(r as i32))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_factorial_moments() {
        let m = factorial_moments_x(1, 1).unwrap();
        assert_eq!(m.factorial_moment(1), q(1, 1));
        let m = factorial_moments_x(2, 1).unwrap();
        assert_eq!(m.weight(), &q(4, 1));
        assert_eq!(m.factorial_moment(1), q(7, 4));
        let m = factorial_moments_x(0, 3).unwrap();
        assert_eq!(
            m.factorial_moments(),
            vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)]
        );
    }

    #[test]
    fn order_is_capped() {
        assert!(matches!(
            factorial_moments_x(5, 9),
            Err(Error::SizeLimit { cap: 8, .. })
        ));
        assert!(factorial_moments_x(5, 8).is_ok());
    }

    #[test]
    fn stirling_rows() {
        let t = stirling2_table(4);
        let row: Vec<i64> = t[4].iter().map(|v| v.try_into().unwrap()).collect();
        assert_eq!(row, vec![0, 1, 7, 6, 1]);
    }

    #[test]
    fn y_moments_start_at_one() {
        for n in [1, 5, 50] {
            assert_eq!(centered_moments_y(n, 3).unwrap()[0], 1.0);
        }
        assert!(centered_moments_y(0, 2).is_err());
    }
}
