//! Row-by-row sweep over the two-color state table `(a, b)` with `a >= b`.
//!
//! Every quantity in the exact engine is a vector of nonnegative integers
//! attached to a two-color state (`a` cards of one color, `b` of the
//! other) and obeys a first-step recurrence in the starting state. Cells
//! with `a < b` are never stored; they equal their mirror image.
//!
//! Only two rows are alive at any time, so memory stays linear in the row
//! length.

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub(crate) type Cell = Vec<BigUint>;

/// A recurrence over two-color states plus its lift to whole decks.
pub(crate) trait Recurrence {
    /// Cell of state `(a, 0)`.
    fn edge(&self, a: usize) -> Cell;

    /// Cell of state `(a, b)`, `a >= b >= 1`, from `left = (a-1, b)` and
    /// `down = (a, b-1)` (mirrored when `a - 1 < b`).
    fn step(&self, a: usize, b: usize, left: &Cell, down: &Cell) -> Cell;

    /// Deck-level value for zero cards.
    fn deck_base(&self) -> Cell;

    /// Deck-level value for `n` cards from the value for `n - 1` cards and
    /// the two-color sum `sum_{j=0}^{n-2} cell(n-1-j, j)`.
    fn deck_step(&self, n: usize, prev: &Cell, diag: &Cell) -> Cell;
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum Region {
    /// All states with `a + b <= level`.
    Triangle(usize),
    /// All states with `a <= long`, `b <= short` (requires `long >= short`).
    Rectangle { long: usize, short: usize },
}

impl Region {
    fn row_end(self, b: usize) -> Option<usize> {
        match self {
            Region::Triangle(level) => (2 * b <= level).then(|| level - b),
            Region::Rectangle { long, short } => (b <= short).then_some(long),
        }
    }
}

/// Visits every stored cell of `region`, row by row.
pub(crate) fn sweep<R, V>(rec: &R, region: Region, mut visit: V)
where
    R: Recurrence + ?Sized,
    V: FnMut(usize, usize, &Cell),
{
    let mut prev: Vec<Cell> = Vec::new();
    let mut b = 0;
    while let Some(end) = region.row_end(b) {
        let mut row: Vec<Cell> = Vec::with_capacity(end + 1 - b);
        for a in b..=end {
            let cell = if b == 0 {
                rec.edge(a)
            } else {
                // prev holds row b-1 starting at a = b-1
                let down = &prev[a + 1 - b];
                let left = if a == b { down } else { &row[a - 1 - b] };
                rec.step(a, b, left, down)
            };
            visit(a, b, &cell);
            row.push(cell);
        }
        prev = row;
        b += 1;
    }
}

/// The single cell `(m1, m2)`.
pub(crate) fn cell_at<R: Recurrence + ?Sized>(rec: &R, m1: usize, m2: usize) -> Cell {
    let (long, short) = if m1 >= m2 { (m1, m2) } else { (m2, m1) };
    let mut out = None;
    sweep(rec, Region::Rectangle { long, short }, |a, b, c| {
        if a == long && b == short {
            out = Some(c.clone());
        }
    });
    out.expect("target cell lies inside its rectangle")
}

/// `diag[s] = sum_{j=0}^{s-1} cell(s-j, j)` for `s = 0..=level`, where the
/// sum runs over both orientations of each stored cell.
pub(crate) fn diagonal_sums<R: Recurrence + ?Sized>(rec: &R, level: usize) -> Vec<Cell> {
    let mut sums: Vec<Cell> = vec![Vec::new(); level + 1];
    sweep(rec, Region::Triangle(level), |a, b, c| {
        // orientation (a, b) has j = b and is excluded only when a = 0;
        // the mirror (b, a) has j = a and exists when b != 0 and a != b
        let mult = match (a, b) {
            (0, _) => 0u32,
            _ if a == b || b == 0 => 1,
            _ => 2,
        };
        if mult > 0 {
            add_scaled(&mut sums[a + b], c, mult);
        }
    });
    sums
}

/// Deck-level values for `n = 0..=n_max`.
pub(crate) fn deck_series<R: Recurrence + ?Sized>(rec: &R, n_max: usize) -> Vec<Cell> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(rec.deck_base());
    if n_max == 0 {
        return out;
    }
    let diag = diagonal_sums(rec, n_max - 1);
    for n in 1..=n_max {
        let next = rec.deck_step(n, &out[n - 1], &diag[n - 1]);
        out.push(next);
    }
    out
}

pub(crate) fn add_scaled(acc: &mut Cell, x: &[BigUint], mult: u32) {
    if acc.len() < x.len() {
        acc.resize(x.len(), BigUint::zero());
    }
    for (a, v) in acc.iter_mut().zip(x) {
        if !v.is_zero() {
            if mult == 1 {
                *a += v;
            } else {
                *a += v * mult;
            }
        }
    }
}

fn sum_cells(x: &[BigUint], y: &[BigUint]) -> Cell {
    let mut out = x.to_vec();
    add_scaled(&mut out, y, 1);
    out
}

fn unit_at(k: usize) -> Cell {
    let mut c = vec![BigUint::zero(); k + 1];
    c[k] = BigUint::one();
    c
}

/// `binom(n, k)` for `k = 0..=max_k`.
pub(crate) fn binomial_row(n: usize, max_k: usize) -> Cell {
    let mut row = Vec::with_capacity(max_k + 1);
    let mut c = BigUint::one();
    for k in 0..=max_k {
        if k > n {
            row.push(BigUint::zero());
            continue;
        }
        if k > 0 {
            c = c * (n + 1 - k) / k;
        }
        row.push(c.clone());
    }
    row
}

pub(crate) fn central_binomial(k: usize) -> BigUint {
    binomial_row(2 * k, k).pop().unwrap_or_else(BigUint::one)
}

/// Counting polynomials `F_{a,b}(q)` and `D_n(q)`: cell index = power of q.
pub(crate) struct CountPoly;

impl Recurrence for CountPoly {
    fn edge(&self, a: usize) -> Cell {
        unit_at(a)
    }

    fn step(&self, _a: usize, _b: usize, left: &Cell, down: &Cell) -> Cell {
        let mut out = vec![BigUint::zero(); (left.len() + 1).max(down.len())];
        for (i, v) in left.iter().enumerate() {
            out[i + 1] += v;
        }
        for (i, v) in down.iter().enumerate() {
            out[i] += v;
        }
        out
    }

    fn deck_base(&self) -> Cell {
        unit_at(0)
    }

    fn deck_step(&self, n: usize, prev: &Cell, diag: &Cell) -> Cell {
        let mut out = vec![BigUint::zero(); n + 1];
        for (i, v) in prev.iter().enumerate() {
            out[i + 1] += v;
        }
        out[n] += 1u32;
        add_scaled(&mut out, diag, 1);
        out
    }
}

/// Taylor coefficients at `q = 1`: cell index `r` holds `[u^r] F(1 + u)`,
/// truncated after `order`. Multiplication by `q = 1 + u` adds the
/// coefficient one place down.
pub(crate) struct TaylorAtOne {
    pub order: usize,
}

impl TaylorAtOne {
    fn times_q(&self, x: &[BigUint]) -> Cell {
        (0..=self.order)
            .map(|r| {
                let hi = x.get(r).cloned().unwrap_or_default();
                match r.checked_sub(1).and_then(|s| x.get(s)) {
                    Some(lo) => hi + lo,
                    None => hi,
                }
            })
            .collect()
    }
}

impl Recurrence for TaylorAtOne {
    fn edge(&self, a: usize) -> Cell {
        binomial_row(a, self.order)
    }

    fn step(&self, _a: usize, _b: usize, left: &Cell, down: &Cell) -> Cell {
        let mut out = self.times_q(left);
        add_scaled(&mut out, down, 1);
        out
    }

    fn deck_base(&self) -> Cell {
        binomial_row(0, self.order)
    }

    fn deck_step(&self, n: usize, prev: &Cell, diag: &Cell) -> Cell {
        let mut out = self.times_q(prev);
        add_scaled(&mut out, &binomial_row(n, self.order), 1);
        add_scaled(&mut out, diag, 1);
        out
    }
}

/// Word counts by first tie: cell index `k` counts the arrangements whose
/// sampling path first meets the diagonal at `(k, k)`, with `k = 0` for
/// paths that only tie at the origin.
pub(crate) struct FirstTie;

impl Recurrence for FirstTie {
    fn edge(&self, _a: usize) -> Cell {
        unit_at(0)
    }

    fn step(&self, a: usize, b: usize, left: &Cell, down: &Cell) -> Cell {
        if a == b {
            let mut c = vec![BigUint::zero(); a + 1];
            c[a] = central_binomial(a);
            c
        } else {
            sum_cells(left, down)
        }
    }

    fn deck_base(&self) -> Cell {
        unit_at(0)
    }

    fn deck_step(&self, _n: usize, prev: &Cell, diag: &Cell) -> Cell {
        let mut out = sum_cells(prev, diag);
        out[0] += 1u32;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(c: &Cell) -> Vec<u64> {
        c.iter().map(|v| v.try_into().unwrap()).collect()
    }

    #[test]
    fn binomials() {
        assert_eq!(ints(&binomial_row(5, 6)), vec![1, 5, 10, 10, 5, 1, 0]);
        assert_eq!(ints(&binomial_row(0, 2)), vec![1, 0, 0]);
        assert_eq!(central_binomial(3), BigUint::from(20u32));
        assert_eq!(central_binomial(0), BigUint::one());
    }

    #[test]
    fn small_f_cells() {
        assert_eq!(ints(&cell_at(&CountPoly, 1, 1)), vec![0, 1, 1]);
        assert_eq!(ints(&cell_at(&CountPoly, 3, 0)), vec![0, 0, 0, 1]);
        assert_eq!(cell_at(&CountPoly, 2, 3), cell_at(&CountPoly, 3, 2));
    }

    #[test]
    fn triangle_visits_each_state_once() {
        let mut seen = Vec::new();
        sweep(&CountPoly, Region::Triangle(4), |a, b, _| seen.push((a, b)));
        assert_eq!(
            seen,
            vec![
                (0, 0),
                (1, 0),
                (2, 0),
                (3, 0),
                (4, 0),
                (1, 1),
                (2, 1),
                (3, 1),
                (2, 2)
            ]
        );
    }

    #[test]
    fn deck_counts() {
        let d = deck_series(&CountPoly, 2);
        assert_eq!(ints(&d[0]), vec![1]);
        assert_eq!(ints(&d[1]), vec![0, 2]);
        assert_eq!(ints(&d[2]), vec![0, 1, 3]);
    }

    #[test]
    fn first_tie_counts_sum_to_binomials() {
        let c = cell_at(&FirstTie, 2, 1);
        // aab, aba tie at (1,1); baa ties only at the origin
        assert_eq!(ints(&c), vec![1, 2]);
        let c = cell_at(&FirstTie, 6, 4);
        let total: BigUint = c.iter().sum();
        assert_eq!(total, BigUint::from(210u32));
    }
}
