//! Adaptive Simpson quadrature.

pub const DEFAULT_TOL: f64 = 1e-10;
const MAX_DEPTH: u32 = 60;
const TAIL_CUTOFF: f64 = 1e-16;

/// `int_a^b f` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    adapt(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

/// `int_a^inf f` for an integrand that decays monotonically in the tail.
/// The range is cut where `|f|` first drops below `1e-16` on a doubling grid.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, tol: f64) -> f64 {
    let mut width = 1.0;
    while f(a + width).abs() >= TAIL_CUTOFF && width < 1e12 {
        width *= 2.0;
    }
    // split at the doubling points so narrow peaks near `a` are not skipped
    let mut total = 0.0;
    let mut lo = a;
    let mut step = 1.0;
    while lo < a + width {
        let hi = (lo + step).min(a + width);
        total += integrate(&f, lo, hi, tol);
        lo = hi;
        step *= 2.0;
    }
    total
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}
