//! Derivative-free one-dimensional minimisation over a phase bracket.

use crate::error::{Error, Result};

/// Points of the coarse scan that picks the golden-section bracket.
pub const GRID_POINTS: usize = 256;

const INV_PHI: f64 = 0.618_033_988_749_894_9; // (√5 − 1)/2
const INV_PHI2: f64 = 0.381_966_011_250_105_1; // 1 − INV_PHI

fn finite_or_inf(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        f64::INFINITY
    }
}

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
///
/// Returns `(x_min, f_min)` once the bracket is narrower than `tol`.
pub fn golden_section<F>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let (mut a, b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut h = b - a;
    let mut c = a + INV_PHI2 * h;
    let mut d = a + INV_PHI * h;
    let mut fc = finite_or_inf(f(c));
    let mut fd = finite_or_inf(f(d));

    while h > tol {
        if fc < fd {
            d = c;
            fd = fc;
            h *= INV_PHI;
            c = a + INV_PHI2 * h;
            fc = finite_or_inf(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            h *= INV_PHI;
            d = a + INV_PHI * h;
            fd = finite_or_inf(f(d));
        }
    }

    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Minimises a phase-dependent variance on `bracket`.
///
/// A [`GRID_POINTS`]-point scan picks the best cell, then golden section
/// refines inside its neighbours. Non-finite values (zero-slope phases) count
/// as `+∞`. The returned variance never exceeds the best grid value.
pub fn numeric_phi_min<F>(objective: F, bracket: (f64, f64), tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    if !(tol >= 1e-12) {
        return Err(Error::OutOfRange {
            name: "tol",
            value: tol,
        });
    }
    let (lo, hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(Error::OutOfRange {
            name: "bracket",
            value: hi - lo,
        });
    }

    let step = (hi - lo) / (GRID_POINTS - 1) as f64;
    let grid = |k: usize| {
        if k == GRID_POINTS - 1 {
            hi
        } else {
            lo + step * k as f64
        }
    };

    let mut best: Option<(usize, f64)> = None;
    for k in 0..GRID_POINTS {
        let v = objective(grid(k));
        if v.is_finite() && best.is_none_or(|(_, bv)| v < bv) {
            best = Some((k, v));
        }
    }
    let (k, grid_min) = best.ok_or(Error::NoMinimum)?;

    let left = grid(k.saturating_sub(1));
    let right = grid((k + 1).min(GRID_POINTS - 1));
    let (x, v) = golden_section(&objective, left, right, tol);

    if v <= grid_min {
        Ok((x, v))
    } else {
        Ok((grid(k), grid_min))
    }
}
