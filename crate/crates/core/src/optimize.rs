//! Deterministic bounded scalar optimization: a fixed grid locates the best
//! cell, golden-section search refines inside the neighbouring cells.
//!
//! Non-finite objective values (including NaN) count as `+∞` when
//! minimizing. Ties on the grid go to the smallest argument, and the refined
//! point replaces the grid point only when it is strictly better, so a flat
//! objective returns the left end of the grid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Grid size used when none is given.
pub const DEFAULT_GRID: usize = 64;

/// Smallest offset from an open lower endpoint.
pub const OPEN_OFFSET: f64 = 1e-12;

const MAX_GOLDEN_ITERS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarOptResult {
    pub arg: f64,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Grid placement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSpacing {
    Linear,
    /// Offsets from the lower end spaced evenly in `log10`, from
    /// [`OPEN_OFFSET`] up to the interval width.
    LogOffset,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptOptions {
    pub grid_points: usize,
    pub spacing: GridSpacing,
    pub lo_open: bool,
    pub tol: f64,
}

impl OptOptions {
    /// Log-offset grid for an open lower end, linear otherwise.
    pub fn new(lo_open: bool, tol: f64) -> Self {
        Self {
            grid_points: DEFAULT_GRID,
            spacing: if lo_open {
                GridSpacing::LogOffset
            } else {
                GridSpacing::Linear
            },
            lo_open,
            tol,
        }
    }
}

fn grid(lo: f64, hi: f64, opts: &OptOptions) -> Vec<f64> {
    let n = opts.grid_points.max(2);
    let width = hi - lo;
    let start = if opts.lo_open {
        OPEN_OFFSET.min(width / 2.0)
    } else {
        0.0
    };
    let mut xs: Vec<f64> = match opts.spacing {
        GridSpacing::Linear => (0..n)
            .map(|i| lo + start + (width - start) * i as f64 / (n - 1) as f64)
            .collect(),
        GridSpacing::LogOffset => {
            let (a, b) = (OPEN_OFFSET.min(width / 2.0).log10(), width.log10());
            let mut v: Vec<f64> = Vec::with_capacity(n + 1);
            if !opts.lo_open {
                v.push(lo);
            }
            v.extend((0..n).map(|i| lo + 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64)));
            v
        }
    };
    // Pin the right end exactly and drop rounding-level disorder.
    if let Some(last) = xs.last_mut() {
        *last = hi;
    }
    xs.dedup_by(|b, a| *b <= *a);
    xs
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Minimizes `f` on `[lo, hi]` (or `(lo, hi]` when `opts.lo_open`).
pub fn minimize_scalar_with<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    opts: &OptOptions,
) -> Result<ScalarOptResult>
where
    F: FnMut(f64) -> f64,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(format!(
            "optimization interval [{lo}, {hi}] is empty"
        )));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance {} must be positive",
            opts.tol
        )));
    }
    let xs = grid(lo, hi, opts);
    let mut evaluations = 0usize;
    let mut eval = |x: f64| {
        evaluations += 1;
        sanitize(f(x))
    };

    let mut best = 0usize;
    let mut best_val = f64::INFINITY;
    let vals: Vec<f64> = xs.iter().map(|&x| eval(x)).collect();
    for (i, &v) in vals.iter().enumerate() {
        if v < best_val {
            best = i;
            best_val = v;
        }
    }
    if !best_val.is_finite() {
        return Ok(ScalarOptResult {
            arg: xs[0],
            value: best_val,
            evaluations,
            converged: false,
        });
    }

    let a = xs[best.saturating_sub(1)];
    let b = xs[(best + 1).min(xs.len() - 1)];
    let (x, fx, converged) = golden(&mut eval, a, b, opts.tol);
    let (arg, value) = if fx < best_val {
        (x, fx)
    } else {
        (xs[best], best_val)
    };
    Ok(ScalarOptResult {
        arg,
        value,
        evaluations,
        converged,
    })
}

/// Golden-section search on `[a, b]`. Returns the best point seen.
fn golden<F: FnMut(f64) -> f64>(f: &mut F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64, bool) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    if b - a <= tol {
        let m = 0.5 * (a + b);
        return (m, f(m), true);
    }
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut iters = 0;
    while b - a > tol && iters < MAX_GOLDEN_ITERS {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        iters += 1;
    }
    let converged = b - a <= tol;
    if fc <= fd {
        (c, fc, converged)
    } else {
        (d, fd, converged)
    }
}

/// Grid-seeded golden-section minimization with the default grid.
pub fn minimize_scalar<F>(
    f: F,
    lo: f64,
    hi: f64,
    lo_open: bool,
    tol: f64,
) -> Result<ScalarOptResult>
where
    F: FnMut(f64) -> f64,
{
    minimize_scalar_with(f, lo, hi, &OptOptions::new(lo_open, tol))
}

/// Maximization by sign flip; non-finite values count as `−∞`.
pub fn maximize_scalar_with<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    opts: &OptOptions,
) -> Result<ScalarOptResult>
where
    F: FnMut(f64) -> f64,
{
    let r = minimize_scalar_with(
        |x| {
            let v = f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                -v
            }
        },
        lo,
        hi,
        opts,
    )?;
    Ok(ScalarOptResult {
        value: -r.value,
        ..r
    })
}

pub fn maximize_scalar<F>(
    f: F,
    lo: f64,
    hi: f64,
    lo_open: bool,
    tol: f64,
) -> Result<ScalarOptResult>
where
    F: FnMut(f64) -> f64,
{
    maximize_scalar_with(f, lo, hi, &OptOptions::new(lo_open, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic() {
        let r = minimize_scalar(|x| (x - 0.3) * (x - 0.3), 0.0, 1.0, false, 1e-9).unwrap();
        assert!((r.arg - 0.3).abs() < 1e-9, "{}", r.arg);
        assert!(r.converged);
        assert_eq!(r.value, (r.arg - 0.3) * (r.arg - 0.3));
    }

    #[test]
    fn infinite_open_end() {
        let r = minimize_scalar(
            |x| if x <= 0.0 { f64::INFINITY } else { 1.0 / x + x },
            0.0,
            4.0,
            true,
            1e-10,
        )
        .unwrap();
        assert!(r.arg > 0.0);
        assert!((r.arg - 1.0).abs() < 1e-6);
    }

    #[test]
    fn maximize_quadratic() {
        let r = maximize_scalar(|x| -(x - 0.7) * (x - 0.7), 0.0, 1.0, false, 1e-9).unwrap();
        assert!((r.arg - 0.7).abs() < 1e-9);
    }

    #[test]
    fn flat_objective_takes_left_end() {
        let r = minimize_scalar(|_| 2.5, 0.0, 1.0, false, 1e-9).unwrap();
        assert_eq!(r.arg, 0.0);
        assert_eq!(r.value, 2.5);
        assert!(r.converged);
        let r = maximize_scalar(|_| 2.5, 0.0, 3.0, false, 1e-9).unwrap();
        assert_eq!(r.arg, 0.0);
    }

    #[test]
    fn all_infinite_is_not_converged() {
        let r = minimize_scalar(|_| f64::NAN, 0.0, 1.0, false, 1e-9).unwrap();
        assert!(!r.converged);
        assert!(r.value.is_infinite());
    }

    #[test]
    fn boundary_minimum() {
        let r = minimize_scalar(|x| x, 0.0, 1.0, false, 1e-9).unwrap();
        assert_eq!(r.arg, 0.0);
        let r = minimize_scalar(|x| -x, 0.2, 1.0, true, 1e-9).unwrap();
        assert!((r.arg - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bad_interval() {
        assert!(minimize_scalar(|x| x, 1.0, 1.0, false, 1e-9).is_err());
        assert!(minimize_scalar(|x| x, 0.0, 1.0, false, 0.0).is_err());
    }

    #[test]
    fn deterministic() {
        let f = |x: f64| (3.0 * x).sin() + 0.1 * x;
        let a = minimize_scalar(f, 0.0, 5.0, false, 1e-9).unwrap();
        let b = minimize_scalar(f, 0.0, 5.0, false, 1e-9).unwrap();
        assert_eq!(a.arg.to_bits(), b.arg.to_bits());
        assert_eq!(a.evaluations, b.evaluations);
    }
}
