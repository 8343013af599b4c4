//! Brute-force verifiers: dense grid maximization of a scalar objective and
//! golden-section refinement around a seed. These are the ground truth the
//! closed-form optimizers are tested against and share no code with the
//! engine.

use crate::error::{Error, Result};

/// A uniform evaluation grid on `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, points: usize) -> Result<Self> {
        let mut problems = Vec::new();
        if lo >= hi || !lo.is_finite() || !hi.is_finite() {
            problems.push(format!("grid needs lo < hi, got [{lo}, {hi}]"));
        }
        if points < 2 {
            problems.push(format!("grid needs at least 2 points, got {points}"));
        }
        if problems.is_empty() {
            Ok(GridSpec { lo, hi, points })
        } else {
            Err(Error::Validation(problems))
        }
    }

    fn point(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.points - 1) as f64
        }
    }

    pub fn spacing(&self) -> f64 {
        (self.hi - self.lo) / (self.points - 1) as f64
    }
}

/// Evaluates the objective at every grid point and returns the argmax and
/// the maximum value. Ties break toward the smaller argument.
pub fn grid_argmax<F>(objective: F, grid: &GridSpec) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let mut best_x = grid.point(0);
    let mut best_v = objective(best_x);
    if !best_v.is_finite() {
        return Err(Error::Evaluation { at: best_x });
    }
    for i in 1..grid.points {
        let x = grid.point(i);
        let v = objective(x);
        if !v.is_finite() {
            return Err(Error::Evaluation { at: x });
        }
        if v > best_v {
            best_v = v;
            best_x = x;
        }
    }
    Ok((best_x, best_v))
}

/// Golden-section refinement of a maximum around `seed`, searching
/// `[seed - radius, seed + radius]` down to an interval of width `tol`.
/// Returns whichever of the refined point and the seed scores higher, so
/// refinement never loses ground on a multimodal objective.
pub fn refine_argmax<F>(objective: F, seed: f64, radius: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if radius <= 0.0 || radius.is_nan() {
        return Err(Error::domain(format!("radius must be positive, got {radius}")));
    }
    if tol <= 0.0 || tol.is_nan() {
        return Err(Error::domain(format!("tol must be positive, got {tol}")));
    }
    let mut a = seed - radius;
    let mut b = seed + radius;
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = objective(x1);
    let mut f2 = objective(x2);
    while b - a > tol {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = objective(x2);
        }
    }
    let mid = 0.5 * (a + b);
    if objective(mid) >= objective(seed) {
        Ok(mid)
    } else {
        Ok(seed)
    }
}
