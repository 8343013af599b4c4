//! Detection-accuracy curves: probability of a correct decision as a
//! function of the energy spent on the measurement.
//!
//! Two concrete models are provided behind the [`AccuracyCurve`] interface:
//! a shift-of-mean Gaussian test whose accuracy is `1 - Q(sqrt(p/sigma^2))`,
//! and an asymptotic multi-sample test whose accuracy is `1 - 2^(-n c*)`
//! with `c*` the Chernoff information of the two sampling distributions.

use crate::error::{Error, Result};
use crate::special::q_function;

/// A detection-accuracy curve D(p): increasing and concave in the consumed
/// energy, with derivative and inverse-derivative queries used by the
/// utility optimizers.
pub trait AccuracyCurve {
    /// D(p): probability of a correct decision after spending `p`.
    fn accuracy(&self, p: f64) -> Result<f64>;

    /// D'(p): marginal accuracy per unit energy.
    fn derivative(&self, p: f64) -> Result<f64>;

    /// (D')^-1: the energy at which the marginal accuracy equals `slope`.
    fn inverse_derivative(&self, slope: f64) -> Result<f64>;

    /// Limit of D'(p) as p -> 0+. Infinite for curves with a vertical
    /// tangent at the origin.
    fn initial_slope(&self) -> f64;

    /// The shift-of-mean model this curve is backed by, if any. Lets the
    /// optimizers pick the closed-form path that only exists for that model.
    fn as_gaussian_shift(&self) -> Option<&GaussianShiftModel> {
        None
    }
}

/// Shift-of-mean binary test: observations are Gaussian with means
/// `±sqrt(p)` and common variance `sigma2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianShiftModel {
    sigma2: f64,
}

impl GaussianShiftModel {
    pub fn new(sigma2: f64) -> Result<Self> {
        if sigma2 <= 0.0 || !sigma2.is_finite() {
            return Err(Error::Validation(vec![format!(
                "noise variance sigma2 must be positive and finite, got {sigma2}"
            )]));
        }
        Ok(GaussianShiftModel { sigma2 })
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }
}

impl AccuracyCurve for GaussianShiftModel {
    fn accuracy(&self, p: f64) -> Result<f64> {
        if p < 0.0 || p.is_nan() {
            return Err(Error::domain(format!("energy must be nonnegative, got {p}")));
        }
        Ok(1.0 - q_function((p / self.sigma2).sqrt())?)
    }

    fn derivative(&self, p: f64) -> Result<f64> {
        if p <= 0.0 || p.is_nan() {
            return Err(Error::domain(format!(
                "the accuracy derivative is defined for positive energy only, got {p}"
            )));
        }
        let sigma = self.sigma2.sqrt();
        Ok((-p / (2.0 * self.sigma2)).exp() / (2.0 * sigma * (2.0 * std::f64::consts::PI * p).sqrt()))
    }

    /// Solves D'(p) = slope in log form, `log D'(p) - log slope = 0`, which
    /// stays well scaled when the exponential term underflows at large p.
    /// Bracketing bisection with Newton steps accepted whenever they remain
    /// inside the current bracket.
    fn inverse_derivative(&self, slope: f64) -> Result<f64> {
        if slope <= 0.0 || !slope.is_finite() {
            return Err(Error::domain(format!("slope must be positive and finite, got {slope}")));
        }
        let sigma = self.sigma2.sqrt();
        let ln_slope = slope.ln();
        // g(p) = log D'(p) - log slope, strictly decreasing from +inf to -inf
        let g = |p: f64| {
            -(2.0 * sigma).ln() - 0.5 * (2.0 * std::f64::consts::PI * p).ln() - p / (2.0 * self.sigma2)
                - ln_slope
        };
        let g_prime = |p: f64| -0.5 / p - 1.0 / (2.0 * self.sigma2);

        let mut lo = 1e-12;
        let mut hi = 10.0 * self.sigma2 * (1.0f64).max(-2.0 * (slope * sigma).ln());
        while g(hi) > 0.0 {
            hi *= 2.0;
            if hi > 1e18 {
                return Err(Error::Convergence {
                    iterations: 0,
                    last: hi,
                    residual: g(hi),
                });
            }
        }
        while g(lo) < 0.0 {
            lo *= 0.5;
            if lo < 1e-300 {
                return Err(Error::Convergence {
                    iterations: 0,
                    last: lo,
                    residual: g(lo),
                });
            }
        }

        let mut p = 0.5 * (lo + hi);
        for _ in 0..200 {
            let gp = g(p);
            if gp > 0.0 {
                lo = p;
            } else {
                hi = p;
            }
            let newton = p - gp / g_prime(p);
            p = if newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= 1e-13 * p.max(1.0) {
                return Ok(p);
            }
        }
        Err(Error::Convergence {
            iterations: 200,
            last: p,
            residual: g(p),
        })
    }

    fn initial_slope(&self) -> f64 {
        f64::INFINITY
    }

    fn as_gaussian_shift(&self) -> Option<&GaussianShiftModel> {
        Some(self)
    }
}

/// Asymptotic multi-sample test over two discrete sampling distributions.
/// Accuracy after n samples is `1 - 2^(-n c*)` where `c*` is the Chernoff
/// information, computed once at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernoffModel {
    p0_dist: Vec<f64>,
    p1_dist: Vec<f64>,
    exponent: f64,
}

impl ChernoffModel {
    pub fn new(p0_dist: Vec<f64>, p1_dist: Vec<f64>) -> Result<Self> {
        let mut problems = validate_distribution_pair(&p0_dist, &p1_dist);
        if p0_dist.len() == p1_dist.len()
            && p0_dist
                .iter()
                .zip(&p1_dist)
                .all(|(a, b)| (a - b).abs() <= 1e-15)
        {
            problems.push(
                "the two distributions are identical; the accuracy curve would be constant"
                    .to_string(),
            );
        }
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        let exponent = chernoff_information(&p0_dist, &p1_dist)?;
        if !exponent.is_finite() {
            return Err(Error::Validation(vec![
                "the distributions have disjoint support; the error exponent is unbounded"
                    .to_string(),
            ]));
        }
        Ok(ChernoffModel {
            p0_dist,
            p1_dist,
            exponent,
        })
    }

    /// The cached Chernoff information in bits.
    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn p0_dist(&self) -> &[f64] {
        &self.p0_dist
    }

    pub fn p1_dist(&self) -> &[f64] {
        &self.p1_dist
    }
}

impl AccuracyCurve for ChernoffModel {
    fn accuracy(&self, n: f64) -> Result<f64> {
        if n < 0.0 || n.is_nan() {
            return Err(Error::domain(format!("sample count must be nonnegative, got {n}")));
        }
        Ok((1.0 - (2.0f64).powf(-n * self.exponent)).clamp(0.0, 1.0))
    }

    fn derivative(&self, n: f64) -> Result<f64> {
        if n < 0.0 || n.is_nan() {
            return Err(Error::domain(format!("sample count must be nonnegative, got {n}")));
        }
        let ln2 = std::f64::consts::LN_2;
        Ok(self.exponent * ln2 * (2.0f64).powf(-n * self.exponent))
    }

    fn inverse_derivative(&self, slope: f64) -> Result<f64> {
        if slope <= 0.0 || !slope.is_finite() {
            return Err(Error::domain(format!("slope must be positive and finite, got {slope}")));
        }
        let ln2 = std::f64::consts::LN_2;
        let peak = self.exponent * ln2;
        if slope > peak {
            return Err(Error::domain(format!(
                "slope {slope} exceeds the initial slope {peak}; no nonnegative solution"
            )));
        }
        Ok((peak / slope).ln() / (self.exponent * ln2))
    }

    fn initial_slope(&self) -> f64 {
        self.exponent * std::f64::consts::LN_2
    }
}

fn validate_distribution_pair(p0: &[f64], p1: &[f64]) -> Vec<String> {
    let mut problems = Vec::new();
    if p0.len() != p1.len() {
        problems.push(format!(
            "distributions are over different alphabets ({} vs {} outcomes)",
            p0.len(),
            p1.len()
        ));
    }
    if p0.is_empty() || p1.is_empty() {
        problems.push("distributions must have at least one outcome".to_string());
    }
    for (name, dist) in [("p0_dist", p0), ("p1_dist", p1)] {
        if dist.iter().any(|&m| m < 0.0 || !m.is_finite()) {
            problems.push(format!("{name} contains a negative or non-finite mass"));
        } else {
            let total: f64 = dist.iter().sum();
            if (total - 1.0).abs() > 1e-12 {
                problems.push(format!("{name} sums to {total}, not 1"));
            }
        }
    }
    problems
}

/// Chernoff information of two discrete distributions over a common
/// alphabet, in bits:
/// `-log2 min over l in (0,1) of sum_x p0(x)^l p1(x)^(1-l)`.
///
/// The inner function is convex and smooth in `l`, so the minimum is found
/// by golden-section search on (1e-9, 1 - 1e-9) to width 1e-12. Identical
/// distributions are allowed here and give 0.
pub fn chernoff_information(p0_dist: &[f64], p1_dist: &[f64]) -> Result<f64> {
    let problems = validate_distribution_pair(p0_dist, p1_dist);
    if !problems.is_empty() {
        return Err(Error::Validation(problems));
    }
    let inner = |l: f64| chernoff_inner(p0_dist, p1_dist, l);

    let (mut a, mut b) = (1e-9, 1.0 - 1e-9);
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = inner(x1);
    let mut f2 = inner(x2);
    while b - a > 1e-12 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = inner(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = inner(x2);
        }
    }
    let min = f1.min(f2);
    // c* >= 0 always; clamp away the -0.0 that log2(1.0-eps) rounding can give
    Ok((-min.log2()).max(0.0))
}

/// The inner Chernoff sum `sum_x p0(x)^l p1(x)^(1-l)` for `l` in (0, 1).
pub fn chernoff_inner(p0_dist: &[f64], p1_dist: &[f64], l: f64) -> f64 {
    p0_dist
        .iter()
        .zip(p1_dist)
        .map(|(&a, &b)| {
            if a == 0.0 || b == 0.0 {
                0.0
            } else {
                a.powf(l) * b.powf(1.0 - l)
            }
        })
        .sum()
}
