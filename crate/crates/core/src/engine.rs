//! The three energy-decision models: rational expected utility, prospect
//! theory with a fixed reference point at zero, and prospect theory with a
//! weighted-average reference point.
//!
//! Each optimizer returns an [`EnergyDecision`] whose energy lies in
//! `[0, p0]`. The expected-utility optimum comes from the inverse-derivative
//! query of the accuracy curve. The fixed-reference prospect optimum has a
//! closed form for the shift-of-mean model via the Wright Omega function;
//! everything else falls back to a seeded golden-section maximization. The
//! weighted-reference optimum is an all-or-nothing rule with an explicit
//! loss-aversion threshold.

use crate::detection::AccuracyCurve;
use crate::error::{Error, Result};
use crate::special::wright_omega;
use serde::{Deserialize, Serialize};

/// Market-side parameters: profit per correct decision, cost per unit
/// energy, and the available energy budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EconomicParams {
    s: f64,
    c: f64,
    p0: f64,
}

impl EconomicParams {
    pub fn new(s: f64, c: f64, p0: f64) -> Result<Self> {
        let mut problems = Vec::new();
        if s <= 0.0 || !s.is_finite() {
            problems.push(format!("profit s must be positive and finite, got {s}"));
        }
        if c <= 0.0 || !c.is_finite() {
            problems.push(format!("unit energy cost c must be positive and finite, got {c}"));
        }
        if p0 <= 0.0 || !p0.is_finite() {
            problems.push(format!("energy budget p0 must be positive and finite, got {p0}"));
        }
        if problems.is_empty() {
            Ok(EconomicParams { s, c, p0 })
        } else {
            Err(Error::Validation(problems))
        }
    }

    pub fn profit(&self) -> f64 {
        self.s
    }

    pub fn unit_cost(&self) -> f64 {
        self.c
    }

    pub fn budget(&self) -> f64 {
        self.p0
    }
}

/// Where the prospect-theory value function anchors its gain/loss split.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Reference {
    /// Reference point fixed at zero.
    FixedZero,
    /// Weighted average of the best outcome (profit `s`, weight `t`) and the
    /// worst outcome (pure energy cost, weight `1 - t`). `t` is the
    /// decision maker's optimism.
    WeightedAverage { t: f64 },
}

/// Behavioral parameters of the prospect-theory value function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProspectParams {
    beta: f64,
    lambda: f64,
    reference: Reference,
}

impl ProspectParams {
    pub fn new(beta: f64, lambda: f64, reference: Reference) -> Result<Self> {
        let mut problems = Vec::new();
        if beta <= 0.0 || !beta.is_finite() {
            problems.push(format!("loss aversion beta must be positive and finite, got {beta}"));
        }
        if lambda <= 0.0 || lambda > 1.0 || lambda.is_nan() {
            problems.push(format!(
                "marginal-utility exponent lambda must lie in (0, 1], got {lambda}"
            ));
        }
        if let Reference::WeightedAverage { t } = reference {
            if !(0.0..=1.0).contains(&t) {
                problems.push(format!("optimism t must lie in [0, 1], got {t}"));
            }
        }
        if problems.is_empty() {
            Ok(ProspectParams {
                beta,
                lambda,
                reference,
            })
        } else {
            Err(Error::Validation(problems))
        }
    }

    pub fn fixed_zero(beta: f64, lambda: f64) -> Result<Self> {
        Self::new(beta, lambda, Reference::FixedZero)
    }

    pub fn weighted(beta: f64, lambda: f64, t: f64) -> Result<Self> {
        Self::new(beta, lambda, Reference::WeightedAverage { t })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn reference(&self) -> Reference {
        self.reference
    }
}

/// Which part of `[0, p0]` the chosen energy landed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// A stationary point strictly inside the budget.
    Interior,
    /// The budget constraint binds.
    FullBudget,
    /// Spending nothing is optimal.
    Zero,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::Interior => write!(f, "interior"),
            Regime::FullBudget => write!(f, "full-budget"),
            Regime::Zero => write!(f, "zero"),
        }
    }
}

/// The outcome of one optimization: the chosen energy, the objective value
/// achieved there (expected or subjective per the requesting model), and the
/// regime. `used_fallback` is set when a closed-form path failed and the
/// numeric maximizer produced the answer instead.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyDecision {
    pub energy: f64,
    pub utility: f64,
    pub regime: Regime,
    pub used_fallback: bool,
}

impl EnergyDecision {
    fn new(energy: f64, utility: f64, regime: Regime) -> Self {
        EnergyDecision {
            energy,
            utility,
            regime,
            used_fallback: false,
        }
    }
}

/// Expected utility of spending `p`: `s D(p) - c p`.
pub fn expected_utility<C: AccuracyCurve + ?Sized>(
    curve: &C,
    econ: &EconomicParams,
    p: f64,
) -> Result<f64> {
    if p < 0.0 || p.is_nan() {
        return Err(Error::domain(format!("energy must be nonnegative, got {p}")));
    }
    Ok(econ.s * curve.accuracy(p)? - econ.c * p)
}

/// The rational optimum: the energy where the marginal accuracy equals
/// `c / s`, clamped to the budget.
pub fn optimal_energy_eu<C: AccuracyCurve + ?Sized>(
    curve: &C,
    econ: &EconomicParams,
) -> Result<EnergyDecision> {
    let target = econ.c / econ.s;
    if curve.initial_slope() <= target {
        // marginal gain never covers the marginal cost
        let utility = expected_utility(curve, econ, 0.0)?;
        return Ok(EnergyDecision::new(0.0, utility, Regime::Zero));
    }
    let unconstrained = curve.inverse_derivative(target)?;
    let (energy, regime) = if unconstrained >= econ.p0 {
        (econ.p0, Regime::FullBudget)
    } else {
        (unconstrained, Regime::Interior)
    };
    let utility = expected_utility(curve, econ, energy)?;
    Ok(EnergyDecision::new(energy, utility, regime))
}

/// Subjective utility of spending `p` under the fixed-zero reference:
/// `s^lambda D(p) - beta (c p)^lambda`.
pub fn subjective_utility_fixed<C: AccuracyCurve + ?Sized>(
    curve: &C,
    econ: &EconomicParams,
    pt: &ProspectParams,
    p: f64,
) -> Result<f64> {
    if pt.reference != Reference::FixedZero {
        return Err(Error::domain(
            "subjective_utility_fixed requires a fixed-zero reference point".to_string(),
        ));
    }
    if p < 0.0 || p.is_nan() {
        return Err(Error::domain(format!("energy must be nonnegative, got {p}")));
    }
    Ok(econ.s.powf(pt.lambda) * curve.accuracy(p)? - pt.beta * (econ.c * p).powf(pt.lambda))
}

/// The fixed-reference prospect optimum.
///
/// For the shift-of-mean model with `lambda > 0.5` the stationarity
/// condition `D'(p) p^(1-lambda) = beta lambda c^lambda / s^lambda`
/// rearranges to `log w + w = z` with `p = 2 sigma^2 (lambda - 1/2) w`, so
/// the optimum is a single Wright Omega evaluation:
///
/// ```text
/// p = 2 sigma^2 (lambda - 1/2) omega(z)
/// z = log(K) / (lambda - 1/2) - log(2 sigma^2 (lambda - 1/2))
/// K = s^lambda / (2 sqrt(2 pi) sigma lambda beta c^lambda)
/// ```
///
/// The objective is quasi-concave there, so the stationary point is the
/// global maximum. For other curves, or `lambda <= 0.5` where the objective
/// can be multimodal, the optimum comes from a 1000-point coarse grid over
/// `[0, p0]` refined by golden-section search.
pub fn optimal_energy_pt_fixed<C: AccuracyCurve + ?Sized>(
    curve: &C,
    econ: &EconomicParams,
    pt: &ProspectParams,
) -> Result<EnergyDecision> {
    if pt.reference != Reference::FixedZero {
        return Err(Error::domain(
            "optimal_energy_pt_fixed requires a fixed-zero reference point".to_string(),
        ));
    }

    if pt.lambda > 0.5 {
        if let Some(gaussian) = curve.as_gaussian_shift() {
            let sigma2 = gaussian.sigma2();
            let sigma = sigma2.sqrt();
            let half_gap = pt.lambda - 0.5;
            let scale = 2.0 * sigma2 * half_gap;
            let ln_k = pt.lambda * (econ.s.ln() - econ.c.ln())
                - (2.0 * (2.0 * std::f64::consts::PI).sqrt() * sigma * pt.lambda * pt.beta).ln();
            let z = ln_k / half_gap - scale.ln();
            match wright_omega(z) {
                Ok(w) => {
                    let unconstrained = scale * w;
                    let (energy, regime) = if unconstrained >= econ.p0 {
                        (econ.p0, Regime::FullBudget)
                    } else {
                        (unconstrained, Regime::Interior)
                    };
                    let utility = subjective_utility_fixed(curve, econ, pt, energy)?;
                    return Ok(EnergyDecision::new(energy, utility, regime));
                }
                Err(Error::Convergence { .. }) => {
                    // fall through to the numeric maximizer below
                }
                Err(other) => return Err(other),
            }
        }
    }

    let objective = |p: f64| subjective_utility_fixed(curve, econ, pt, p);
    let (energy, utility) = maximize_on_budget(&objective, econ.p0)?;
    let regime = classify(energy, econ.p0);
    let mut decision = EnergyDecision::new(energy, utility, regime);
    decision.used_fallback = pt.lambda > 0.5 && curve.as_gaussian_shift().is_some();
    Ok(decision)
}

/// Subjective utility of spending `p` under the weighted-average reference:
/// `(s + c p)^lambda ((1-t)^lambda D(p) - beta t^lambda)`.
pub fn subjective_utility_weighted<C: AccuracyCurve + ?Sized>(
    curve: &C,
    econ: &EconomicParams,
    pt: &ProspectParams,
    p: f64,
) -> Result<f64> {
    let Reference::WeightedAverage { t } = pt.reference else {
        return Err(Error::domain(
            "subjective_utility_weighted requires a weighted-average reference point".to_string(),
        ));
    };
    if p < 0.0 || p.is_nan() {
        return Err(Error::domain(format!("energy must be nonnegative, got {p}")));
    }
    let gain_loss = (1.0 - t).powf(pt.lambda) * curve.accuracy(p)? - pt.beta * t.powf(pt.lambda);
    Ok((econ.s + econ.c * p).powf(pt.lambda) * gain_loss)
}

/// The weighted-reference prospect optimum: all or nothing.
///
/// The subjective utility factors as a positive term times
/// `(1-t)^lambda D(p) - beta t^lambda`; when the second factor is positive
/// at the full budget both factors increase in `p`, so spending everything
/// is optimal. Otherwise the utility is nonpositive everywhere and the
/// decision maker sits out, which this library scores as utility 0.
pub fn optimal_energy_pt_weighted<C: AccuracyCurve + ?Sized>(
    curve: &C,
    econ: &EconomicParams,
    pt: &ProspectParams,
) -> Result<EnergyDecision> {
    let Reference::WeightedAverage { t } = pt.reference else {
        return Err(Error::domain(
            "optimal_energy_pt_weighted requires a weighted-average reference point".to_string(),
        ));
    };
    let gain_loss = (1.0 - t).powf(pt.lambda) * curve.accuracy(econ.p0)? - pt.beta * t.powf(pt.lambda);
    if gain_loss > 0.0 {
        let utility = subjective_utility_weighted(curve, econ, pt, econ.p0)?;
        Ok(EnergyDecision::new(econ.p0, utility, Regime::FullBudget))
    } else {
        Ok(EnergyDecision::new(0.0, 0.0, Regime::Zero))
    }
}

/// The loss-aversion threshold of the weighted-reference rule:
/// `(1-t)^lambda D(p0) / t^lambda`. The all-or-nothing decision spends the
/// full budget exactly when `beta` is strictly below this value.
pub fn beta_threshold<C: AccuracyCurve + ?Sized>(
    curve: &C,
    lambda: f64,
    t: f64,
    p0: f64,
) -> Result<f64> {
    if t <= 0.0 || t >= 1.0 || t.is_nan() {
        return Err(Error::domain(format!(
            "the threshold is defined for optimism strictly between 0 and 1, got {t}"
        )));
    }
    if lambda <= 0.0 || lambda > 1.0 || lambda.is_nan() {
        return Err(Error::domain(format!("lambda must lie in (0, 1], got {lambda}")));
    }
    if p0 <= 0.0 || p0.is_nan() {
        return Err(Error::domain(format!("budget must be positive, got {p0}")));
    }
    Ok((1.0 - t).powf(lambda) * curve.accuracy(p0)? / t.powf(lambda))
}

fn classify(energy: f64, p0: f64) -> Regime {
    if energy == 0.0 {
        Regime::Zero
    } else if energy == p0 {
        Regime::FullBudget
    } else {
        Regime::Interior
    }
}

/// Maximizes a scalar objective over `[0, p0]`: 1000-point coarse grid,
/// then golden-section search on the bracket around the best grid point
/// down to an interval of 1e-10. Endpoints snap exactly to 0 or p0.
fn maximize_on_budget<F>(objective: &F, p0: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    const COARSE: usize = 1000;
    let step = p0 / COARSE as f64;
    let mut best_i = 0usize;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..=COARSE {
        let x = if i == COARSE { p0 } else { i as f64 * step };
        let v = objective(x)?;
        if !v.is_finite() {
            return Err(Error::Evaluation { at: x });
        }
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }

    let mut a = if best_i == 0 { 0.0 } else { (best_i - 1) as f64 * step };
    let mut b = if best_i >= COARSE { p0 } else { (best_i + 1) as f64 * step };
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = objective(x1)?;
    let mut f2 = objective(x2)?;
    while b - a > 1e-10 {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = objective(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = objective(x2)?;
        }
    }
    let mut x = 0.5 * (a + b);
    let mut v = objective(x)?;
    // keep the endpoints honest: the refined interior point must beat them
    for (cand_x, cand_v) in [(0.0, objective(0.0)?), (p0, objective(p0)?)] {
        if cand_v >= v {
            x = cand_x;
            v = cand_v;
        }
    }
    // snap near-boundary results so regimes are exact
    if x <= 1e-9 && objective(0.0)? >= v - 1e-12 {
        x = 0.0;
        v = objective(0.0)?;
    } else if (p0 - x) <= 1e-9 * p0.max(1.0) && objective(p0)? >= v - 1e-12 {
        x = p0;
        v = objective(p0)?;
    }
    Ok((x, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detection::{ChernoffModel, GaussianShiftModel};

    fn paper_setup() -> (GaussianShiftModel, EconomicParams) {
        (
            GaussianShiftModel::new(1.0).unwrap(),
            EconomicParams::new(40.0, 5.0, 10.0).unwrap(),
        )
    }

    #[test]
    fn expected_utility_reference_points() {
        let (m, e) = paper_setup();
        // frozen: 40 * (1 - Q(sqrt(0.98))) - 4.9
        assert!((expected_utility(&m, &e, 0.98).unwrap() - 28.65602387674837).abs() < 1e-10);
        assert_eq!(expected_utility(&m, &e, 0.0).unwrap(), 20.0);
        assert!(
            expected_utility(&m, &e, 0.98).unwrap() > expected_utility(&m, &e, 3.0).unwrap()
        );
        assert!(expected_utility(&m, &e, -0.1).is_err());
    }

    #[test]
    fn eu_optimum_is_the_stationary_point() {
        let (m, e) = paper_setup();
        let d = optimal_energy_eu(&m, &e).unwrap();
        // frozen from the bisection oracle on D'(p) = c/s
        assert!((d.energy - 0.9676236816983186).abs() < 1e-8, "got {}", d.energy);
        assert_eq!(d.regime, Regime::Interior);
        assert!((d.utility - 28.656410757925496).abs() < 1e-10);
    }

    #[test]
    fn eu_optimum_clamps_to_small_budget() {
        let m = GaussianShiftModel::new(1.0).unwrap();
        let e = EconomicParams::new(40.0, 5.0, 0.5).unwrap();
        let d = optimal_energy_eu(&m, &e).unwrap();
        assert_eq!(d.energy, 0.5);
        assert_eq!(d.regime, Regime::FullBudget);
    }

    #[test]
    fn eu_optimum_depends_only_on_cost_profit_ratio() {
        let m = GaussianShiftModel::new(1.0).unwrap();
        let base = optimal_energy_eu(&m, &EconomicParams::new(40.0, 5.0, 10.0).unwrap()).unwrap();
        for k in [0.5, 2.0, 10.0] {
            let scaled =
                optimal_energy_eu(&m, &EconomicParams::new(40.0 * k, 5.0 * k, 10.0).unwrap())
                    .unwrap();
            assert!((scaled.energy - base.energy).abs() <= 1e-10);
        }
    }

    #[test]
    fn eu_optimum_zero_when_marginal_gain_never_pays() {
        // Chernoff curve has a finite initial slope
        let m = ChernoffModel::new(vec![0.6, 0.4], vec![0.4, 0.6]).unwrap();
        let e = EconomicParams::new(1.0, 10.0, 5.0).unwrap();
        assert!(m.initial_slope() < 10.0);
        let d = optimal_energy_eu(&m, &e).unwrap();
        assert_eq!(d.energy, 0.0);
        assert_eq!(d.regime, Regime::Zero);
        assert_eq!(d.utility, 0.0);
    }

    #[test]
    fn fixed_reference_reduces_to_eu_when_unbiased() {
        let (m, e) = paper_setup();
        let pt = ProspectParams::fixed_zero(1.0, 1.0).unwrap();
        let mut p = 0.0;
        while p <= 10.0 {
            let subjective = subjective_utility_fixed(&m, &e, &pt, p).unwrap();
            let expected = expected_utility(&m, &e, p).unwrap();
            assert!((subjective - expected).abs() <= 1e-12, "p = {p}");
            p += 0.01;
        }
    }

    #[test]
    fn fixed_reference_value_at_paper_parameters() {
        let (m, e) = paper_setup();
        let pt = ProspectParams::fixed_zero(2.25, 0.88).unwrap();
        // frozen term-by-term: 40^0.88 D(1) - 2.25 * 5^0.88
        let u = subjective_utility_fixed(&m, &e, &pt, 1.0).unwrap();
        assert!((u - 12.342376953805218).abs() < 1e-10, "got {u}");
        // zero spend keeps the guessing accuracy
        let at_zero = subjective_utility_fixed(&m, &e, &pt, 0.0).unwrap();
        assert!((at_zero - 12.846440114385892).abs() < 1e-12);
        assert!(subjective_utility_fixed(&m, &e, &pt, -1.0).is_err());
    }

    #[test]
    fn fixed_reference_rejects_weighted_params() {
        let (m, e) = paper_setup();
        let pt = ProspectParams::weighted(2.25, 0.88, 0.3).unwrap();
        assert!(subjective_utility_fixed(&m, &e, &pt, 1.0).is_err());
        assert!(optimal_energy_pt_fixed(&m, &e, &pt).is_err());
    }

    #[test]
    fn fixed_reference_closed_form_at_paper_parameters() {
        let (m, e) = paper_setup();
        let pt = ProspectParams::fixed_zero(2.25, 0.88).unwrap();
        let d = optimal_energy_pt_fixed(&m, &e, &pt).unwrap();
        // frozen from the dense grid oracle (1e6 points over [0, 10])
        assert!((d.energy - 0.22004244818239466).abs() < 1e-6, "got {}", d.energy);
        assert_eq!(d.regime, Regime::Interior);
        assert!(!d.used_fallback);
        assert!((d.utility - 15.036638067711245).abs() < 1e-9);
    }

    #[test]
    fn fixed_reference_stationarity_condition() {
        let (m, e) = paper_setup();
        for &(beta, lambda) in &[(2.25, 0.88), (1.0, 0.88), (0.7, 0.95), (4.0, 0.6)] {
            let pt = ProspectParams::fixed_zero(beta, lambda).unwrap();
            let d = optimal_energy_pt_fixed(&m, &e, &pt).unwrap();
            assert_eq!(d.regime, Regime::Interior);
            let lhs = m.derivative(d.energy).unwrap() * d.energy.powf(1.0 - lambda);
            let rhs = beta * lambda * e.unit_cost().powf(lambda) / e.profit().powf(lambda);
            assert!(
                (lhs - rhs).abs() <= 1e-8,
                "stationarity off by {} at beta={beta} lambda={lambda}",
                (lhs - rhs).abs()
            );
        }
    }

    #[test]
    fn fixed_reference_optimum_decreases_with_loss_aversion() {
        let (m, e) = paper_setup();
        let at = |beta: f64| {
            optimal_energy_pt_fixed(&m, &e, &ProspectParams::fixed_zero(beta, 0.88).unwrap())
                .unwrap()
                .energy
        };
        assert!(at(3.0) < at(1.5));
    }

    #[test]
    fn fixed_reference_unbiased_limit_recovers_eu_optimum() {
        let (m, e) = paper_setup();
        let pt = ProspectParams::fixed_zero(1.0, 1.0).unwrap();
        let d = optimal_energy_pt_fixed(&m, &e, &pt).unwrap();
        let eu = optimal_energy_eu(&m, &e).unwrap();
        assert!((d.energy - eu.energy).abs() < 1e-7, "{} vs {}", d.energy, eu.energy);
    }

    #[test]
    fn fixed_reference_clamps_to_budget() {
        let m = GaussianShiftModel::new(1.0).unwrap();
        let e = EconomicParams::new(40.0, 5.0, 0.1).unwrap();
        let pt = ProspectParams::fixed_zero(1.0, 0.88).unwrap();
        let d = optimal_energy_pt_fixed(&m, &e, &pt).unwrap();
        assert_eq!(d.energy, 0.1);
        assert_eq!(d.regime, Regime::FullBudget);
    }

    #[test]
    fn fixed_reference_falls_back_when_omega_underflows() {
        // lambda barely above one half drives the omega argument below the
        // representable range; the numeric maximizer must take over
        let m = GaussianShiftModel::new(0.25).unwrap();
        let e = EconomicParams::new(1.0, 20.0, 2.0).unwrap();
        let pt = ProspectParams::fixed_zero(5.0, 0.501).unwrap();
        let d = optimal_energy_pt_fixed(&m, &e, &pt).unwrap();
        assert!(d.used_fallback);
        assert_eq!(d.regime, Regime::Zero);
        assert_eq!(d.energy, 0.0);
        let at_zero = subjective_utility_fixed(&m, &e, &pt, 0.0).unwrap();
        assert!((d.utility - at_zero).abs() < 1e-12);
    }

    #[test]
    fn fixed_reference_numeric_path_handles_small_lambda() {
        let m = GaussianShiftModel::new(1.0).unwrap();
        let e = EconomicParams::new(40.0, 5.0, 2.0).unwrap();
        // lambda below one half: the steep early cost makes sitting out optimal here
        let pt = ProspectParams::fixed_zero(1.2, 0.45).unwrap();
        let d = optimal_energy_pt_fixed(&m, &e, &pt).unwrap();
        assert_eq!(d.regime, Regime::Zero);
        assert_eq!(d.energy, 0.0);
        assert!((d.utility - 2.6296442576539496).abs() < 1e-10);
    }

    #[test]
    fn fixed_reference_numeric_path_on_chernoff_curve() {
        let m = ChernoffModel::new(vec![0.9, 0.1], vec![0.1, 0.9]).unwrap();
        let e = EconomicParams::new(40.0, 5.0, 10.0).unwrap();
        let pt = ProspectParams::fixed_zero(1.2, 0.88).unwrap();
        let d = optimal_energy_pt_fixed(&m, &e, &pt).unwrap();
        assert!(d.energy >= 0.0 && d.energy <= 10.0);
        // the returned point is no worse than a fine reference grid
        let mut best = f64::NEG_INFINITY;
        for i in 0..=100_000 {
            let p = 10.0 * i as f64 / 100_000.0;
            best = best.max(subjective_utility_fixed(&m, &e, &pt, p).unwrap());
        }
        assert!(d.utility >= best - 1e-6);
    }

    #[test]
    fn weighted_reference_utility_values() {
        let (m, _) = paper_setup();
        let e = EconomicParams::new(40.0, 5.0, 2.0).unwrap();
        let pt = ProspectParams::weighted(2.25, 0.88, 0.3).unwrap();
        // frozen term-by-term evaluation at p = 2
        let u = subjective_utility_weighted(&m, &e, &pt, 2.0).unwrap();
        assert!((u + 3.3384237491579087).abs() < 1e-10, "got {u}");
        // t = 0: everything is a gain
        let optimist = ProspectParams::weighted(2.25, 0.88, 0.0).unwrap();
        assert!(subjective_utility_weighted(&m, &e, &optimist, 1.0).unwrap() > 0.0);
        // t = 1: everything is a loss
        let pessimist = ProspectParams::weighted(2.25, 0.88, 1.0).unwrap();
        assert!(subjective_utility_weighted(&m, &e, &pessimist, 1.0).unwrap() < 0.0);
        assert!(subjective_utility_weighted(&m, &e, &pt, -0.5).is_err());
    }

    #[test]
    fn weighted_reference_rejects_fixed_params() {
        let (m, e) = paper_setup();
        let pt = ProspectParams::fixed_zero(2.25, 0.88).unwrap();
        assert!(subjective_utility_weighted(&m, &e, &pt, 1.0).is_err());
        assert!(optimal_energy_pt_weighted(&m, &e, &pt).is_err());
    }

    #[test]
    fn weighted_reference_all_or_nothing() {
        let m = GaussianShiftModel::new(1.0).unwrap();
        let e = EconomicParams::new(40.0, 5.0, 2.0).unwrap();
        // t = 0 always spends everything
        let d = optimal_energy_pt_weighted(&m, &e, &ProspectParams::weighted(9.0, 0.88, 0.0).unwrap())
            .unwrap();
        assert_eq!(d.energy, 2.0);
        assert_eq!(d.regime, Regime::FullBudget);
        // high optimism with strong loss aversion sits out
        let d = optimal_energy_pt_weighted(&m, &e, &ProspectParams::weighted(2.25, 0.88, 0.9).unwrap())
            .unwrap();
        assert_eq!(d.energy, 0.0);
        assert_eq!(d.regime, Regime::Zero);
        assert_eq!(d.utility, 0.0);
    }

    #[test]
    fn weighted_reference_flips_exactly_at_threshold() {
        let m = GaussianShiftModel::new(1.0).unwrap();
        let e = EconomicParams::new(40.0, 5.0, 2.0).unwrap();
        let threshold = beta_threshold(&m, 0.88, 0.3, 2.0).unwrap();
        // frozen: (0.7)^0.88 D(2) / (0.3)^0.88
        assert!((threshold - 1.9419784136048313).abs() < 1e-12);

        let below = ProspectParams::weighted(threshold - 1e-6, 0.88, 0.3).unwrap();
        let at = ProspectParams::weighted(threshold, 0.88, 0.3).unwrap();
        let above = ProspectParams::weighted(threshold + 1e-6, 0.88, 0.3).unwrap();
        assert_eq!(optimal_energy_pt_weighted(&m, &e, &below).unwrap().regime, Regime::FullBudget);
        assert_eq!(optimal_energy_pt_weighted(&m, &e, &at).unwrap().regime, Regime::Zero);
        assert_eq!(optimal_energy_pt_weighted(&m, &e, &above).unwrap().regime, Regime::Zero);
    }

    #[test]
    fn beta_threshold_shape() {
        let m = GaussianShiftModel::new(1.0).unwrap();
        // t = 1/2 cancels the optimism factors
        let half = beta_threshold(&m, 0.88, 0.5, 2.0).unwrap();
        assert!((half - m.accuracy(2.0).unwrap()).abs() < 1e-14);
        // decreasing in t
        let mut prev = f64::INFINITY;
        for i in 1..=9 {
            let t = i as f64 * 0.1;
            let v = beta_threshold(&m, 0.88, t, 2.0).unwrap();
            assert!(v < prev, "threshold not decreasing at t = {t}");
            prev = v;
        }
        assert!(beta_threshold(&m, 0.88, 0.0, 2.0).is_err());
        assert!(beta_threshold(&m, 0.88, 1.0, 2.0).is_err());
    }

    #[test]
    fn param_validation_collects_all_problems() {
        match EconomicParams::new(-1.0, 0.0, -2.0) {
            Err(Error::Validation(problems)) => assert_eq!(problems.len(), 3),
            other => panic!("expected validation error, got {other:?}"),
        }
        match ProspectParams::weighted(0.0, 1.5, 2.0) {
            Err(Error::Validation(problems)) => assert_eq!(problems.len(), 3),
            other => panic!("expected validation error, got {other:?}"),
        }
        // lambda slightly above 1 is rejected
        assert!(ProspectParams::fixed_zero(1.0, 1.0 + 1e-9).is_err());
        assert!(ProspectParams::fixed_zero(1.0, 1.0).is_ok());
    }

    #[test]
    fn quasi_concavity_single_sign_change_for_large_lambda() {
        let (m, e) = paper_setup();
        let pt = ProspectParams::fixed_zero(2.25, 0.88).unwrap();
        let u = |p: f64| subjective_utility_fixed(&m, &e, &pt, p).unwrap();
        let mut flips = 0;
        let mut prev_diff = u(0.002) - u(0.001);
        for i in 2..5000 {
            let p = i as f64 * 0.001;
            let diff = u(p + 0.001) - u(p);
            if diff.signum() != prev_diff.signum() && diff != 0.0 {
                flips += 1;
            }
            prev_diff = diff;
        }
        assert_eq!(flips, 1, "expected a single rise-then-fall sign change");
    }
}
