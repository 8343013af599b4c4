//! Experiment runners: one-axis parameter sweeps over the three decision
//! models and a heterogeneous-population simulation, plus the CSV and SVG
//! renderers for their results.

pub mod population;
pub mod render;

use crate::detection::{AccuracyCurve, ChernoffModel, GaussianShiftModel};
use crate::engine::{
    optimal_energy_eu, optimal_energy_pt_fixed, optimal_energy_pt_weighted, EconomicParams,
    EnergyDecision, ProspectParams,
};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Constructor data for a detection model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveSpec {
    Gaussian { sigma2: f64 },
    Chernoff { p0_dist: Vec<f64>, p1_dist: Vec<f64> },
}

impl CurveSpec {
    pub fn build(&self) -> Result<Curve> {
        match self {
            CurveSpec::Gaussian { sigma2 } => Ok(Curve::Gaussian(GaussianShiftModel::new(*sigma2)?)),
            CurveSpec::Chernoff { p0_dist, p1_dist } => Ok(Curve::Chernoff(ChernoffModel::new(
                p0_dist.clone(),
                p1_dist.clone(),
            )?)),
        }
    }
}

/// A constructed detection model.
#[derive(Debug, Clone)]
pub enum Curve {
    Gaussian(GaussianShiftModel),
    Chernoff(ChernoffModel),
}

impl AccuracyCurve for Curve {
    fn accuracy(&self, p: f64) -> Result<f64> {
        match self {
            Curve::Gaussian(m) => m.accuracy(p),
            Curve::Chernoff(m) => m.accuracy(p),
        }
    }

    fn derivative(&self, p: f64) -> Result<f64> {
        match self {
            Curve::Gaussian(m) => m.derivative(p),
            Curve::Chernoff(m) => m.derivative(p),
        }
    }

    fn inverse_derivative(&self, slope: f64) -> Result<f64> {
        match self {
            Curve::Gaussian(m) => m.inverse_derivative(slope),
            Curve::Chernoff(m) => m.inverse_derivative(slope),
        }
    }

    fn initial_slope(&self) -> f64 {
        match self {
            Curve::Gaussian(m) => m.initial_slope(),
            Curve::Chernoff(m) => m.initial_slope(),
        }
    }

    fn as_gaussian_shift(&self) -> Option<&GaussianShiftModel> {
        match self {
            Curve::Gaussian(m) => Some(m),
            Curve::Chernoff(_) => None,
        }
    }
}

/// A full scalar parameter record: everything a sweep holds fixed plus the
/// behavioral triple the models draw from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    pub curve: CurveSpec,
    pub s: f64,
    pub c: f64,
    pub p0: f64,
    pub beta: f64,
    pub lambda: f64,
    pub t: f64,
}

impl Default for ParamSet {
    /// The standard demonstration setup: unit-variance shift-of-mean
    /// detection, profit 40, unit cost 5, budget 2, and the experimentally
    /// reported behavioral means (beta 2.25, lambda 0.88) with optimism 0.3.
    fn default() -> Self {
        ParamSet {
            curve: CurveSpec::Gaussian { sigma2: 1.0 },
            s: 40.0,
            c: 5.0,
            p0: 2.0,
            beta: 2.25,
            lambda: 0.88,
            t: 0.3,
        }
    }
}

impl ParamSet {
    pub fn econ(&self) -> Result<EconomicParams> {
        EconomicParams::new(self.s, self.c, self.p0)
    }

    /// Decisions under all three models for this record.
    pub fn decide_all(&self) -> Result<DecisionTriple> {
        let curve = self.curve.build()?;
        let econ = self.econ()?;
        let eu = optimal_energy_eu(&curve, &econ)?;
        let fixed = optimal_energy_pt_fixed(&curve, &econ, &ProspectParams::fixed_zero(self.beta, self.lambda)?)?;
        let weighted = optimal_energy_pt_weighted(
            &curve,
            &econ,
            &ProspectParams::weighted(self.beta, self.lambda, self.t)?,
        )?;
        Ok(DecisionTriple { eu, fixed, weighted })
    }
}

/// One decision per model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecisionTriple {
    pub eu: EnergyDecision,
    pub fixed: EnergyDecision,
    pub weighted: EnergyDecision,
}

/// The parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    Beta,
    Lambda,
    T,
    C,
    S,
    Sigma2,
    P0,
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::Beta => "beta",
            SweepAxis::Lambda => "lambda",
            SweepAxis::T => "t",
            SweepAxis::C => "c",
            SweepAxis::S => "s",
            SweepAxis::Sigma2 => "sigma2",
            SweepAxis::P0 => "p0",
        }
    }

    /// Whether the expected-utility decision depends on this axis. The
    /// behavioral parameters never enter the rational objective.
    pub fn affects_eu(&self) -> bool {
        !matches!(self, SweepAxis::Beta | SweepAxis::Lambda | SweepAxis::T)
    }
}

impl std::str::FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "beta" => Ok(SweepAxis::Beta),
            "lambda" => Ok(SweepAxis::Lambda),
            "t" => Ok(SweepAxis::T),
            "c" => Ok(SweepAxis::C),
            "s" => Ok(SweepAxis::S),
            "sigma2" => Ok(SweepAxis::Sigma2),
            "p0" => Ok(SweepAxis::P0),
            other => Err(Error::Validation(vec![format!(
                "unknown sweep axis '{other}' (expected one of beta, lambda, t, c, s, sigma2, p0)"
            )])),
        }
    }
}

/// A one-axis sweep: `steps` evenly spaced values of `axis` on `[lo, hi]`,
/// everything else held at `fixed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    pub fixed: ParamSet,
}

impl Default for SweepSpec {
    /// The built-in demonstration sweep: loss aversion from 0.5 to 5 in 100
    /// steps over the default parameter record.
    fn default() -> Self {
        SweepSpec {
            axis: SweepAxis::Beta,
            lo: 0.5,
            hi: 5.0,
            steps: 100,
            fixed: ParamSet::default(),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if self.lo >= self.hi || self.lo.is_nan() || self.hi.is_nan() {
            problems.push(format!("sweep needs lo < hi, got [{}, {}]", self.lo, self.hi));
        }
        if self.steps < 2 {
            problems.push(format!("sweep needs at least 2 steps, got {}", self.steps));
        }
        let (dom_lo, dom_hi, closed_lo) = self.axis.domain();
        let inside = |v: f64| v > dom_lo && v <= dom_hi || (closed_lo && v >= dom_lo && v <= dom_hi);
        if !inside(self.lo) || !inside(self.hi) {
            problems.push(format!(
                "axis {} values must stay within its domain ({}, {}]",
                self.axis.name(),
                dom_lo,
                dom_hi
            ));
        }
        if matches!(self.axis, SweepAxis::Sigma2)
            && !matches!(self.fixed.curve, CurveSpec::Gaussian { .. })
        {
            problems.push("axis sigma2 requires the gaussian model".to_string());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }

    fn value_at(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.steps - 1) as f64
        }
    }
}

impl SweepAxis {
    /// (lower bound, upper bound, lower bound included)
    fn domain(&self) -> (f64, f64, bool) {
        match self {
            SweepAxis::Beta => (0.0, f64::INFINITY, false),
            SweepAxis::Lambda => (0.0, 1.0, false),
            SweepAxis::T => (0.0, 1.0, true),
            SweepAxis::C => (0.0, f64::INFINITY, false),
            SweepAxis::S => (0.0, f64::INFINITY, false),
            SweepAxis::Sigma2 => (0.0, f64::INFINITY, false),
            SweepAxis::P0 => (0.0, f64::INFINITY, false),
        }
    }

    fn apply(&self, base: &ParamSet, value: f64) -> ParamSet {
        let mut p = base.clone();
        match self {
            SweepAxis::Beta => p.beta = value,
            SweepAxis::Lambda => p.lambda = value,
            SweepAxis::T => p.t = value,
            SweepAxis::C => p.c = value,
            SweepAxis::S => p.s = value,
            SweepAxis::Sigma2 => p.curve = CurveSpec::Gaussian { sigma2: value },
            SweepAxis::P0 => p.p0 = value,
        }
        p
    }
}

/// One sweep step: the axis value and the (energy, utility) pair under each
/// decision model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub axis_value: f64,
    pub eu_energy: f64,
    pub eu_utility: f64,
    pub ptfixed_energy: f64,
    pub ptfixed_utility: f64,
    pub ptweighted_energy: f64,
    pub ptweighted_utility: f64,
}

/// Runs the sweep. Rows come back in axis order; the expected-utility
/// columns are computed once and repeated when the axis cannot move them.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let abort = |value: f64, source: Error| Error::Sweep {
        axis: spec.axis.name(),
        value,
        source: Box::new(source),
    };

    let shared_eu = if spec.axis.affects_eu() {
        None
    } else {
        let curve = spec.fixed.curve.build()?;
        let econ = spec.fixed.econ()?;
        Some(optimal_energy_eu(&curve, &econ).map_err(|e| abort(spec.lo, e))?)
    };

    let mut rows = Vec::with_capacity(spec.steps);
    for i in 0..spec.steps {
        let value = spec.value_at(i);
        let params = spec.axis.apply(&spec.fixed, value);
        let curve = params.curve.build().map_err(|e| abort(value, e))?;
        let econ = params.econ().map_err(|e| abort(value, e))?;
        let eu = match shared_eu {
            Some(d) => d,
            None => optimal_energy_eu(&curve, &econ).map_err(|e| abort(value, e))?,
        };
        let fixed = optimal_energy_pt_fixed(
            &curve,
            &econ,
            &ProspectParams::fixed_zero(params.beta, params.lambda).map_err(|e| abort(value, e))?,
        )
        .map_err(|e| abort(value, e))?;
        let weighted = optimal_energy_pt_weighted(
            &curve,
            &econ,
            &ProspectParams::weighted(params.beta, params.lambda, params.t)
                .map_err(|e| abort(value, e))?,
        )
        .map_err(|e| abort(value, e))?;
        rows.push(SweepRow {
            axis_value: value,
            eu_energy: eu.energy,
            eu_utility: eu.utility,
            ptfixed_energy: fixed.energy,
            ptfixed_utility: fixed.utility,
            ptweighted_energy: weighted.energy,
            ptweighted_utility: weighted.utility,
        });
    }
    Ok(rows)
}
