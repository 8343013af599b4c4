//! Optimal energy expenditure for binary signal detection under three
//! decision models: rational expected utility, prospect theory with a fixed
//! reference point, and prospect theory with a weighted-average reference
//! point.
//!
//! The library is organized around a detection-accuracy curve `D(p)` — the
//! probability of a correct decision after spending energy `p` — and three
//! optimizers that trade that accuracy against the cost of energy:
//!
//! - [`engine::optimal_energy_eu`] maximizes `s D(p) - c p`;
//! - [`engine::optimal_energy_pt_fixed`] maximizes the loss-averse
//!   subjective utility `s^l D(p) - beta (c p)^l`, with a Wright Omega
//!   closed form on the shift-of-mean model;
//! - [`engine::optimal_energy_pt_weighted`] applies the all-or-nothing rule
//!   of the weighted-average reference point.
//!
//! [`oracle`] holds the brute-force grid verifiers the closed forms are
//! tested against, and [`experiments`] reproduces the behavioral sweeps and
//! the heterogeneous-population simulation.

pub mod detection;
pub mod engine;
pub mod error;
pub mod experiments;
pub mod oracle;
pub mod special;

pub use detection::{chernoff_information, AccuracyCurve, ChernoffModel, GaussianShiftModel};
pub use engine::{
    beta_threshold, expected_utility, optimal_energy_eu, optimal_energy_pt_fixed,
    optimal_energy_pt_weighted, subjective_utility_fixed, subjective_utility_weighted,
    EconomicParams, EnergyDecision, ProspectParams, Reference, Regime,
};
pub use error::{Error, Result};
pub use experiments::{
    run_sweep, Curve, CurveSpec, DecisionTriple, ParamSet, SweepAxis, SweepRow, SweepSpec,
};
pub use oracle::{grid_argmax, refine_argmax, GridSpec};
pub use special::{q_function, wright_omega, wright_omega_tol, Tolerance};
