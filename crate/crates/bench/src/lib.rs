//! Shared fixtures for the criterion benchmarks.

use sigspend::{EconomicParams, GaussianShiftModel, ProspectParams};

/// The standard demonstration setup used across the benchmarks.
pub fn standard_setup() -> (GaussianShiftModel, EconomicParams) {
    (
        GaussianShiftModel::new(1.0).expect("valid variance"),
        EconomicParams::new(40.0, 5.0, 10.0).expect("valid economics"),
    )
}

pub fn standard_prospect_fixed() -> ProspectParams {
    ProspectParams::fixed_zero(2.25, 0.88).expect("valid prospect params")
}
