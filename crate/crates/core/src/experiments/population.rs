//! Heterogeneous-population simulation: sample behavioral parameters per
//! agent from configured distributions, decide under all three models, and
//! summarize participation, energy, and achieved accuracy.

use super::{DecisionTriple, ParamSet};
use crate::detection::AccuracyCurve;
use crate::engine::{optimal_energy_eu, optimal_energy_pt_fixed, optimal_energy_pt_weighted, ProspectParams};
use crate::error::{Error, Result};
use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

/// A sampling distribution for one behavioral parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistributionSpec {
    Uniform { lo: f64, hi: f64 },
    /// Normal(mean, sd) restricted to [lo, hi] by rejection.
    TruncNormal { mean: f64, sd: f64, lo: f64, hi: f64 },
}

impl DistributionSpec {
    fn validate(&self, name: &str, problems: &mut Vec<String>) {
        match *self {
            DistributionSpec::Uniform { lo, hi } => {
                if lo > hi || !lo.is_finite() || !hi.is_finite() {
                    problems.push(format!("{name}: uniform bounds must be finite with lo <= hi"));
                }
            }
            DistributionSpec::TruncNormal { mean, sd, lo, hi } => {
                if sd <= 0.0 || !sd.is_finite() {
                    problems.push(format!("{name}: sd must be positive and finite"));
                }
                if lo > hi || !lo.is_finite() || !hi.is_finite() || !mean.is_finite() {
                    problems.push(format!("{name}: bounds and mean must be finite with lo <= hi"));
                }
            }
        }
    }

    /// One draw, rejected until it falls inside both the distribution's own
    /// bounds and the parameter's domain.
    fn sample(&self, rng: &mut ChaCha12Rng, domain: Domain, name: &str) -> Result<f64> {
        for _ in 0..100_000 {
            let x = match *self {
                DistributionSpec::Uniform { lo, hi } => lo + (hi - lo) * rng.random::<f64>(),
                DistributionSpec::TruncNormal { mean, sd, lo, hi } => {
                    let z = standard_normal(rng);
                    let x = mean + sd * z;
                    if x < lo || x > hi {
                        continue;
                    }
                    x
                }
            };
            if domain.contains(x) {
                return Ok(x);
            }
        }
        Err(Error::Validation(vec![format!(
            "{name}: sampling could not produce a value inside the valid domain"
        )]))
    }
}

/// Box-Muller transform over the ChaCha stream.
fn standard_normal(rng: &mut ChaCha12Rng) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>(); // (0, 1]
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// A parameter's valid interval; the lower endpoint may be open.
#[derive(Clone, Copy)]
struct Domain {
    lo: f64,
    hi: f64,
    lo_closed: bool,
}

impl Domain {
    const BETA: Domain = Domain { lo: 0.0, hi: f64::INFINITY, lo_closed: false };
    const LAMBDA: Domain = Domain { lo: 0.0, hi: 1.0, lo_closed: false };
    const OPTIMISM: Domain = Domain { lo: 0.0, hi: 1.0, lo_closed: true };

    fn contains(&self, x: f64) -> bool {
        (x > self.lo || (self.lo_closed && x == self.lo)) && x <= self.hi
    }
}

/// Configuration of a population run. The behavioral fields of `fixed` are
/// ignored; each agent replaces them with its own draws.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PopulationSpec {
    pub n_agents: usize,
    pub beta_dist: DistributionSpec,
    pub lambda_dist: DistributionSpec,
    pub t_dist: DistributionSpec,
    pub seed: u64,
    pub fixed: ParamSet,
}

impl Default for PopulationSpec {
    fn default() -> Self {
        PopulationSpec {
            n_agents: 1000,
            beta_dist: DistributionSpec::TruncNormal {
                mean: 2.25,
                sd: 1.0,
                lo: 0.25,
                hi: 6.0,
            },
            lambda_dist: DistributionSpec::TruncNormal {
                mean: 0.88,
                sd: 0.06,
                lo: 0.55,
                hi: 1.0,
            },
            t_dist: DistributionSpec::Uniform { lo: 0.1, hi: 0.6 },
            seed: 7,
            fixed: ParamSet::default(),
        }
    }
}

impl PopulationSpec {
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        self.beta_dist.validate("beta_dist", &mut problems);
        self.lambda_dist.validate("lambda_dist", &mut problems);
        self.t_dist.validate("t_dist", &mut problems);
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }
}

/// One simulated agent: its sampled parameters and its three decisions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AgentRecord {
    pub index: usize,
    pub beta: f64,
    pub lambda: f64,
    pub t: f64,
    pub decisions: DecisionTriple,
}

/// Per-model aggregate statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelStats {
    /// Fraction of agents that chose positive energy.
    pub participation_rate: f64,
    pub mean_energy: f64,
    pub median_energy: f64,
    /// Mean detection accuracy at the chosen energies.
    pub mean_accuracy: f64,
    pub mean_utility: f64,
}

impl ModelStats {
    fn empty() -> Self {
        ModelStats {
            participation_rate: 0.0,
            mean_energy: 0.0,
            median_energy: 0.0,
            mean_accuracy: 0.0,
            mean_utility: 0.0,
        }
    }
}

/// Aggregated outcome of a population run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PopulationSummary {
    pub n_agents: usize,
    pub seed: u64,
    pub eu: ModelStats,
    pub pt_fixed: ModelStats,
    pub pt_weighted: ModelStats,
}

/// Runs the simulation. Agents are sampled and evaluated in index order, so
/// the output is a pure function of the spec (seed included).
pub fn run_population(spec: &PopulationSpec) -> Result<(PopulationSummary, Vec<AgentRecord>)> {
    spec.validate()?;
    let curve = spec.fixed.curve.build()?;
    let econ = spec.fixed.econ()?;
    let mut rng = ChaCha12Rng::seed_from_u64(spec.seed);

    // the rational decision ignores the behavioral draws
    let eu = optimal_energy_eu(&curve, &econ)?;

    let mut agents = Vec::with_capacity(spec.n_agents);
    for index in 0..spec.n_agents {
        let beta = spec.beta_dist.sample(&mut rng, Domain::BETA, "beta_dist")?;
        let lambda = spec.lambda_dist.sample(&mut rng, Domain::LAMBDA, "lambda_dist")?;
        let t = spec.t_dist.sample(&mut rng, Domain::OPTIMISM, "t_dist")?;
        let fixed = optimal_energy_pt_fixed(&curve, &econ, &ProspectParams::fixed_zero(beta, lambda)?)?;
        let weighted =
            optimal_energy_pt_weighted(&curve, &econ, &ProspectParams::weighted(beta, lambda, t)?)?;
        agents.push(AgentRecord {
            index,
            beta,
            lambda,
            t,
            decisions: DecisionTriple { eu, fixed, weighted },
        });
    }

    let stats = |pick: &dyn Fn(&AgentRecord) -> crate::engine::EnergyDecision| -> Result<ModelStats> {
        if agents.is_empty() {
            return Ok(ModelStats::empty());
        }
        let n = agents.len() as f64;
        let mut energies: Vec<f64> = agents.iter().map(|a| pick(a).energy).collect();
        let participating = energies.iter().filter(|&&e| e > 0.0).count() as f64;
        let mean_energy = energies.iter().sum::<f64>() / n;
        let mean_utility = agents.iter().map(|a| pick(a).utility).sum::<f64>() / n;
        let mut mean_accuracy = 0.0;
        for e in &energies {
            mean_accuracy += curve.accuracy(*e)?;
        }
        mean_accuracy /= n;
        energies.sort_by(|a, b| a.partial_cmp(b).expect("energies are finite"));
        let median_energy = if energies.len() % 2 == 1 {
            energies[energies.len() / 2]
        } else {
            0.5 * (energies[energies.len() / 2 - 1] + energies[energies.len() / 2])
        };
        Ok(ModelStats {
            participation_rate: participating / n,
            mean_energy,
            median_energy,
            mean_accuracy,
            mean_utility,
        })
    };

    let summary = PopulationSummary {
        n_agents: spec.n_agents,
        seed: spec.seed,
        eu: stats(&|a| a.decisions.eu)?,
        pt_fixed: stats(&|a| a.decisions.fixed)?,
        pt_weighted: stats(&|a| a.decisions.weighted)?,
    };
    Ok((summary, agents))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::beta_threshold;

    #[test]
    fn degenerate_population_reproduces_the_rational_optimum() {
        let spec = PopulationSpec {
            n_agents: 50,
            beta_dist: DistributionSpec::Uniform { lo: 1.0, hi: 1.0 },
            lambda_dist: DistributionSpec::Uniform { lo: 1.0, hi: 1.0 },
            t_dist: DistributionSpec::Uniform { lo: 0.3, hi: 0.3 },
            seed: 42,
            fixed: ParamSet {
                p0: 10.0,
                ..ParamSet::default()
            },
        };
        let (summary, agents) = run_population(&spec).unwrap();
        assert_eq!(agents.len(), 50);
        let eu_energy = summary.eu.mean_energy;
        assert!((summary.pt_fixed.mean_energy - eu_energy).abs() < 1e-7);
        assert!((summary.pt_fixed.median_energy - eu_energy).abs() < 1e-7);
        for a in &agents {
            assert_eq!(a.beta, 1.0);
            assert_eq!(a.lambda, 1.0);
        }
    }

    #[test]
    fn empty_population_yields_zeroed_summary() {
        let spec = PopulationSpec {
            n_agents: 0,
            ..PopulationSpec::default()
        };
        let (summary, agents) = run_population(&spec).unwrap();
        assert!(agents.is_empty());
        assert_eq!(summary.pt_weighted.participation_rate, 0.0);
        assert_eq!(summary.eu.mean_energy, 0.0);
    }

    #[test]
    fn participation_tracks_the_loss_aversion_threshold() {
        let fixed = ParamSet::default();
        let curve = fixed.curve.build().unwrap();
        let threshold = beta_threshold(&curve, fixed.lambda, fixed.t, fixed.p0).unwrap();
        let n = 2000;
        let spec = PopulationSpec {
            n_agents: n,
            beta_dist: DistributionSpec::Uniform {
                lo: threshold - 1.0,
                hi: threshold + 1.0,
            },
            lambda_dist: DistributionSpec::Uniform {
                lo: fixed.lambda,
                hi: fixed.lambda,
            },
            t_dist: DistributionSpec::Uniform {
                lo: fixed.t,
                hi: fixed.t,
            },
            seed: 1234,
            fixed,
        };
        let (summary, _) = run_population(&spec).unwrap();
        // half the beta interval sits below the threshold; allow 3 standard errors
        let se = (0.25 / n as f64).sqrt();
        assert!(
            (summary.pt_weighted.participation_rate - 0.5).abs() <= 3.0 * se,
            "participation {} vs analytic 0.5 (3 se = {})",
            summary.pt_weighted.participation_rate,
            3.0 * se
        );
    }

    #[test]
    fn identical_seeds_give_identical_runs() {
        let spec = PopulationSpec {
            n_agents: 64,
            ..PopulationSpec::default()
        };
        let (s1, a1) = run_population(&spec).unwrap();
        let (s2, a2) = run_population(&spec).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(a1, a2);
    }

    #[test]
    fn different_seeds_differ() {
        let base = PopulationSpec {
            n_agents: 16,
            ..PopulationSpec::default()
        };
        let other = PopulationSpec { seed: 8, ..base.clone() };
        let (_, a1) = run_population(&base).unwrap();
        let (_, a2) = run_population(&other).unwrap();
        assert_ne!(a1, a2);
    }

    #[test]
    fn truncated_normal_respects_bounds() {
        let spec = PopulationSpec {
            n_agents: 500,
            beta_dist: DistributionSpec::TruncNormal {
                mean: 2.25,
                sd: 2.0,
                lo: 0.5,
                hi: 3.0,
            },
            ..PopulationSpec::default()
        };
        let (_, agents) = run_population(&spec).unwrap();
        for a in &agents {
            assert!(a.beta >= 0.5 && a.beta <= 3.0);
            assert!(a.lambda > 0.0 && a.lambda <= 1.0);
            assert!((0.0..=1.0).contains(&a.t));
        }
    }

    #[test]
    fn invalid_distributions_are_rejected_with_all_problems() {
        let spec = PopulationSpec {
            beta_dist: DistributionSpec::Uniform { lo: 3.0, hi: 1.0 },
            lambda_dist: DistributionSpec::TruncNormal {
                mean: 0.9,
                sd: -1.0,
                lo: 0.6,
                hi: 1.0,
            },
            ..PopulationSpec::default()
        };
        match run_population(&spec) {
            Err(Error::Validation(problems)) => assert_eq!(problems.len(), 2),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn impossible_sampling_domain_is_reported() {
        let spec = PopulationSpec {
            n_agents: 1,
            // entirely outside the valid lambda domain
            lambda_dist: DistributionSpec::Uniform { lo: 1.5, hi: 2.0 },
            ..PopulationSpec::default()
        };
        assert!(run_population(&spec).is_err());
    }
}
