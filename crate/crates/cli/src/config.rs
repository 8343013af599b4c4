//! The TOML configuration schema, its validation, and the mapping onto the
//! library's parameter records.
//!
//! Every section is optional at parse time so that validation can report
//! every problem in one pass instead of stopping at the first missing
//! field. `Config::builtin()` is the embedded default; running `sweep`
//! with no arguments reproduces the standard loss-aversion sweep from it.

use serde::{Deserialize, Serialize};
use sigspend::experiments::population::{DistributionSpec, PopulationSpec};
use sigspend::experiments::{CurveSpec, ParamSet, SweepAxis, SweepSpec};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub version: Option<u32>,
    pub model: Option<ModelSection>,
    pub econ: Option<EconSection>,
    pub prospect: Option<ProspectSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub population: Option<PopulationSection>,
    pub output: Option<OutputSection>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p0_dist: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p1_dist: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EconSection {
    pub s: Option<f64>,
    pub c: Option<f64>,
    pub p0: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProspectSection {
    pub beta: Option<f64>,
    pub lambda: Option<f64>,
    pub t: Option<f64>,
    /// Which reference-point variant headline queries describe. All three
    /// decision models are always computed; this is annotation only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub axis: Option<String>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PopulationSection {
    pub n_agents: Option<usize>,
    pub seed: Option<u64>,
    pub beta_dist: Option<DistributionSpec>,
    pub lambda_dist: Option<DistributionSpec>,
    pub t_dist: Option<DistributionSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<String>,
    pub formats: Option<Vec<String>>,
}

/// A fully validated configuration, ready to run.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub params: ParamSet,
    pub sweep: Option<SweepSpec>,
    pub population: Option<PopulationSpec>,
    pub out_dir: String,
    pub formats: Formats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formats {
    pub csv: bool,
    pub svg: bool,
    pub json: bool,
}

impl Config {
    /// The embedded default: unit-variance shift-of-mean detection with the
    /// standard economic and behavioral parameters, a loss-aversion sweep
    /// over [0.5, 5], and a 1000-agent population.
    pub fn builtin() -> Self {
        let params = ParamSet::default();
        let sweep = SweepSpec::default();
        let population = PopulationSpec::default();
        Config {
            version: Some(SCHEMA_VERSION),
            model: Some(ModelSection {
                kind: Some("gaussian".to_string()),
                sigma2: Some(match params.curve {
                    CurveSpec::Gaussian { sigma2 } => sigma2,
                    CurveSpec::Chernoff { .. } => unreachable!("default model is gaussian"),
                }),
                alphabet: None,
                p0_dist: None,
                p1_dist: None,
            }),
            econ: Some(EconSection {
                s: Some(params.s),
                c: Some(params.c),
                p0: Some(params.p0),
            }),
            prospect: Some(ProspectSection {
                beta: Some(params.beta),
                lambda: Some(params.lambda),
                t: Some(params.t),
                reference: Some("weighted".to_string()),
            }),
            sweep: Some(SweepSection {
                axis: Some(sweep.axis.name().to_string()),
                lo: Some(sweep.lo),
                hi: Some(sweep.hi),
                steps: Some(sweep.steps),
            }),
            population: Some(PopulationSection {
                n_agents: Some(population.n_agents),
                seed: Some(population.seed),
                beta_dist: Some(population.beta_dist),
                lambda_dist: Some(population.lambda_dist),
                t_dist: Some(population.t_dist),
            }),
            output: Some(OutputSection {
                dir: Some("out".to_string()),
                formats: Some(vec!["csv".to_string(), "svg".to_string()]),
            }),
        }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| format!("config parse error: {e}"))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    /// Validates every invariant, collecting all violations, and resolves
    /// the raw sections into runnable parameter records.
    pub fn resolve(&self) -> Result<Resolved, Vec<String>> {
        let mut problems = Vec::new();

        match self.version {
            None => problems.push("missing required field version".to_string()),
            Some(v) if v != SCHEMA_VERSION => {
                problems.push(format!("unsupported config version {v}, expected {SCHEMA_VERSION}"))
            }
            Some(_) => {}
        }

        let curve = self.resolve_model(&mut problems);
        let econ = self.resolve_econ(&mut problems);
        let behavioral = self.resolve_prospect(&mut problems);

        let params = match (curve, econ, behavioral) {
            (Some(curve), Some((s, c, p0)), Some((beta, lambda, t))) => {
                let params = ParamSet {
                    curve,
                    s,
                    c,
                    p0,
                    beta,
                    lambda,
                    t,
                };
                // surface the library-level invariant checks with context
                if let Err(e) = params.curve.build() {
                    problems.push(format!("model: {e}"));
                }
                if let Err(e) = params.econ() {
                    problems.push(format!("econ: {e}"));
                }
                if let Err(e) = sigspend::ProspectParams::weighted(beta, lambda, t) {
                    problems.push(format!("prospect: {e}"));
                }
                Some(params)
            }
            _ => None,
        };

        let sweep = self.resolve_sweep(params.as_ref(), &mut problems);
        let population = self.resolve_population(params.as_ref(), &mut problems);

        let out_dir = self
            .output
            .as_ref()
            .and_then(|o| o.dir.clone())
            .unwrap_or_else(|| "out".to_string());
        let formats = self.resolve_formats(&mut problems);

        match (params, problems.is_empty()) {
            (Some(params), true) => Ok(Resolved {
                params,
                sweep,
                population,
                out_dir,
                formats,
            }),
            _ => Err(problems),
        }
    }

    fn resolve_model(&self, problems: &mut Vec<String>) -> Option<CurveSpec> {
        let Some(model) = &self.model else {
            problems.push("missing required section model".to_string());
            return None;
        };
        match model.kind.as_deref() {
            Some("gaussian") => {
                for (field, present) in [
                    ("alphabet", model.alphabet.is_some()),
                    ("p0_dist", model.p0_dist.is_some()),
                    ("p1_dist", model.p1_dist.is_some()),
                ] {
                    if present {
                        problems.push(format!("model.{field} does not apply to the gaussian model"));
                    }
                }
                match model.sigma2 {
                    Some(sigma2) => Some(CurveSpec::Gaussian { sigma2 }),
                    None => {
                        problems.push("missing required field model.sigma2".to_string());
                        None
                    }
                }
            }
            Some("chernoff") => {
                if model.sigma2.is_some() {
                    problems.push("model.sigma2 does not apply to the chernoff model".to_string());
                }
                let p0 = model.p0_dist.clone();
                let p1 = model.p1_dist.clone();
                if p0.is_none() {
                    problems.push("missing required field model.p0_dist".to_string());
                }
                if p1.is_none() {
                    problems.push("missing required field model.p1_dist".to_string());
                }
                if let (Some(alphabet), Some(p0)) = (&model.alphabet, &p0) {
                    if alphabet.len() != p0.len() {
                        problems.push(format!(
                            "model.alphabet has {} symbols but p0_dist has {} masses",
                            alphabet.len(),
                            p0.len()
                        ));
                    }
                }
                match (p0, p1) {
                    (Some(p0_dist), Some(p1_dist)) => Some(CurveSpec::Chernoff { p0_dist, p1_dist }),
                    _ => None,
                }
            }
            Some(other) => {
                problems.push(format!("unknown model.kind '{other}' (expected gaussian or chernoff)"));
                None
            }
            None => {
                problems.push("missing required field model.kind".to_string());
                None
            }
        }
    }

    fn resolve_econ(&self, problems: &mut Vec<String>) -> Option<(f64, f64, f64)> {
        let Some(econ) = &self.econ else {
            problems.push("missing required section econ".to_string());
            return None;
        };
        let mut missing = false;
        for (name, value) in [("s", econ.s), ("c", econ.c), ("p0", econ.p0)] {
            if value.is_none() {
                problems.push(format!("missing required field econ.{name}"));
                missing = true;
            }
        }
        if missing {
            None
        } else {
            Some((econ.s.unwrap(), econ.c.unwrap(), econ.p0.unwrap()))
        }
    }

    fn resolve_prospect(&self, problems: &mut Vec<String>) -> Option<(f64, f64, f64)> {
        let Some(prospect) = &self.prospect else {
            problems.push("missing required section prospect".to_string());
            return None;
        };
        if let Some(reference) = prospect.reference.as_deref() {
            if reference != "fixed" && reference != "weighted" {
                problems.push(format!(
                    "prospect.reference must be 'fixed' or 'weighted', got '{reference}'"
                ));
            }
        }
        let mut missing = false;
        for (name, value) in [
            ("beta", prospect.beta),
            ("lambda", prospect.lambda),
            ("t", prospect.t),
        ] {
            if value.is_none() {
                problems.push(format!("missing required field prospect.{name}"));
                missing = true;
            }
        }
        if missing {
            None
        } else {
            Some((prospect.beta.unwrap(), prospect.lambda.unwrap(), prospect.t.unwrap()))
        }
    }

    fn resolve_sweep(&self, params: Option<&ParamSet>, problems: &mut Vec<String>) -> Option<SweepSpec> {
        let section = self.sweep.as_ref()?;
        let mut missing = false;
        let axis = match section.axis.as_deref() {
            Some(text) => match text.parse::<SweepAxis>() {
                Ok(axis) => Some(axis),
                Err(e) => {
                    problems.push(format!("sweep.axis: {e}"));
                    None
                }
            },
            None => {
                problems.push("missing required field sweep.axis".to_string());
                missing = true;
                None
            }
        };
        for (name, present) in [
            ("lo", section.lo.is_some()),
            ("hi", section.hi.is_some()),
            ("steps", section.steps.is_some()),
        ] {
            if !present {
                problems.push(format!("missing required field sweep.{name}"));
                missing = true;
            }
        }
        let (Some(axis), Some(params), false) = (axis, params, missing) else {
            return None;
        };
        let spec = SweepSpec {
            axis,
            lo: section.lo.unwrap(),
            hi: section.hi.unwrap(),
            steps: section.steps.unwrap(),
            fixed: params.clone(),
        };
        if let Err(e) = spec.validate() {
            problems.push(format!("sweep: {e}"));
            return None;
        }
        Some(spec)
    }

    fn resolve_population(
        &self,
        params: Option<&ParamSet>,
        problems: &mut Vec<String>,
    ) -> Option<PopulationSpec> {
        let section = self.population.as_ref()?;
        let mut missing = false;
        for (name, present) in [
            ("n_agents", section.n_agents.is_some()),
            ("seed", section.seed.is_some()),
            ("beta_dist", section.beta_dist.is_some()),
            ("lambda_dist", section.lambda_dist.is_some()),
            ("t_dist", section.t_dist.is_some()),
        ] {
            if !present {
                problems.push(format!("missing required field population.{name}"));
                missing = true;
            }
        }
        let (Some(params), false) = (params, missing) else {
            return None;
        };
        let spec = PopulationSpec {
            n_agents: section.n_agents.unwrap(),
            seed: section.seed.unwrap(),
            beta_dist: section.beta_dist.unwrap(),
            lambda_dist: section.lambda_dist.unwrap(),
            t_dist: section.t_dist.unwrap(),
            fixed: params.clone(),
        };
        if let Err(e) = spec.validate() {
            problems.push(format!("population: {e}"));
            return None;
        }
        Some(spec)
    }

    fn resolve_formats(&self, problems: &mut Vec<String>) -> Formats {
        let mut formats = Formats {
            csv: false,
            svg: false,
            json: false,
        };
        let requested = self
            .output
            .as_ref()
            .and_then(|o| o.formats.clone())
            .unwrap_or_else(|| vec!["csv".to_string(), "svg".to_string()]);
        for format in requested {
            match format.as_str() {
                "csv" => formats.csv = true,
                "svg" => formats.svg = true,
                "json" => formats.json = true,
                other => problems.push(format!(
                    "output.formats: unknown format '{other}' (expected csv, svg, json)"
                )),
            }
        }
        formats
    }

    /// Applies command-line overrides on top of the file values.
    pub fn apply_overrides(
        &mut self,
        out: Option<&str>,
        formats: Option<&[String]>,
        seed: Option<u64>,
    ) {
        if let Some(dir) = out {
            self.output
                .get_or_insert(OutputSection {
                    dir: None,
                    formats: None,
                })
                .dir = Some(dir.to_string());
        }
        if let Some(formats) = formats {
            self.output
                .get_or_insert(OutputSection {
                    dir: None,
                    formats: None,
                })
                .formats = Some(formats.to_vec());
        }
        if let Some(seed) = seed {
            if let Some(population) = &mut self.population {
                population.seed = Some(seed);
            }
        }
    }
}
