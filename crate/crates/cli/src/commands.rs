//! The four subcommands: decide, sweep, population, fn.

use crate::config::{Formats, Resolved};
use crate::AppError;
use serde::Serialize;
use sigspend::experiments::population::run_population;
use sigspend::experiments::render::{agents_csv, fmt_sig, sweep_csv, sweep_svg, ChartKind};
use sigspend::experiments::run_sweep;
use sigspend::{beta_threshold, chernoff_information, q_function, wright_omega, EnergyDecision};
use std::fs;
use std::path::{Path, PathBuf};

/// Decimal formatting with `digits` significant digits for human-facing
/// text; falls back to scientific notation outside a readable magnitude.
fn sig(value: f64, digits: i32) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return format!("{value}");
    }
    let exponent = value.abs().log10().floor() as i32;
    if exponent >= -4 && exponent < digits {
        let decimals = (digits - 1 - exponent).max(0) as usize;
        format!("{value:.decimals$}")
    } else {
        format!("{value:.*e}", (digits - 1) as usize)
    }
}

#[derive(Serialize)]
struct DecideRecord {
    eu: EnergyDecision,
    pt_fixed: EnergyDecision,
    pt_weighted: EnergyDecision,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta_threshold: Option<f64>,
}

pub fn cmd_decide(resolved: &Resolved) -> Result<(), AppError> {
    let params = &resolved.params;
    let triple = params.decide_all().map_err(AppError::from)?;
    let threshold = if params.t > 0.0 && params.t < 1.0 {
        let curve = params.curve.build().map_err(AppError::from)?;
        Some(beta_threshold(&curve, params.lambda, params.t, params.p0).map_err(AppError::from)?)
    } else {
        None
    };

    let line = |name: &str, d: &EnergyDecision, extra: &str| {
        println!(
            "{name:<22} energy {:<12} utility {:<12} regime {}{extra}",
            sig(d.energy, 6),
            sig(d.utility, 6),
            d.regime
        );
    };
    line("expected-utility", &triple.eu, "");
    line("prospect-fixed", &triple.fixed, "");
    let extra = match threshold {
        Some(b) => format!("   (beta threshold {})", sig(b, 6)),
        None => String::new(),
    };
    line("prospect-weighted", &triple.weighted, &extra);

    if resolved.formats.json {
        let record = DecideRecord {
            eu: triple.eu,
            pt_fixed: triple.fixed,
            pt_weighted: triple.weighted,
            beta_threshold: threshold,
        };
        let json = serde_json::to_string_pretty(&record).expect("decision serializes");
        let path = write_atomic(Path::new(&resolved.out_dir), "decide.json", &json)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

pub fn cmd_sweep(resolved: &Resolved) -> Result<(), AppError> {
    let Some(spec) = &resolved.sweep else {
        return Err(AppError::Validation(vec![
            "the config has no sweep section".to_string()
        ]));
    };
    let rows = run_sweep(spec).map_err(AppError::from)?;
    let dir = Path::new(&resolved.out_dir);
    let Formats { csv, svg, json } = resolved.formats;
    if csv {
        let path = write_atomic(dir, "sweep.csv", &sweep_csv(spec.axis, &rows))?;
        println!("wrote {}", path.display());
    }
    if svg {
        let energy = sweep_svg(spec.axis, &rows, ChartKind::Energy);
        let utility = sweep_svg(spec.axis, &rows, ChartKind::Utility);
        let path = write_atomic(dir, "sweep_energy.svg", &energy)?;
        println!("wrote {}", path.display());
        let path = write_atomic(dir, "sweep_utility.svg", &utility)?;
        println!("wrote {}", path.display());
    }
    if json {
        let text = serde_json::to_string_pretty(&rows).expect("rows serialize");
        let path = write_atomic(dir, "sweep.json", &text)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

pub fn cmd_population(resolved: &Resolved) -> Result<(), AppError> {
    let Some(spec) = &resolved.population else {
        return Err(AppError::Validation(vec![
            "the config has no population section".to_string()
        ]));
    };
    let (summary, agents) = run_population(spec).map_err(AppError::from)?;
    let dir = Path::new(&resolved.out_dir);
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    let path = write_atomic(dir, "population_summary.json", &json)?;
    println!("wrote {}", path.display());
    let path = write_atomic(dir, "population_agents.csv", &agents_csv(&agents))?;
    println!("wrote {}", path.display());
    Ok(())
}

const FN_USAGE: &str = "usage: sigspend fn <name> <args>\n  fn q <t>                  standard normal tail probability\n  fn omega <x>              Wright Omega: the w > 0 with log w + w = x\n  fn chernoff <p0> <p1>     Chernoff information of two comma-separated mass lists";

pub fn cmd_fn(name: &str, args: &[String]) -> Result<(), AppError> {
    let bad_usage = |msg: String| AppError::Usage(format!("{msg}\n{FN_USAGE}"));
    let one_number = |args: &[String]| -> Result<f64, AppError> {
        if args.len() != 1 {
            return Err(bad_usage(format!("fn {name} takes exactly one argument")));
        }
        args[0]
            .parse::<f64>()
            .map_err(|_| bad_usage(format!("could not parse '{}' as a number", args[0])))
    };
    let value = match name {
        "q" => q_function(one_number(args)?).map_err(AppError::from)?,
        "omega" => wright_omega(one_number(args)?).map_err(AppError::from)?,
        "chernoff" => {
            if args.len() != 2 {
                return Err(bad_usage(
                    "fn chernoff takes two comma-separated mass lists".to_string(),
                ));
            }
            let parse_list = |text: &str| -> Result<Vec<f64>, AppError> {
                text.split(',')
                    .map(|piece| {
                        piece
                            .trim()
                            .parse::<f64>()
                            .map_err(|_| bad_usage(format!("could not parse '{piece}' as a mass")))
                    })
                    .collect()
            };
            let p0 = parse_list(&args[0])?;
            let p1 = parse_list(&args[1])?;
            chernoff_information(&p0, &p1).map_err(AppError::from)?
        }
        other => {
            return Err(bad_usage(format!("unknown function '{other}'")));
        }
    };
    println!("{}", fmt_sig(value, 15));
    Ok(())
}

/// Writes through a temp file in the same directory, then renames into
/// place, so readers never observe a half-written file.
fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, AppError> {
    let io = |e: std::io::Error| AppError::Io(format!("writing {}: {e}", dir.join(name).display()));
    fs::create_dir_all(dir).map_err(io)?;
    let tmp = dir.join(format!(".tmp.{name}"));
    fs::write(&tmp, contents).map_err(io)?;
    let path = dir.join(name);
    fs::rename(&tmp, &path).map_err(io)?;
    Ok(path)
}
