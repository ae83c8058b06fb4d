//! Implementations of the five subcommands.

use logcurve::arith::parse::parse_form;
use logcurve::arith::rat::{parse_rat, rat_to_string};
use logcurve::arith::residue::residue_at;
use logcurve::arith::series::PointOnLine;
use logcurve::cohomology::{h1_log_basis, normalize_cocycle, UnitAssignment};
use logcurve::graph::LogCurveModel;
use logcurve::io::{
    cocycle_from_spec, model_to_spec, parse_spec, spec_to_model, to_json_string, CurveSpecFile,
};
use logcurve::monodromy::monodromy_apply;
use logcurve::report::{build_report, report_to_json, VerifyOptions};

use crate::{family, Cli};

/// An error with the exit code it should produce: 1 for verification
/// failures, 2 for input/parse problems.
pub struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 1,
        }
    }

    pub fn message(&self) -> &str {
        &self.message
    }

    pub fn exit_code(&self) -> u8 {
        self.code
    }
}

fn load_curve(cli: &Cli) -> Result<(CurveSpecFile, LogCurveModel), CliError> {
    let text = cli.read_input()?;
    let spec = parse_spec(&text).map_err(|e| CliError::input(e.to_string()))?;
    let model = spec_to_model(&spec).map_err(|e| CliError::input(e.to_string()))?;
    Ok((spec, model))
}

pub fn generate(cli: &Cli, family_name: &str, seed: u64) -> Result<(), CliError> {
    let model = family::build(family_name, seed).map_err(CliError::input)?;
    cli.write_output(&to_json_string(&model_to_spec(&model)))
}

pub fn report(cli: &Cli) -> Result<(), CliError> {
    let (_, model) = load_curve(cli)?;
    let report = build_report(&model, &VerifyOptions::default());
    let text = if cli.json {
        report_to_json(&report)
    } else {
        format!("{report}\n")
    };
    cli.write_output(&text)?;
    if report.pass {
        Ok(())
    } else {
        Err(CliError::verification("one or more verdicts failed"))
    }
}

pub fn residue(cli: &Cli, form: &str, point: &str) -> Result<(), CliError> {
    let omega = parse_form(form).map_err(|e| CliError::input(e.to_string()))?;
    let at = if point.trim() == "inf" {
        PointOnLine::Infinity
    } else {
        PointOnLine::Finite(
            parse_rat(point.trim())
                .map_err(|e| CliError::input(format!("bad point {point:?}: {e}")))?,
        )
    };
    let r = rat_to_string(&residue_at(&omega, &at));
    let text = if cli.json {
        format!("{}\n", serde_json::json!({ "residue": r }))
    } else {
        format!("{r}\n")
    };
    cli.write_output(&text)
}

pub fn class(cli: &Cli) -> Result<(), CliError> {
    let (spec, model) = load_curve(cli)?;
    if spec.cocycles.is_empty() {
        return Err(CliError::input(
            "the input file has no \"cocycles\" to classify",
        ));
    }
    let basis = h1_log_basis(&model);
    let units = UnitAssignment::trivial();
    let labels = basis.labels(&model);

    let mut entries = Vec::new();
    for (i, cspec) in spec.cocycles.iter().enumerate() {
        let c = cocycle_from_spec(&model, cspec)
            .map_err(|e| CliError::input(format!("cocycle {}: {e}", i + 1)))?;
        let coords = normalize_cocycle(&model, &basis, &c, &units)
            .map_err(|e| CliError::input(format!("cocycle {}: {e}", i + 1)))?;
        let image = monodromy_apply(&model, &basis, &c)
            .map_err(|e| CliError::input(format!("cocycle {}: {e}", i + 1)))?;
        entries.push((coords, image));
    }

    let text = if cli.json {
        let cocycles: Vec<serde_json::Value> = entries
            .iter()
            .map(|(coords, image)| {
                serde_json::json!({
                    "class": coords.iter().map(rat_to_string).collect::<Vec<_>>(),
                    "monodromy_image": image.iter().map(rat_to_string).collect::<Vec<_>>(),
                })
            })
            .collect();
        format!(
            "{}\n",
            serde_json::to_string_pretty(&serde_json::json!({
                "basis_labels": labels,
                "cocycles": cocycles,
            }))
            .expect("plain data serializes")
        )
    } else {
        let vec_str = |v: &[logcurve::Rat]| {
            let inner: Vec<String> = v.iter().map(rat_to_string).collect();
            format!("[{}]", inner.join(", "))
        };
        let mut out = format!(
            "basis: {}\n",
            if labels.is_empty() {
                "(none)".to_string()
            } else {
                labels.join(", ")
            }
        );
        for (i, (coords, image)) in entries.iter().enumerate() {
            out.push_str(&format!(
                "\ncocycle {}\n  class:           {}\n  monodromy image: {}\n",
                i + 1,
                vec_str(coords),
                vec_str(image)
            ));
        }
        out
    };
    cli.write_output(&text)
}

pub fn verify(cli: &Cli, oracle: usize, flips: usize, units: u64) -> Result<(), CliError> {
    if oracle == 0 {
        return Err(CliError::input("--oracle must be at least 1"));
    }
    let (_, model) = load_curve(cli)?;
    let opts = VerifyOptions {
        oracle_depth: oracle,
        flip_rounds: flips,
        unit_seed: units,
    };
    let report = build_report(&model, &opts);
    let text = if cli.json {
        report_to_json(&report)
    } else {
        let full = report.to_string();
        let from = full.find("verdicts:").expect("report text lists verdicts");
        format!("{}\n", &full[from..])
    };
    cli.write_output(&text)?;
    if report.pass {
        Ok(())
    } else {
        Err(CliError::verification("one or more verdicts failed"))
    }
}
