use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use qsnn_core::network::{
    back_action, bell_kernel, template, NetworkInput, NetworkParams, Outcome, PreparedNetwork, RunMode,
    TemplateKind,
};
use qsnn_core::quantum::{measure, DEGENERATE_PROBABILITY};
use qsnn_core::{BellAmplitudes, BellLabel, NetworkSpec};

use crate::report::RunReport;
use crate::{Context, Failure};

#[derive(Debug, Subcommand)]
pub enum NetworkCommand {
    /// Run a network on Bell-pair inputs
    Run(RunArgs),
    /// Print a built-in network as a spec document (not wrapped in a report)
    Template {
        #[arg(value_enum)]
        kind: TemplateArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TemplateArg {
    Full,
    Reduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Embedded,
    Full,
    Ideal,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["template", "spec"]))]
pub struct RunArgs {
    /// built-in network
    #[arg(long, value_enum)]
    template: Option<TemplateArg>,
    /// network spec document (JSON)
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Bell inputs "A,B"; join labels with '&' for equal superpositions, e.g. "Psi+&Phi-,Phi+"
    #[arg(long)]
    input: Option<String>,
    /// override the network's run mode
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// run all 16 pure Bell-pair inputs
    #[arg(long)]
    truth_table: bool,
    /// report the post-measurement input register for each outcome
    #[arg(long)]
    back_action: bool,
}

fn template_kind(arg: TemplateArg) -> TemplateKind {
    match arg {
        TemplateArg::Full => TemplateKind::Full,
        TemplateArg::Reduced => TemplateKind::Reduced,
    }
}

/// Parses "A,B" where each side is one label or several joined by '&'.
pub fn parse_input(text: &str) -> Result<(BellAmplitudes, BellAmplitudes), Failure> {
    let sides: Vec<&str> = text.split(',').collect();
    if sides.len() != 2 {
        return Err(Failure::Validation(format!("--input needs two comma-separated sides, got '{text}'")));
    }
    let side = |s: &str| -> Result<BellAmplitudes, Failure> {
        let labels = s.split('&').map(str::parse::<BellLabel>).collect::<Result<Vec<_>, _>>()?;
        Ok(BellAmplitudes::superposition(&labels)?)
    };
    Ok((side(sides[0])?, side(sides[1])?))
}

fn load_spec(args: &RunArgs) -> Result<NetworkSpec, Failure> {
    let mut spec = match (&args.template, &args.spec) {
        (Some(kind), None) => template(template_kind(*kind), &NetworkParams::default())?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))?;
            NetworkSpec::from_json(&text)?
        }
        _ => return Err(Failure::Validation("pass exactly one of --template, --spec".into())),
    };
    if let Some(mode) = args.mode {
        spec.run_mode = match mode {
            ModeArg::Embedded => RunMode::EmbeddedUnitary,
            ModeArg::Full => RunMode::FullDynamics,
            ModeArg::Ideal => RunMode::IdealUnitary,
        };
    }
    Ok(spec)
}

pub fn template_document(kind: TemplateArg) -> Result<String, Failure> {
    Ok(template(template_kind(kind), &NetworkParams::<f64>::default())?.to_json()?)
}

pub fn run(ctx: &Context, command: &NetworkCommand, report: &mut RunReport) -> Result<(), Failure> {
    match command {
        NetworkCommand::Template { kind } => {
            report.parameters = serde_json::from_str(&template_document(*kind)?)?;
            Ok(())
        }
        NetworkCommand::Run(args) => run_network(ctx, args, report),
    }
}

fn run_network(ctx: &Context, args: &RunArgs, report: &mut RunReport) -> Result<(), Failure> {
    if args.input.is_none() && !args.truth_table {
        return Err(Failure::Validation("nothing to run: pass --input and/or --truth-table".into()));
    }
    if args.back_action && args.input.is_none() {
        return Err(Failure::Validation("--back-action requires --input".into()));
    }
    let inputs = args.input.as_deref().map(parse_input).transpose()?;
    let spec = load_spec(args)?;
    report.parameters = serde_json::from_str(&spec.to_json()?)?;
    let net = PreparedNetwork::new(spec, ctx.tol)?;
    let mut results = json!({});

    if let Some((a, b)) = inputs {
        let psi = net.run(&NetworkInput::Bell(a, b))?;
        let m = measure(&psi, net.spec().output_qubit)?;
        let mut single = json!({
            "input": { "a": a, "b": b },
            "p_up": m.p_up,
            "p_down": m.p_down,
            "kernel": bell_kernel(&a, &b)?,
        });
        if args.back_action {
            let mut branches = Vec::new();
            for outcome in [Outcome::Up, Outcome::Down] {
                let p = if outcome == Outcome::Up { m.p_up } else { m.p_down };
                if p < DEGENERATE_PROBABILITY {
                    continue;
                }
                let ba = back_action(&psi, net.spec(), outcome, Some((&a, &b)))?;
                branches.push(json!({
                    "outcome": ba.outcome,
                    "probability": ba.probability,
                    "branch_overlap": ba.branch_overlap,
                    "branch_support": ba.branch_support,
                }));
            }
            single["back_action"] = Value::Array(branches);
        }
        results["run"] = single;
    }

    if args.truth_table {
        let pairs: Vec<(BellLabel, BellLabel)> =
            BellLabel::ALL.iter().flat_map(|&a| BellLabel::ALL.iter().map(move |&b| (a, b))).collect();
        let rows = pairs
            .par_iter()
            .map(|&(a, b)| net.output_probability(&NetworkInput::pure(a, b)).map(|p| (a, b, p)))
            .collect::<Result<Vec<_>, _>>()?;
        let min_diagonal = rows.iter().filter(|r| r.0 == r.1).map(|r| r.2).fold(f64::INFINITY, f64::min);
        let max_off_diagonal = rows.iter().filter(|r| r.0 != r.1).map(|r| r.2).fold(0.0, f64::max);
        results["truth_table"] = json!({
            "rows": rows.iter().map(|(a, b, p)| json!({"a": a.to_string(), "b": b.to_string(), "p_up": p})).collect::<Vec<_>>(),
            "min_diagonal": min_diagonal,
            "max_off_diagonal": max_off_diagonal,
        });
    }
    report.results = results;
    Ok(())
}
