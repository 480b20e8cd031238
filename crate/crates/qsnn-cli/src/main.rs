//! `qsnn`: simulate spin neurons, Bell-comparison networks and their parameter constraints.
//!
//! Every run prints one JSON report to stdout (and to `--out` when given). Exit status 0 on
//! success, 1 when a simulation fails, 2 when inputs fail validation.

mod flags;
mod network;
mod params;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qsnn_core::neuron::{evaluate_neuron, record_trajectory, spectrum_report, DEFAULT_SAMPLES};
use qsnn_core::params::{detuning_report, tune};
use qsnn_core::{BellLabel, NeuronParams, NeuronSpec, DEFAULT_TOL};

use flags::{KindArg, ParamFlags};
use report::RunReport;

#[derive(Debug, Parser)]
#[command(name = "qsnn", version, about = "Spiking quantum neurons on driven three-qubit spin systems")]
struct Cli {
    /// seed for every randomized step (tuner simplex orientation)
    #[arg(long, env = "QSNN_SEED", default_value_t = 0, global = true)]
    seed: u64,
    /// worker threads for scans and truth tables
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// integrator tolerance
    #[arg(long, default_value_t = DEFAULT_TOL, global = true)]
    tol: f64,
    /// also write the report to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate one neuron and report its fidelity
    Neuron(NeuronArgs),
    /// Build and run Bell-comparison networks
    Network {
        #[command(subcommand)]
        command: network::NetworkCommand,
    },
    /// Constraint solvers and parameter helpers
    Params {
        #[command(subcommand)]
        command: params::ParamsCommand,
    },
}

#[derive(Debug, Args)]
struct NeuronArgs {
    #[arg(value_enum)]
    kind: KindArg,
    #[command(flatten)]
    params: ParamFlags,
    /// write one trajectory CSV per Bell input into this directory
    #[arg(long)]
    traj: Option<PathBuf>,
    /// samples per trajectory
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// tune the parameters off the constraint manifold
    #[arg(long)]
    tune: bool,
    /// fidelity evaluations allowed for tuning
    #[arg(long, default_value_t = 300)]
    budget: usize,
}

/// Failure class, mapped onto the exit status.
#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Runtime(String),
}

impl From<qsnn_core::Error> for Failure {
    fn from(e: qsnn_core::Error) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Runtime(e.to_string())
        }
    }
}

impl From<qsnn_core::ParamError> for Failure {
    fn from(e: qsnn_core::ParamError) -> Self {
        Failure::Validation(format!("invalid parameters: {e}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(format!("i/o failure: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Runtime(format!("serialization failure: {e}"))
    }
}

pub struct Context {
    pub seed: u64,
    pub tol: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match run(cli, argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli, argv: Vec<String>) -> Result<(), Failure> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure::Validation("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Failure::Validation(format!("--tol must be positive (got {})", cli.tol)));
    }
    let ctx = Context { seed: cli.seed, tol: cli.tol };
    if let Command::Network { command: network::NetworkCommand::Template { kind } } = &cli.command {
        // bare document, so the output can be edited and fed back through --spec
        let text = network::template_document(*kind)?;
        if let Some(path) = &cli.out {
            std::fs::write(path, format!("{text}\n"))?;
        }
        return print(&text);
    }
    let start = Instant::now();
    let mut report = RunReport::new(argv, cli.seed);
    match cli.command {
        Command::Neuron(args) => cmd_neuron(&ctx, &args, &mut report)?,
        Command::Network { command } => network::run(&ctx, &command, &mut report)?,
        Command::Params { command } => params::run(&ctx, &command, &mut report)?,
    }
    if let Some(path) = &cli.out {
        report.artifacts.push(path.clone());
    }
    report.timing_seconds = start.elapsed().as_secs_f64();
    if let Some(path) = &cli.out {
        report.write(path)?;
    }
    print(&report.to_json()?)
}

fn print(text: &str) -> Result<(), Failure> {
    let mut stdout = std::io::stdout().lock();
    match writeln!(stdout, "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

/// Resolved parameters plus the derived couplings.
pub fn describe(params: &NeuronParams) -> Result<Value, Failure> {
    let derived = match params {
        NeuronParams::Excitation(p) => json!({
            "beta": p.beta(), "j": p.j(), "tau": p.tau(), "drive_frequency": p.drive_frequency(),
        }),
        NeuronParams::Phase(p) => json!({
            "j": p.j(), "delta": p.delta(), "tau": p.tau(), "hierarchy_ratio": p.hierarchy_ratio(),
        }),
        NeuronParams::Final(p) => json!({
            "beta": p.beta()?, "j": p.j()?, "tau": p.tau(), "effective_omega": p.effective_omega(),
        }),
    };
    Ok(json!({ "kind": params.kind(), "params": params, "derived": derived }))
}

fn cmd_neuron(ctx: &Context, args: &NeuronArgs, report: &mut RunReport) -> Result<(), Failure> {
    let params = args.params.resolve(args.kind)?;
    params.validate()?;
    report.parameters = describe(&params)?;
    report.warnings.extend(params.warnings());

    let fidelity = evaluate_neuron(&params, ctx.tol)?;
    let mut results = json!({
        "fidelity": fidelity,
        "spectrum": spectrum_report(&params)?,
        "detuning": detuning_report(&params)?,
    });

    if args.tune {
        if args.budget == 0 {
            return Err(Failure::Validation("--budget must be at least 1".into()));
        }
        let t = tune(&params, args.budget, ctx.seed, ctx.tol)?;
        results["tune"] = json!({
            "initial_fidelity": t.initial_fidelity,
            "final_fidelity": t.final_fidelity,
            "evaluations": t.evaluations,
            "status": t.status,
            "tuned": describe(&t.tuned)?,
        });
    }

    if let Some(dir) = &args.traj {
        std::fs::create_dir_all(dir)?;
        let spec = NeuronSpec::local(params)?;
        for label in BellLabel::ALL {
            let traj = record_trajectory(&spec, label, args.samples, ctx.tol)?;
            let path = dir.join(format!("{}_{}.csv", params.kind().slug(), label.slug()));
            traj.write_csv_file(&path)?;
            report.artifacts.push(path);
        }
    }
    report.results = results;
    Ok(())
}
