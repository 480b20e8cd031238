use clap::{Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use qsnn_core::neuron::{evaluate_neuron, HierarchyFloors};
use qsnn_core::params::{detuning_report, pythagorean_triples, solve_exc, solve_final_beta, solve_phase, GammaMode};
use qsnn_core::ExcNeuronParams;

use crate::flags::{exchange_scale, ExchangeArg, KindArg, ParamFlags, ParityArg};
use crate::report::RunReport;
use crate::{describe, Context, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GammaArg {
    /// γ = 1, requires a Pythagorean pair
    Unity,
    /// γ from the phase-matching integer s
    General,
}

#[derive(Debug, Subcommand)]
pub enum ParamsCommand {
    /// Excitation neuron couplings from integer (k, l)
    SolveExc {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        l: i64,
        #[arg(long, default_value_t = 1.0)]
        amplitude: f64,
        #[arg(long, value_enum, default_value_t = GammaArg::Unity)]
        gamma_mode: GammaArg,
        /// required with --gamma-mode general
        #[arg(long, allow_negative_numbers = true)]
        s: Option<i64>,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        sign: i32,
    },
    /// Phase neuron couplings and hierarchy checks
    SolvePhase {
        #[arg(long)]
        m: f64,
        #[arg(long)]
        n: f64,
        #[arg(long, default_value_t = 1.0)]
        amplitude: f64,
        #[arg(long, value_enum, default_value_t = ExchangeArg::Doubled)]
        exchange: ExchangeArg,
    },
    /// Final-layer β and J from the phase-matching conditions
    SolveFinal {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long)]
        l: i64,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long, value_enum)]
        k_parity: ParityArg,
        #[arg(long, default_value_t = 1.0)]
        amplitude: f64,
    },
    /// Detuning-to-drive ratios of the off-resonant transitions
    Detuning {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        params: ParamFlags,
    },
    /// Pythagorean triples (a, b, c) with c ≤ max-l
    Triples {
        #[arg(long, default_value_t = 30)]
        max_l: u64,
        /// also evaluate the excitation neuron for (k, l) = (a, c) and (b, c)
        #[arg(long)]
        evaluate: bool,
    },
}

pub fn run(ctx: &Context, command: &ParamsCommand, report: &mut RunReport) -> Result<(), Failure> {
    match *command {
        ParamsCommand::SolveExc { k, l, amplitude, gamma_mode, s, sign } => {
            let mode = match gamma_mode {
                GammaArg::Unity => GammaMode::Unity,
                GammaArg::General => GammaMode::General {
                    s: s.ok_or_else(|| Failure::Validation("--gamma-mode general requires --s".into()))?,
                    sign,
                },
            };
            let p = solve_exc(k, l, amplitude, mode)?;
            report.parameters = json!({ "k": k, "l": l, "amplitude": amplitude, "gamma_mode": mode });
            report.results = describe(&p.into())?;
            if let Err(e) = p.validate() {
                report.warnings.push(e.to_string());
            }
        }
        ParamsCommand::SolvePhase { m, n, amplitude, exchange } => {
            let (p, warnings) = solve_phase(m, n, amplitude, HierarchyFloors::default(), exchange_scale(exchange))?;
            report.parameters = json!({ "m": m, "n": n, "amplitude": amplitude, "exchange": p.exchange });
            report.results = describe(&p.into())?;
            report.warnings.extend(warnings);
        }
        ParamsCommand::SolveFinal { gamma, l, s, k_parity, amplitude } => {
            let sol = solve_final_beta(gamma, l, s, k_parity.value(), amplitude)?;
            report.parameters =
                json!({ "gamma": gamma, "l": l, "s": s, "parity_k": k_parity.value(), "amplitude": amplitude });
            report.results = json!(sol);
        }
        ParamsCommand::Detuning { kind, ref params } => {
            let p = params.resolve(kind)?;
            let r = detuning_report(&p)?;
            report.parameters = json!({ "kind": p.kind(), "params": p });
            report.results = json!({
                "ratios": r.ratios,
                "min_ratio": r.min_ratio(),
                "violation": p.validate().err().map(|e| e.to_string()),
            });
        }
        ParamsCommand::Triples { max_l, evaluate } => {
            if max_l > 100_000 {
                return Err(Failure::Validation(format!("--max-l {max_l} is too large (limit 100000)")));
            }
            let triples = pythagorean_triples(max_l);
            report.parameters = json!({ "max_l": max_l });
            report.results = json!({ "triples": triples });
            if evaluate {
                let points: Vec<(u64, u64)> = triples.iter().flat_map(|&(a, b, c)| [(a, c), (b, c)]).collect();
                let rows: Vec<_> = points
                    .par_iter()
                    .map(|&(k, l)| {
                        let p = ExcNeuronParams::new(k as f64, l as f64);
                        match p.validate() {
                            Err(e) => json!({ "k": k, "l": l, "error": e.to_string() }),
                            Ok(()) => match evaluate_neuron(&p.into(), ctx.tol) {
                                Ok(f) => json!({ "k": k, "l": l, "f_avg": f.f_avg, "leakage": f.leakage }),
                                Err(e) => json!({ "k": k, "l": l, "error": e.to_string() }),
                            },
                        }
                    })
                    .collect();
                report.results["excitation"] = json!(rows);
            }
        }
    }
    Ok(())
}
