//! `qsub`: reproducible experiments for measure-then-interfere search.
//!
//! Exit status: 0 on success, 2 on usage errors (bad flags, unparsable
//! predicate, bad `QSUB_MAX_BITS`), 1 on runtime errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qsub_core::{
    emit_classical, emit_comparison, emit_report, emit_witnesses, parse, run_classical, run_comparison,
    run_paper_algorithm, singleton_witnesses, unitarity_witness, Error, InterferenceMode, Limits, PredicateAst,
    ReportFormat, SolutionSet,
};

#[derive(Debug, Parser)]
#[command(name = "qsub", version, about = "Measure-then-interfere search experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the three-step algorithm under one interference mode.
    Run(RunArgs),
    /// Run both interference modes next to the classical and Grover baselines.
    Compare(ExperimentArgs),
    /// Check whether a fixed unitary could implement the interference step.
    Certify(CertifyArgs),
    /// Random classical search without replacement; reports checks performed.
    SolveClassical(ExperimentArgs),
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// Condition defining a solution, e.g. "x*x - 4 = 0".
    #[arg(long)]
    predicate: String,
    /// Width k of the X register.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    bits: u32,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    experiment: ExperimentArgs,
    /// `ideal` (rejection) or `postselected` (ancilla subtraction).
    #[arg(long, default_value = "ideal")]
    mode: InterferenceMode,
}

#[derive(Debug, Args)]
struct CertifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    bits: u32,
    /// Two singleton solution sets `a,b`; all pairs are scanned when omitted.
    #[arg(long, value_parser = parse_pair)]
    pair: Option<(u64, u64)>,
    #[command(flatten)]
    output: OutputArgs,
}

fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((num(a)?, num(b)?))
}

enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

fn predicate(text: &str) -> Result<PredicateAst, Failure> {
    parse(text).map_err(|e| Failure::Usage(format!("invalid predicate {text:?}: {e}")))
}

fn with_sink(out: &Option<PathBuf>, write: impl FnOnce(&mut dyn Write) -> qsub_core::Result<()>) -> Result<(), Failure> {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(Error::from)?;
            let mut sink = BufWriter::new(file);
            write(&mut sink)?;
        }
        None => {
            let stdout = io::stdout();
            let mut sink = stdout.lock();
            write(&mut sink)?;
        }
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<(), Failure> {
    let limits = Limits::from_env().map_err(|e| Failure::Usage(e.to_string()))?;
    match cli.command {
        Command::Run(args) => {
            let ex = &args.experiment;
            let ast = predicate(&ex.predicate)?;
            let report = run_paper_algorithm(&ast, ex.bits, args.mode, ex.trials, ex.seed, &limits)?;
            with_sink(&ex.output.out, |w| emit_report(&report, ex.output.format, w))
        }
        Command::Compare(ex) => {
            let ast = predicate(&ex.predicate)?;
            let cmp = run_comparison(&ast, ex.bits, ex.trials, ex.seed, &limits)?;
            with_sink(&ex.output.out, |w| emit_comparison(&cmp, ex.output.format, w))
        }
        Command::SolveClassical(ex) => {
            let ast = predicate(&ex.predicate)?;
            let report = run_classical(&ast, ex.bits, ex.trials, ex.seed, &limits)?;
            with_sink(&ex.output.out, |w| emit_classical(&report, ex.output.format, w))
        }
        Command::Certify(args) => {
            let reports = match args.pair {
                Some((a, b)) => {
                    let set_a = SolutionSet::from_members(args.bits, &limits, [a])?;
                    let set_b = SolutionSet::from_members(args.bits, &limits, [b])?;
                    vec![unitarity_witness::<f64>(args.bits, &set_a, &set_b)?]
                }
                None => singleton_witnesses::<f64>(args.bits, &limits)?,
            };
            with_sink(&args.output.out, |w| emit_witnesses(&reports, args.output.format, w))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
