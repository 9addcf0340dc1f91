//! Monte Carlo driver for the measure-then-interfere search and its
//! classical and Grover baselines.
//!
//! One trial runs the full procedure once:
//!
//! 1. prepare the uniform superposition on X with the flag at `|0>`;
//! 2. apply `Uc` (one oracle call);
//! 3. measure the flag. On 1 the X register holds solutions and is measured
//!    directly. On 0 the collapsed `X~` goes through the selected
//!    interference mode (one attempt) and, if that heralds success, the
//!    resulting Z register is measured.
//!
//! A trial is `succeeded` when it ends with a measured value that satisfies
//! the predicate. Every trial draws from its own stream keyed by
//! `(seed, trial_index)`, so the trial loop runs in parallel and still
//! produces identical reports for identical inputs.

use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interference::{ideal_interfere, InterferenceMode, SubtractionCircuit};
use crate::limits::Limits;
use crate::oracle::{grover_success_probability, optimal_grover_iterations, Oracle};
use crate::predicate::{enumerate_solutions, evaluate, PredicateAst};
use crate::report::{opt_real, write_csv, write_json, ReportFormat, SCHEMA_VERSION};
use crate::rng::trial_stream;
use crate::statevec::{measure_flag, sample_basis, uniform_superposition, RegisterLayout};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub flag_outcome: u8,
    /// Measured value, present only when it satisfies the predicate.
    pub solution_found: Option<u64>,
    pub oracle_calls: u64,
    pub interference_attempts: u64,
    pub succeeded: bool,
    /// The interference step heralded success (always true for ideal
    /// rejection with at least one solution). Not part of the CSV schema.
    pub interference_heralded: bool,
}

pub const TRIAL_CSV_HEADER: [&str; 6] =
    ["trial_index", "flag_outcome", "solution_found", "oracle_calls", "interference_attempts", "succeeded"];

impl TrialRecord {
    fn csv_row(&self) -> Vec<String> {
        vec![
            self.trial_index.to_string(),
            self.flag_outcome.to_string(),
            self.solution_found.map(|x| x.to_string()).unwrap_or_default(),
            self.oracle_calls.to_string(),
            self.interference_attempts.to_string(),
            self.succeeded.to_string(),
        ]
    }
}

/// Aggregate statistics for one experiment. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub predicate: String,
    pub k: u32,
    pub n: u64,
    pub trials: u64,
    pub seed: u64,
    pub mode: InterferenceMode,
    #[serde(serialize_with = "crate::report::real")]
    pub empirical_p_flag1: f64,
    #[serde(serialize_with = "crate::report::real")]
    pub expected_p_flag1: f64,
    #[serde(serialize_with = "opt_real")]
    pub mean_oracle_calls_per_success: Option<f64>,
    #[serde(serialize_with = "opt_real")]
    pub mean_interference_attempts_per_success: Option<f64>,
    #[serde(serialize_with = "opt_real")]
    pub classical_expected_checks: Option<f64>,
    pub grover_optimal_iterations: Option<u64>,
    #[serde(serialize_with = "opt_real")]
    pub grover_success_probability: Option<f64>,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

impl ExperimentReport {
    pub fn flag1_count(&self) -> u64 {
        self.records.iter().filter(|r| r.flag_outcome == 1).count() as u64
    }

    pub fn successes(&self) -> u64 {
        self.records.iter().filter(|r| r.succeeded).count() as u64
    }

    pub fn interference_attempts(&self) -> u64 {
        self.records.iter().map(|r| r.interference_attempts).sum()
    }

    pub fn interference_heralds(&self) -> u64 {
        self.records.iter().filter(|r| r.interference_heralded).count() as u64
    }
}

/// Expected probes for uniform random search without replacement:
/// `(2^k + 1) / (n + 1)`.
pub fn classical_expected_checks(n: u64, k: u32) -> Option<f64> {
    (n > 0).then(|| ((1u64 << k) as f64 + 1.0) / (n as f64 + 1.0))
}

fn validate_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        Err(Error::InvalidTrialCount)
    } else {
        Ok(())
    }
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

/// Runs `trials` independent executions of the three-step procedure.
pub fn run_paper_algorithm(
    ast: &PredicateAst,
    k: u32,
    mode: InterferenceMode,
    trials: u64,
    seed: u64,
    limits: &Limits,
) -> Result<ExperimentReport> {
    validate_trials(trials)?;
    let layout = RegisterLayout::with_flag(k, limits)?;
    let register = RegisterLayout::register(k, limits)?;
    let oracle = Oracle::compile(ast, k, limits)?;
    let n = oracle.n() as u64;

    let records = (0..trials)
        .into_par_iter()
        .map(|trial_index| {
            let mut rng = trial_stream(seed, trial_index);
            let prepared = uniform_superposition::<f64>(layout);
            let entangled = oracle.apply_uc(&prepared)?;
            let flag = measure_flag(&entangled, &mut rng)?;

            let mut record = TrialRecord {
                trial_index,
                flag_outcome: flag.observed_bit,
                solution_found: None,
                oracle_calls: 1,
                interference_attempts: 0,
                succeeded: false,
                interference_heralded: false,
            };
            let measured = if flag.observed_bit == 1 {
                Some(sample_basis(&flag.posterior, &mut rng))
            } else {
                record.interference_attempts = 1;
                let x_tilde = flag.posterior;
                debug_assert_eq!(*x_tilde.layout(), register);
                match mode {
                    InterferenceMode::IdealRejection => match ideal_interfere(&x_tilde, k) {
                        Ok(z) => {
                            record.interference_heralded = true;
                            Some(sample_basis(&z, &mut rng))
                        }
                        Err(Error::ZeroResidual) => None,
                        Err(e) => return Err(e),
                    },
                    InterferenceMode::PostselectedSubtraction => {
                        let outcome = SubtractionCircuit::prepare(&oracle, &x_tilde)?.attempt(&mut rng);
                        record.interference_heralded = outcome.succeeded;
                        outcome.result.map(|z| sample_basis(&z, &mut rng))
                    }
                }
            };
            if let Some(x) = measured {
                let x = x as u64;
                if evaluate(ast, x) {
                    record.solution_found = Some(x);
                    record.succeeded = true;
                }
            }
            Ok(record)
        })
        .collect::<Result<Vec<_>>>()?;

    let flag1 = records.iter().filter(|r| r.flag_outcome == 1).count() as u64;
    let successes = records.iter().filter(|r| r.succeeded).count() as u64;
    let oracle_calls: u64 = records.iter().map(|r| r.oracle_calls).sum();
    let attempts: u64 = records.iter().map(|r| r.interference_attempts).sum();
    let heralds = records.iter().filter(|r| r.interference_heralded).count() as u64;
    let grover_optimal_iterations = optimal_grover_iterations(n, k).ok();

    Ok(ExperimentReport {
        schema_version: SCHEMA_VERSION,
        predicate: ast.source(),
        k,
        n,
        trials,
        seed,
        mode,
        empirical_p_flag1: flag1 as f64 / trials as f64,
        expected_p_flag1: n as f64 / (1u64 << k) as f64,
        mean_oracle_calls_per_success: ratio(oracle_calls, successes),
        mean_interference_attempts_per_success: ratio(attempts, heralds),
        classical_expected_checks: classical_expected_checks(n, k),
        grover_optimal_iterations,
        grover_success_probability: grover_optimal_iterations.map(|j| grover_success_probability(n, k, j)),
        records,
    })
}

/// One classical search: probe distinct values in uniformly random order
/// until a solution turns up or the range is exhausted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassicalRun {
    pub run_index: u64,
    pub checks: u64,
    pub solution: Option<u64>,
}

pub fn classical_search<R: Rng + ?Sized>(ast: &PredicateAst, k: u32, rng: &mut R) -> (u64, Option<u64>) {
    let size = 1u64 << k;
    let mut order: Vec<u64> = (0..size).collect();
    for i in 0..size {
        let j = rng.random_range(i..size);
        order.swap(i as usize, j as usize);
        let candidate = order[i as usize];
        if evaluate(ast, candidate) {
            return (i + 1, Some(candidate));
        }
    }
    (size, None)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalReport {
    pub schema_version: u32,
    pub predicate: String,
    pub k: u32,
    pub n: u64,
    pub runs: u64,
    pub seed: u64,
    #[serde(serialize_with = "crate::report::real")]
    pub mean_checks: f64,
    #[serde(serialize_with = "crate::report::real")]
    pub std_error: f64,
    #[serde(serialize_with = "opt_real")]
    pub expected_checks: Option<f64>,
    #[serde(skip)]
    pub records: Vec<ClassicalRun>,
}

pub const CLASSICAL_CSV_HEADER: [&str; 3] = ["run_index", "checks", "solution"];

pub fn run_classical(ast: &PredicateAst, k: u32, runs: u64, seed: u64, limits: &Limits) -> Result<ClassicalReport> {
    validate_trials(runs)?;
    let n = enumerate_solutions(ast, k, limits)?.n() as u64;
    let records: Vec<ClassicalRun> = (0..runs)
        .into_par_iter()
        .map(|run_index| {
            let (checks, solution) = classical_search(ast, k, &mut trial_stream(seed, run_index));
            ClassicalRun { run_index, checks, solution }
        })
        .collect();
    let count = runs as f64;
    let mean = records.iter().map(|r| r.checks as f64).sum::<f64>() / count;
    let var = if runs > 1 {
        records.iter().map(|r| (r.checks as f64 - mean).powi(2)).sum::<f64>() / (count - 1.0)
    } else {
        0.0
    };
    Ok(ClassicalReport {
        schema_version: SCHEMA_VERSION,
        predicate: ast.source(),
        k,
        n,
        runs,
        seed,
        mean_checks: mean,
        std_error: (var / count).sqrt(),
        expected_checks: classical_expected_checks(n, k),
        records,
    })
}

/// Both interference modes side by side with verified baselines.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub ideal: ExperimentReport,
    pub postselected: ExperimentReport,
    pub classical: ClassicalReport,
    /// Grover success probability at the optimal iteration count, from
    /// simulating the iterations rather than the closed form.
    pub grover_simulated_success_probability: f64,
}

impl Comparison {
    pub fn reports(&self) -> [&ExperimentReport; 2] {
        [&self.ideal, &self.postselected]
    }
}

pub fn run_comparison(ast: &PredicateAst, k: u32, trials: u64, seed: u64, limits: &Limits) -> Result<Comparison> {
    validate_trials(trials)?;
    let oracle = Oracle::compile(ast, k, limits)?;
    let n = oracle.n() as u64;
    let iterations = optimal_grover_iterations(n, k)?;

    let mut state = uniform_superposition::<f64>(RegisterLayout::register(k, limits)?);
    for _ in 0..iterations {
        state = oracle.grover_step(&state)?;
    }
    let grover_simulated_success_probability = oracle.marked_mass(&state)?;

    Ok(Comparison {
        ideal: run_paper_algorithm(ast, k, InterferenceMode::IdealRejection, trials, seed, limits)?,
        postselected: run_paper_algorithm(ast, k, InterferenceMode::PostselectedSubtraction, trials, seed, limits)?,
        classical: run_classical(ast, k, trials, seed, limits)?,
        grover_simulated_success_probability,
    })
}

/// Writes a report: the JSON summary object, or one CSV row per trial.
pub fn emit_report<W: Write + ?Sized>(report: &ExperimentReport, format: ReportFormat, sink: &mut W) -> Result<()> {
    match format {
        ReportFormat::Json => write_json(report, sink),
        ReportFormat::Csv => write_csv(sink, &TRIAL_CSV_HEADER, report.records.iter().map(TrialRecord::csv_row)),
    }
}

/// Both mode reports: a JSON array of two report objects (ideal first), or
/// the two trial tables under one header, ideal rows first.
pub fn emit_comparison<W: Write + ?Sized>(cmp: &Comparison, format: ReportFormat, sink: &mut W) -> Result<()> {
    match format {
        ReportFormat::Json => write_json(&cmp.reports(), sink),
        ReportFormat::Csv => write_csv(
            sink,
            &TRIAL_CSV_HEADER,
            cmp.reports().into_iter().flat_map(|r| r.records.iter().map(TrialRecord::csv_row)),
        ),
    }
}

pub fn emit_classical<W: Write + ?Sized>(report: &ClassicalReport, format: ReportFormat, sink: &mut W) -> Result<()> {
    match format {
        ReportFormat::Json => write_json(report, sink),
        ReportFormat::Csv => write_csv(
            sink,
            &CLASSICAL_CSV_HEADER,
            report.records.iter().map(|r| {
                vec![r.run_index.to_string(), r.checks.to_string(), r.solution.map(|x| x.to_string()).unwrap_or_default()]
            }),
        ),
    }
}
