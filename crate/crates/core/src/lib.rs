//! State-vector simulation of a three-step "measure, then interfere" search
//! over single-variable integer predicates, with Grover and classical
//! baselines and a certificate about the interference step.
//!
//! The numerical core ([`statevec`], [`oracle`], [`interference`]) is generic
//! over the amplitude scalar through [`Real`]; the aliases below fix it to
//! `f64` (the contractual precision) or `f32`. The harness works in `f64`.

pub mod error;
pub mod harness;
pub mod interference;
pub mod limits;
pub mod oracle;
pub mod predicate;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod statevec;

pub use error::{Error, Result};
pub use harness::{
    emit_classical, emit_comparison, emit_report, run_classical, run_comparison, run_paper_algorithm,
    ClassicalReport, Comparison, ExperimentReport, TrialRecord,
};
pub use interference::{
    ideal_interfere, postselected_subtract, singleton_witnesses, unitarity_witness, InterferenceMode,
    SubtractionCircuit, SubtractionOutcome, WitnessReport,
};
pub use limits::Limits;
pub use oracle::{
    apply_uc, branch_amplitudes, grover_step, grover_success_probability, optimal_grover_iterations,
    phase_oracle, BranchAmplitudes, Oracle,
};
pub use predicate::{enumerate_solutions, evaluate, parse, PredicateAst, SolutionSet};
pub use report::{emit_witnesses, ReportFormat};
pub use scalar::Real;
pub use statevec::{
    inner_product, measure_flag, rejection, sample_basis, uniform_superposition, Amplitude,
    MeasurementOutcome, RegisterLayout, StateVector,
};

pub type Amplitude64 = Amplitude<f64>;
pub type Amplitude32 = Amplitude<f32>;
pub type StateVector64 = StateVector<f64>;
pub type StateVector32 = StateVector<f32>;
pub type MeasurementOutcome64 = MeasurementOutcome<f64>;
pub type BranchAmplitudes64 = BranchAmplitudes<f64>;
pub type SubtractionOutcome64 = SubtractionOutcome<f64>;
pub type WitnessReport64 = WitnessReport<f64>;
