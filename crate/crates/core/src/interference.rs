//! Realizations of the interference step that turns the collapsed
//! non-solution register `X~` into a superposition of solutions.
//!
//! Two constructions are provided, plus a certificate about the step itself:
//!
//! * [`ideal_interfere`] rejects `X~` from a fresh uniform register `Z`. The
//!   result is exactly the uniform superposition of solutions, but computing
//!   the rejection coefficient `<X~|u>` needs `n`, which no fixed device has.
//! * [`postselected_subtract`] is a legal circuit: one ancilla in `|+>`
//!   selects between preparing `u` and `X~`, a second Hadamard interferes the
//!   two branches, and the ancilla is post-selected on `|1>`. The heralded
//!   branch is `(u - X~)/2`; its probability shrinks with `n / 2^k` and it
//!   keeps a small residue on non-solutions.
//! * [`unitarity_witness`] shows that no single unitary, chosen without
//!   knowing the solution set, can map every `X~` to its solution state:
//!   unitaries preserve inner products and these two families do not.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::Oracle;
use crate::predicate::{PredicateAst, SolutionSet};
use crate::scalar::Real;
use crate::statevec::{inner_product, rejection, uniform_superposition, RegisterLayout, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InterferenceMode {
    IdealRejection,
    PostselectedSubtraction,
}

impl InterferenceMode {
    pub const ALL: [InterferenceMode; 2] = [Self::IdealRejection, Self::PostselectedSubtraction];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::IdealRejection => "IDEAL_REJECTION",
            Self::PostselectedSubtraction => "POSTSELECTED_SUBTRACTION",
        }
    }
}

impl fmt::Display for InterferenceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InterferenceMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "ideal" | "ideal_rejection" => Ok(Self::IdealRejection),
            "postselected" | "postselected_subtraction" => Ok(Self::PostselectedSubtraction),
            _ => Err(format!("unknown interference mode `{s}` (expected `ideal` or `postselected`)")),
        }
    }
}

fn check_register<T: Real>(state: &StateVector<T>, k: u32) -> Result<RegisterLayout> {
    let layout = *state.layout();
    if layout.has_flag() || layout.z_width() != 0 || layout.x_width() != k {
        return Err(Error::LayoutMismatch);
    }
    Ok(layout)
}

/// Rejects `x_tilde` from the uniform superposition over `k` qubits.
pub fn ideal_interfere<T: Real>(x_tilde: &StateVector<T>, k: u32) -> Result<StateVector<T>> {
    let layout = check_register(x_tilde, k)?;
    rejection(&uniform_superposition(layout), x_tilde)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubtractionOutcome<T> {
    pub succeeded: bool,
    pub ancilla_success_probability: T,
    /// Normalized heralded state, present iff `succeeded`.
    pub result: Option<StateVector<T>>,
    /// Probability that measuring `result` yields a solution; below 1 because
    /// the equal-weight difference leaves residual non-solution amplitude.
    pub solution_support_mass: Option<T>,
}

/// The ancilla circuit for one `X~` input, simulated once so repeated
/// attempts only need a Bernoulli draw.
#[derive(Debug, Clone)]
pub struct SubtractionCircuit<T> {
    success_probability: T,
    heralded: Option<StateVector<T>>,
    solution_support_mass: Option<T>,
}

impl<T: Real> SubtractionCircuit<T> {
    pub fn prepare(oracle: &Oracle, x_tilde: &StateVector<T>) -> Result<Self> {
        let layout = check_register(x_tilde, oracle.k())?;
        let u = uniform_superposition::<T>(layout);
        let dim = layout.dim();
        let h = T::FRAC_1_SQRT_2();

        // ancilla is the top qubit: |0>|u>/sqrt2 + |1>|x~>/sqrt2 after the
        // Hadamard and the controlled preparations
        let mut joint: Vec<Complex<T>> = Vec::with_capacity(2 * dim);
        joint.extend(u.amplitudes().iter().map(|a| a.scale(h)));
        joint.extend(x_tilde.amplitudes().iter().map(|a| a.scale(h)));
        hadamard_top(&mut joint);

        let branch = joint.split_off(dim);
        let mass = branch.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr());
        if mass < T::degenerate_mass() {
            return Ok(Self { success_probability: mass, heralded: None, solution_support_mass: None });
        }
        let heralded = StateVector::normalized(layout, branch)?;
        let support = oracle.marked_mass(&heralded)?;
        Ok(Self { success_probability: mass, heralded: Some(heralded), solution_support_mass: Some(support) })
    }

    pub fn success_probability(&self) -> T {
        self.success_probability
    }

    pub fn attempt<R: Rng + ?Sized>(&self, rng: &mut R) -> SubtractionOutcome<T> {
        let u: f64 = rng.random();
        let succeeded = self.heralded.is_some() && u < self.success_probability.as_f64();
        SubtractionOutcome {
            succeeded,
            ancilla_success_probability: self.success_probability,
            result: if succeeded { self.heralded.clone() } else { None },
            solution_support_mass: if succeeded { self.solution_support_mass } else { None },
        }
    }
}

/// Hadamard on the most significant qubit of a state stored as two halves.
fn hadamard_top<T: Real>(amps: &mut [Complex<T>]) {
    let h = T::FRAC_1_SQRT_2();
    let (lo, hi) = amps.split_at_mut(amps.len() / 2);
    for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
        let (s, d) = (*a + *b, *a - *b);
        *a = s.scale(h);
        *b = d.scale(h);
    }
}

/// One post-selected subtraction attempt on `x_tilde`.
pub fn postselected_subtract<T: Real, R: Rng + ?Sized>(
    ast: &PredicateAst,
    k: u32,
    x_tilde: &StateVector<T>,
    rng: &mut R,
) -> Result<SubtractionOutcome<T>> {
    check_register(x_tilde, k)?;
    let oracle = Oracle::compile_unchecked(ast, k);
    Ok(SubtractionCircuit::prepare(&oracle, x_tilde)?.attempt(rng))
}

/// Overlap comparison for one pair of solution sets.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct WitnessReport<T> {
    pub k: u32,
    #[serde(serialize_with = "crate::report::members")]
    pub set_a: SolutionSet,
    #[serde(serialize_with = "crate::report::members")]
    pub set_b: SolutionSet,
    #[serde(serialize_with = "crate::report::real")]
    pub input_overlap: T,
    #[serde(serialize_with = "crate::report::real")]
    pub output_overlap: T,
    #[serde(serialize_with = "crate::report::real")]
    pub mismatch: T,
    /// True when no fixed unitary can serve both sets.
    pub verdict: bool,
}

/// Threshold above which an overlap mismatch certifies impossibility.
pub const WITNESS_THRESHOLD: f64 = 1e-6;

pub fn unitarity_witness<T: Real>(k: u32, set_a: &SolutionSet, set_b: &SolutionSet) -> Result<WitnessReport<T>> {
    if set_a.k() != k || set_b.k() != k {
        return Err(Error::LayoutMismatch);
    }
    for s in [set_a, set_b] {
        if s.is_empty() || s.is_full() {
            return Err(Error::DegenerateSet(format!("{:?} in a {k}-bit register", s.members())));
        }
    }
    let layout = RegisterLayout::unchecked_register(k);
    let states = |s: &SolutionSet| -> Result<(StateVector<T>, StateVector<T>)> {
        let to_idx = |v: &[u64]| v.iter().map(|&x| x as usize).collect::<Vec<_>>();
        Ok((
            StateVector::uniform_over(layout, to_idx(&s.complement()))?,
            StateVector::uniform_over(layout, to_idx(s.members()))?,
        ))
    };
    let (ns_a, s_a) = states(set_a)?;
    let (ns_b, s_b) = states(set_b)?;
    let input_overlap = inner_product(&ns_a, &ns_b)?.re;
    let output_overlap = inner_product(&s_a, &s_b)?.re;
    let mismatch = (input_overlap - output_overlap).abs();
    Ok(WitnessReport {
        k,
        set_a: set_a.clone(),
        set_b: set_b.clone(),
        input_overlap,
        output_overlap,
        mismatch,
        verdict: mismatch > T::lit(WITNESS_THRESHOLD),
    })
}

/// Witnesses for every unordered pair of distinct singleton solution sets.
pub fn singleton_witnesses<T: Real>(k: u32, limits: &crate::limits::Limits) -> Result<Vec<WitnessReport<T>>> {
    use rayon::prelude::*;
    limits.check(k)?;
    let size = 1u64 << k;
    let pairs: Vec<(u64, u64)> = (0..size).flat_map(|a| (a + 1..size).map(move |b| (a, b))).collect();
    pairs
        .into_par_iter()
        .map(|(a, b)| {
            let sa = SolutionSet::from_members(k, limits, [a])?;
            let sb = SolutionSet::from_members(k, limits, [b])?;
            unitarity_witness(k, &sa, &sb)
        })
        .collect()
}
