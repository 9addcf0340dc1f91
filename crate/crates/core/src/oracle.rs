//! The predicate oracle `Uc` and the Grover baseline built on it.
//!
//! A predicate is compiled once into a truth table over `[0, 2^k)`; every
//! application afterwards is a basis permutation (or a diagonal sign) driven
//! by that table. Flag value 1 marks solutions.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::predicate::{evaluate, PredicateAst};
use crate::scalar::Real;
use crate::statevec::{flag_masses, StateVector};

/// A predicate compiled into its truth table for a fixed register width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Oracle {
    k: u32,
    marks: Vec<bool>,
}

impl Oracle {
    pub fn compile(ast: &PredicateAst, k: u32, limits: &Limits) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidLayout("register width must be at least 1".into()));
        }
        limits.check(k)?;
        Ok(Self::compile_unchecked(ast, k))
    }

    pub(crate) fn compile_unchecked(ast: &PredicateAst, k: u32) -> Self {
        let marks = (0..1u64 << k).into_par_iter().map(|x| evaluate(ast, x)).collect();
        Self { k, marks }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_marked(&self, x: usize) -> bool {
        self.marks[x]
    }

    /// Number of marked values, `n`.
    pub fn n(&self) -> usize {
        self.marks.iter().filter(|&&m| m).count()
    }

    pub fn marked(&self) -> impl Iterator<Item = usize> + '_ {
        self.marks.iter().enumerate().filter(|(_, &m)| m).map(|(x, _)| x)
    }

    pub fn unmarked(&self) -> impl Iterator<Item = usize> + '_ {
        self.marks.iter().enumerate().filter(|(_, &m)| !m).map(|(x, _)| x)
    }

    fn check_width<T: Real>(&self, state: &StateVector<T>) -> Result<()> {
        if state.layout().x_width() != self.k {
            Err(Error::LayoutMismatch)
        } else {
            Ok(())
        }
    }

    /// `|x, y> -> |x, y XOR f(x)>` on every basis state.
    pub fn apply_uc<T: Real>(&self, state: &StateVector<T>) -> Result<StateVector<T>> {
        self.check_width(state)?;
        let layout = *state.layout();
        if !layout.has_flag() {
            return Err(Error::NoFlagQubit);
        }
        let flip = 1usize << layout.z_width();
        let src = state.amplitudes();
        let mut out = src.to_vec();
        for (i, a) in src.iter().enumerate() {
            if self.marks[layout.x_of(i)] {
                out[i ^ flip] = *a;
            }
        }
        Ok(StateVector::from_raw(layout, out))
    }

    /// Multiplies the amplitude of every marked `x` by -1.
    pub fn phase<T: Real>(&self, state: &StateVector<T>) -> Result<StateVector<T>> {
        self.check_width(state)?;
        let layout = *state.layout();
        let out = state
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(i, a)| if self.marks[layout.x_of(i)] { -a } else { *a })
            .collect();
        Ok(StateVector::from_raw(layout, out))
    }

    /// One Grover iteration: phase oracle, then the reflection `2|u><u| - I`.
    pub fn grover_step<T: Real>(&self, state: &StateVector<T>) -> Result<StateVector<T>> {
        let layout = *state.layout();
        if layout.has_flag() || layout.z_width() != 0 {
            return Err(Error::InvalidLayout("Grover iteration acts on a bare X register".into()));
        }
        let mut amps = self.phase(state)?.into_amplitudes();
        let dim = T::lit(amps.len() as f64);
        let mean = amps.iter().fold(Complex::new(T::zero(), T::zero()), |acc, a| acc + a) / dim;
        let two_mean = mean + mean;
        for a in &mut amps {
            *a = two_mean - *a;
        }
        Ok(StateVector::from_raw(layout, amps))
    }

    /// Total probability on marked values; the flag, if any, is ignored.
    pub fn marked_mass<T: Real>(&self, state: &StateVector<T>) -> Result<T> {
        self.check_width(state)?;
        let layout = state.layout();
        Ok(state
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.marks[layout.x_of(*i)])
            .fold(T::zero(), |acc, (_, a)| acc + a.norm_sqr()))
    }
}

/// Norms of the solution (`a`, flag 1) and non-solution (`b`, flag 0) branches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchAmplitudes<T> {
    pub a: T,
    pub b: T,
}

pub fn apply_uc<T: Real>(state: &StateVector<T>, ast: &PredicateAst) -> Result<StateVector<T>> {
    if !state.layout().has_flag() {
        return Err(Error::NoFlagQubit);
    }
    Oracle::compile_unchecked(ast, state.layout().x_width()).apply_uc(state)
}

pub fn branch_amplitudes<T: Real>(state: &StateVector<T>) -> Result<BranchAmplitudes<T>> {
    let (p0, p1) = flag_masses(state)?;
    Ok(BranchAmplitudes { a: p1.sqrt(), b: p0.sqrt() })
}

pub fn phase_oracle<T: Real>(state: &StateVector<T>, ast: &PredicateAst) -> StateVector<T> {
    Oracle::compile_unchecked(ast, state.layout().x_width())
        .phase(state)
        .expect("oracle compiled for the state's width")
}

pub fn grover_step<T: Real>(state: &StateVector<T>, ast: &PredicateAst) -> Result<StateVector<T>> {
    Oracle::compile_unchecked(ast, state.layout().x_width()).grover_step(state)
}

/// `floor((pi/4) * sqrt(2^k / n))`.
pub fn optimal_grover_iterations(n: u64, k: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::NoSolutions);
    }
    let ratio = 2f64.powi(k as i32) / n as f64;
    Ok((std::f64::consts::FRAC_PI_4 * ratio.sqrt()).floor() as u64)
}

/// Success probability after `j` Grover iterations from the uniform state:
/// `sin^2((2j + 1) * asin(sqrt(n / 2^k)))`.
pub fn grover_success_probability(n: u64, k: u32, j: u64) -> f64 {
    let theta = (n as f64 / 2f64.powi(k as i32)).sqrt().asin();
    ((2 * j + 1) as f64 * theta).sin().powi(2)
}
