//! Dense state vectors over the X, flag and Z registers.
//!
//! Basis order is fixed everywhere: X bits are most significant, then the
//! single flag qubit (when present), then the Z bits. Index 0 is the all-zero
//! basis state. For a layout with `k` X bits, a flag and `m` Z bits the basis
//! index of `|x, y, z>` is `(x << (m + 1)) | (y << m) | z`.

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::scalar::Real;

pub type Amplitude<T> = Complex<T>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RegisterLayout {
    x_width: u32,
    has_flag: bool,
    z_width: u32,
}

impl RegisterLayout {
    pub fn new(x_width: u32, has_flag: bool, z_width: u32, limits: &Limits) -> Result<Self> {
        if x_width == 0 {
            return Err(Error::InvalidLayout("X register needs at least one qubit".into()));
        }
        if z_width != 0 && z_width != x_width {
            return Err(Error::InvalidLayout(format!(
                "Z register width must be 0 or {x_width}, got {z_width}"
            )));
        }
        limits.check(x_width)?;
        Ok(Self { x_width, has_flag, z_width })
    }

    /// A bare k-qubit X register.
    pub fn register(k: u32, limits: &Limits) -> Result<Self> {
        Self::new(k, false, 0, limits)
    }

    /// X register plus the one-qubit flag.
    pub fn with_flag(k: u32, limits: &Limits) -> Result<Self> {
        Self::new(k, true, 0, limits)
    }

    pub fn x_width(&self) -> u32 {
        self.x_width
    }

    pub fn has_flag(&self) -> bool {
        self.has_flag
    }

    pub fn z_width(&self) -> u32 {
        self.z_width
    }

    pub fn total_qubits(&self) -> u32 {
        self.x_width + u32::from(self.has_flag) + self.z_width
    }

    pub fn dim(&self) -> usize {
        1usize << self.total_qubits()
    }

    /// Number of distinct X values, `2^k`.
    pub fn x_dim(&self) -> usize {
        1usize << self.x_width
    }

    /// X value encoded in a basis index.
    #[inline]
    pub fn x_of(&self, index: usize) -> usize {
        index >> (u32::from(self.has_flag) + self.z_width)
    }

    /// Flag bit encoded in a basis index (0 for flagless layouts).
    #[inline]
    pub fn flag_of(&self, index: usize) -> usize {
        if self.has_flag {
            (index >> self.z_width) & 1
        } else {
            0
        }
    }

    #[inline]
    pub fn z_of(&self, index: usize) -> usize {
        index & ((1usize << self.z_width) - 1)
    }

    pub fn index_of(&self, x: usize, flag: usize, z: usize) -> usize {
        let flag_bits = u32::from(self.has_flag);
        (x << (flag_bits + self.z_width)) | ((flag & flag_bits as usize) << self.z_width) | z
    }

    /// Flagless register whose width was already validated elsewhere.
    pub(crate) fn unchecked_register(k: u32) -> Self {
        Self { x_width: k, has_flag: false, z_width: 0 }
    }

    pub(crate) fn without_flag(self) -> Self {
        Self { has_flag: false, ..self }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    layout: RegisterLayout,
    amps: Vec<Amplitude<T>>,
}

impl<T: Real> StateVector<T> {
    /// Wraps an amplitude vector, checking length, finiteness and unit norm.
    pub fn from_amplitudes(layout: RegisterLayout, amps: Vec<Amplitude<T>>) -> Result<Self> {
        let state = Self::unchecked(layout, amps)?;
        let norm = state.norm();
        if (norm - T::one()).abs() > T::norm_tolerance() {
            return Err(Error::InvalidLayout(format!("state norm {norm} is not 1")));
        }
        Ok(state)
    }

    /// Wraps an arbitrary non-zero vector and rescales it to unit norm.
    pub fn normalized(layout: RegisterLayout, amps: Vec<Amplitude<T>>) -> Result<Self> {
        let mut state = Self::unchecked(layout, amps)?;
        let norm = state.norm();
        if norm <= T::residual_floor() {
            return Err(Error::ZeroResidual);
        }
        state.scale(norm.recip());
        Ok(state)
    }

    fn unchecked(layout: RegisterLayout, amps: Vec<Amplitude<T>>) -> Result<Self> {
        if amps.len() != layout.dim() {
            return Err(Error::InvalidLayout(format!(
                "expected {} amplitudes, got {}",
                layout.dim(),
                amps.len()
            )));
        }
        if amps.iter().any(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::InvalidLayout("non-finite amplitude".into()));
        }
        Ok(Self { layout, amps })
    }

    pub(crate) fn from_raw(layout: RegisterLayout, amps: Vec<Amplitude<T>>) -> Self {
        debug_assert_eq!(amps.len(), layout.dim());
        Self { layout, amps }
    }

    /// The computational basis state with the given index.
    pub fn basis(layout: RegisterLayout, index: usize) -> Result<Self> {
        if index >= layout.dim() {
            return Err(Error::InvalidLayout(format!("basis index {index} out of range")));
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); layout.dim()];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(Self { layout, amps })
    }

    /// Equal-weight superposition over the given X values, flag and Z at zero.
    ///
    /// Duplicate values are counted once.
    pub fn uniform_over(layout: RegisterLayout, xs: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut marked = vec![false; layout.x_dim()];
        for x in xs {
            if x >= layout.x_dim() {
                return Err(Error::InvalidLayout(format!("X value {x} out of range")));
            }
            marked[x] = true;
        }
        let count = marked.iter().filter(|&&m| m).count();
        if count == 0 {
            return Err(Error::ZeroResidual);
        }
        let weight = T::lit(count as f64).sqrt().recip();
        let mut amps = vec![Complex::new(T::zero(), T::zero()); layout.dim()];
        for (x, _) in marked.iter().enumerate().filter(|(_, &m)| m) {
            amps[layout.index_of(x, 0, 0)] = Complex::new(weight, T::zero());
        }
        Ok(Self { layout, amps })
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Amplitude<T>] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Amplitude<T>> {
        self.amps
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn probability(&self, index: usize) -> T {
        self.amps[index].norm_sqr()
    }

    fn scale(&mut self, factor: T) {
        for a in &mut self.amps {
            *a = a.scale(factor);
        }
    }

    /// Largest per-amplitude distance to another state of the same layout.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.layout != other.layout {
            return Err(Error::LayoutMismatch);
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm())))
    }
}

/// Outcome of measuring the flag qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementOutcome<T> {
    pub observed_bit: u8,
    pub probability_of_observed: T,
    /// Collapsed, renormalized state with the flag qubit removed.
    pub posterior: StateVector<T>,
}

/// Uniform superposition over the X register; flag and Z start in `|0>`.
pub fn uniform_superposition<T: Real>(layout: RegisterLayout) -> StateVector<T> {
    let k = layout.x_width();
    let weight = T::lit(2f64.powf(-f64::from(k) / 2.0));
    let mut amps = vec![Complex::new(T::zero(), T::zero()); layout.dim()];
    for x in 0..layout.x_dim() {
        amps[layout.index_of(x, 0, 0)] = Complex::new(weight, T::zero());
    }
    StateVector::from_raw(layout, amps)
}

/// `<a|b>`, conjugate-linear in the first argument.
pub fn inner_product<T: Real>(a: &StateVector<T>, b: &StateVector<T>) -> Result<Amplitude<T>> {
    if a.layout != b.layout {
        return Err(Error::LayoutMismatch);
    }
    Ok(a.amps
        .iter()
        .zip(&b.amps)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| acc + x.conj() * y))
}

/// Born-rule masses `(P(flag = 0), P(flag = 1))`.
pub fn flag_masses<T: Real>(state: &StateVector<T>) -> Result<(T, T)> {
    let layout = state.layout;
    if !layout.has_flag() {
        return Err(Error::NoFlagQubit);
    }
    let mut masses = [T::zero(); 2];
    for (i, a) in state.amps.iter().enumerate() {
        masses[layout.flag_of(i)] += a.norm_sqr();
    }
    Ok((masses[0], masses[1]))
}

/// Projectively measures the flag qubit and collapses the state.
pub fn measure_flag<T: Real, R: Rng + ?Sized>(
    state: &StateVector<T>,
    rng: &mut R,
) -> Result<MeasurementOutcome<T>> {
    let (p0, p1) = flag_masses(state)?;
    let threshold = (p1 / (p0 + p1)).as_f64();
    let u: f64 = rng.random();
    let bit = usize::from(u < threshold);
    let mass = if bit == 1 { p1 } else { p0 };
    if mass < T::degenerate_mass() {
        return Err(Error::DegenerateBranch(mass.as_f64()));
    }

    let layout = state.layout;
    let reduced = layout.without_flag();
    let inv = mass.sqrt().recip();
    let mut amps = vec![Complex::new(T::zero(), T::zero()); reduced.dim()];
    for (i, a) in state.amps.iter().enumerate() {
        if layout.flag_of(i) == bit {
            amps[reduced.index_of(layout.x_of(i), 0, layout.z_of(i))] = a.scale(inv);
        }
    }
    Ok(MeasurementOutcome {
        observed_bit: bit as u8,
        probability_of_observed: mass,
        posterior: StateVector::from_raw(reduced, amps),
    })
}

/// Measures every qubit and returns the observed basis index.
pub fn sample_basis<T: Real, R: Rng + ?Sized>(state: &StateVector<T>, rng: &mut R) -> usize {
    let total = state.norm_sqr().as_f64();
    let target = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last_nonzero = 0;
    for (i, a) in state.amps.iter().enumerate() {
        let p = a.norm_sqr().as_f64();
        if p > 0.0 {
            acc += p;
            last_nonzero = i;
            if target < acc {
                return i;
            }
        }
    }
    // rounding left `target` just past the accumulated mass
    last_nonzero
}

/// Orthogonal rejection of `a` from `b`: `normalize(a - <b|a> b)`.
pub fn rejection<T: Real>(a: &StateVector<T>, b: &StateVector<T>) -> Result<StateVector<T>> {
    let overlap = inner_product(b, a)?;
    let residual: Vec<_> = a.amps.iter().zip(&b.amps).map(|(x, y)| x - overlap * y).collect();
    StateVector::normalized(a.layout, residual)
}
