#![allow(dead_code)]

use num_complex::Complex;
use qsub_core::{Limits, RegisterLayout, StateVector64};
use rand::Rng;

/// Predicates exercised throughout the integration suites, with the register
/// width each is run at. Solution sets come from brute-force enumeration.
pub const CORPUS: &[(&str, u32)] = &[
    ("x*x - 4 = 0", 3),
    ("x*x - 4 = 0", 10),
    ("x = 1 or x = 3", 2),
    ("x = 3 or x = 5 or x = 250", 8),
    ("0 = 0", 2),
    ("x = 9", 3),
    ("x^4 = 4294967296", 9),
    ("(x - 3)*(x - 10)*(x - 700) = 0", 10),
    ("x*x*x - 6*x*x + 11*x - 6 = 0", 4),
    ("x > 5 and x < 9 and not x = 7", 4),
    ("x*x = 2^10", 6),
    ("-x + 17 = 0", 5),
    ("x != 0", 3),
    ("x >= 0", 1),
    ("x <= 1000", 10),
    ("x*x + 1 = 0", 5),
    ("not (x < 4 or x > 60)", 7),
];

pub fn limits() -> Limits {
    Limits::default()
}

/// Normalized state with independent uniform real and imaginary parts.
pub fn random_state<R: Rng>(layout: RegisterLayout, rng: &mut R) -> StateVector64 {
    let amps = (0..layout.dim())
        .map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    StateVector64::normalized(layout, amps).expect("random vector is non-zero")
}
