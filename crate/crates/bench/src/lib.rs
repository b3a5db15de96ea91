//! Inputs shared by the criterion benchmarks.

use cantor_core::{CoefficientPair, LacunarySequence, SizeSequence};

pub fn generated(depth: usize) -> LacunarySequence {
    LacunarySequence::generate(depth, 3).expect("depth >= 1")
}

pub fn harmonic_sizes(len: usize) -> SizeSequence {
    SizeSequence::harmonic(len)
}

/// `a_n = 1/n`, `b_n = 0` for `n = 1..=terms`.
pub fn reciprocal_sine_series(terms: u64) -> Vec<CoefficientPair> {
    (1..=terms)
        .map(|n| CoefficientPair::new(n, 1.0 / n as f64, 0.0).expect("n >= 1"))
        .collect()
}
