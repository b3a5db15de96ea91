//! Exact constructions around super-lacunary integer sequences.
//!
//! * [`lacunary`]: prefixes with `n_k > 2^k · n_(k−1)`.
//! * [`omega`]: the odd-approximant chain and a certified rational
//!   enclosure of the resonant real `Ω`, with residuals `Θ_(n_s) < 2^-s`.
//! * [`target`]: the same construction steered into `[(μ−1)/ν, μ/ν]`.
//! * [`sieve`]: the deletion sieve over finite size sequences.
//! * [`trig`]: amplitude-phase terms, resonance at `x* = πΩ`, and a
//!   coefficient-decay harness.
//! * [`report`]: serializable views for the command-line tools.
//!
//! All certificates are decided in exact rational arithmetic; `f64`
//! only appears for trigonometric evaluation and human-readable output.

pub mod error;
pub mod exact;
pub mod lacunary;
pub mod omega;
pub mod report;
pub mod sieve;
pub mod target;
pub mod trig;

pub use error::{Error, Result};
pub use exact::{
    enclosure_width, make_enclosure, normalize_rational, parse_rational, Enclosure, Rational, WholeInt,
};
pub use lacunary::{default_generator, validate, LacunarySequence};
pub use omega::{
    approximants, omega_enclosure, select_base_odd, select_next_odd, theta, theta_table, ApproximantChain,
    OddChain, OmegaEnclosure, ThetaResidual,
};
pub use report::{serialize_rational, RationalReport};
pub use sieve::{
    compose_selectors, eventually_below, null_subsequence_witness, sieve, subsequence_min_check, Ladder,
    SieveLevel, SieveReport, SizeSequence,
};
pub use target::{base_odd_in_third, find_nu1, middle_third, targeted_omega, TargetSpec, TargetedOmega};
pub use trig::{
    decay_check, partial_sum, polar_term_value, resonance_point, term_value, to_polar, CoefficientPair,
    DecayReport, DecayRow, PolarTerm, ResonancePoint,
};
