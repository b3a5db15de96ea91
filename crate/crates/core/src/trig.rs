//! Amplitude-phase form of trigonometric terms, resonance at `x* = πΩ`,
//! and an empirical harness that compares coefficient sizes with the
//! sup of each term over a grid.
//!
//! Large frequencies are never fed to `cos` directly: `n·Ω` is reduced
//! exactly modulo an odd integer first, and only the small remainder is
//! evaluated in floating point.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{Enclosure, Rational};
use crate::lacunary::LacunarySequence;
use crate::omega::{approximants, check_s_range, theta_residual, OmegaEnclosure, ThetaResidual};

/// One term `a·sin(nx) + b·cos(nx)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientPair {
    pub n: u64,
    pub a: f64,
    pub b: f64,
}

impl CoefficientPair {
    pub fn new(n: u64, a: f64, b: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroFrequency);
        }
        Ok(CoefficientPair { n, a, b })
    }

    pub fn polar(&self) -> PolarTerm {
        to_polar(self.a, self.b)
    }
}

/// `ρ·cos(φ − nx)` with `ρ ≥ 0` and `φ ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarTerm {
    pub rho: f64,
    pub phi: f64,
}

pub fn to_polar(a: f64, b: f64) -> PolarTerm {
    let rho = a.hypot(b);
    if rho == 0.0 {
        return PolarTerm { rho: 0.0, phi: 0.0 };
    }
    let mut phi = a.atan2(b);
    if phi < 0.0 {
        phi += TAU;
    }
    // atan2 of a tiny negative angle can round up to exactly 2π
    if phi >= TAU {
        phi = 0.0;
    }
    PolarTerm { rho, phi: phi + 0.0 }
}

pub fn term_value(p: &CoefficientPair, x: f64) -> f64 {
    let nx = p.n as f64 * x;
    p.a * nx.sin() + p.b * nx.cos()
}

pub fn polar_term_value(n: u64, t: &PolarTerm, x: f64) -> f64 {
    t.rho * (t.phi - n as f64 * x).cos()
}

fn check_distinct(series: &[CoefficientPair]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for p in series {
        if p.n == 0 {
            return Err(Error::ZeroFrequency);
        }
        if !seen.insert(p.n) {
            return Err(Error::DuplicateFrequency { n: p.n });
        }
    }
    Ok(())
}

/// Sum of the terms at `x`, accumulated in ascending frequency order.
pub fn partial_sum(series: &[CoefficientPair], x: f64) -> Result<f64> {
    check_distinct(series)?;
    let mut sorted = series.to_vec();
    sorted.sort_by_key(|p| p.n);
    Ok(sorted.iter().map(|p| term_value(p, x)).sum())
}

/// `cos(π·r)` for an exact rational `r` of any size. The argument is
/// reduced exactly to `[-1, 1]` before the single floating evaluation.
pub fn cos_pi(r: &Rational) -> f64 {
    let two = BigInt::from(2);
    // nearest even integer to r
    let k = (r / &two).round().to_integer() * &two;
    let reduced = r - Rational::from_integer(k);
    (PI * reduced.to_f64().expect("reduced argument lies in [-1, 1]")).cos()
}

/// `1 − cos(π·t)` without cancellation, as `2·sin²(πt/2)`.
fn one_minus_cos_pi(t: f64) -> f64 {
    let h = (PI * t / 2.0).sin();
    2.0 * h * h
}

/// Rational strictly above π.
fn pi_upper() -> Rational {
    Rational::new(
        BigInt::from(3_141_592_653_589_794u64),
        BigInt::from(1_000_000_000_000_000u64),
    )
}

/// Smallest `f64` that is not below the exact rational.
fn to_f64_up(r: &Rational) -> f64 {
    let v = r.to_f64().expect("finite");
    if &Rational::from_float(v).expect("finite") < r {
        v.next_up()
    } else {
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResonancePoint {
    pub s: usize,
    pub n_s: BigInt,
    /// Odd integer `2z+1` that `n_s·Ω` is pinned to.
    pub odd: BigInt,
    pub theta: ThetaResidual,
    /// Enclosure of `Ω`; the resonance point is `x* = π·Ω`.
    pub omega: Enclosure,
    pub x_star_lo: f64,
    pub x_star_hi: f64,
    /// Upper bound `Θ̄_s` rounded up to `f64`.
    pub theta_hi: f64,
    /// Certified `|cos(n_s·π·Ω) + 1| ≤ (π·Θ̄_s)²/2`, rounded up.
    pub certified_bound: f64,
    /// Signed reduced residual `n_s·ω_mid − (2z+1)` at the enclosure midpoint.
    pub midpoint_residual: Rational,
    /// `cos(n_s·π·ω_mid) + 1` via exact argument reduction.
    pub midpoint_value: f64,
}

impl ResonancePoint {
    /// Midpoint evaluation is consistent with the certified bound up to `tol`.
    pub fn midpoint_consistent(&self, tol: f64) -> bool {
        self.midpoint_value >= -tol && self.midpoint_value <= self.certified_bound + tol
    }
}

pub fn resonance_point(omega: &OmegaEnclosure, seq: &LacunarySequence, s: usize) -> Result<ResonancePoint> {
    if omega.depth > seq.depth() {
        return Err(Error::InsufficientDepth {
            depth: seq.depth(),
            required: omega.depth,
        });
    }
    check_s_range(s, omega.depth)?;
    let prefix = seq.prefix(omega.depth)?;
    let (odds, _) = approximants(&prefix);
    let theta = theta_residual(&omega.enclosure, &prefix, &odds, s);

    let theta_hi_exact = theta.theta_bounds.hi().clone();
    let scaled = pi_upper() * &theta_hi_exact;
    let certified_bound = to_f64_up(&(&scaled * &scaled / BigInt::from(2)));

    let mid = omega.enclosure.midpoint();
    let midpoint_residual =
        &mid * Rational::from_integer(theta.n_s.clone()) - Rational::from_integer(theta.odd.clone());
    // cos((2z+1)π + dπ) + 1 = 1 − cos(dπ)
    let midpoint_value = one_minus_cos_pi(midpoint_residual.to_f64().expect("small residual"));

    Ok(ResonancePoint {
        s,
        n_s: theta.n_s.clone(),
        odd: theta.odd.clone(),
        omega: omega.enclosure.clone(),
        x_star_lo: PI * omega.enclosure.lo().to_f64().expect("finite"),
        x_star_hi: PI * omega.enclosure.hi().to_f64().expect("finite"),
        theta_hi: to_f64_up(&theta_hi_exact),
        certified_bound,
        midpoint_residual,
        midpoint_value,
        theta,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayRow {
    pub n: u64,
    pub rho: f64,
    pub grid_sup: f64,
    /// `rho > eps_rho` while `grid_sup < eps_term`.
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayReport {
    pub alpha: f64,
    pub beta: f64,
    pub grid_points: usize,
    pub eps_term: f64,
    pub eps_rho: f64,
    /// Ascending frequency.
    pub rows: Vec<DecayRow>,
}

impl DecayReport {
    pub fn flagged(&self) -> impl Iterator<Item = &DecayRow> {
        self.rows.iter().filter(|r| r.flagged)
    }
}

/// Minimum grid size for frequencies up to `max_n` on `(alpha, beta)`:
/// four samples per period.
pub fn grid_floor(max_n: u64, alpha: f64, beta: f64) -> usize {
    (4.0 * max_n as f64 * (beta - alpha) / TAU).ceil() as usize
}

/// Interior points `alpha + (i+1)·h`, `h = (beta − alpha)/(N+1)`.
pub fn open_grid(alpha: f64, beta: f64, points: usize) -> Vec<f64> {
    let h = (beta - alpha) / (points as f64 + 1.0);
    (0..points).map(|i| alpha + (i as f64 + 1.0) * h).collect()
}

pub fn decay_check(
    series: &[CoefficientPair],
    alpha: f64,
    beta: f64,
    grid_points: usize,
    eps_term: f64,
    eps_rho: f64,
) -> Result<DecayReport> {
    if !(alpha.is_finite() && beta.is_finite() && alpha < beta) {
        return Err(Error::BadInterval { alpha, beta });
    }
    check_distinct(series)?;
    let max_n = series.iter().map(|p| p.n).max().unwrap_or(0);
    let required = grid_floor(max_n, alpha, beta);
    if grid_points < required {
        return Err(Error::GridTooCoarse {
            points: grid_points,
            required,
        });
    }

    let grid = open_grid(alpha, beta, grid_points);
    let mut sorted = series.to_vec();
    sorted.sort_by_key(|p| p.n);
    let rows = sorted
        .par_iter()
        .map(|p| {
            let rho = p.a.hypot(p.b);
            let grid_sup = grid.iter().map(|&x| term_value(p, x).abs()).fold(0.0, f64::max);
            DecayRow {
                n: p.n,
                rho,
                grid_sup,
                flagged: rho > eps_rho && grid_sup < eps_term,
            }
        })
        .collect();

    Ok(DecayReport {
        alpha,
        beta,
        grid_points,
        eps_term,
        eps_rho,
        rows,
    })
}

/// Unit-amplitude cosine series on the given frequencies, `cos(n·x)` each.
pub fn unit_cosine_series(frequencies: &[BigInt]) -> Result<Vec<CoefficientPair>> {
    frequencies
        .iter()
        .map(|n| {
            let n = n.to_u64().ok_or(Error::InvalidParameter {
                name: "frequency",
                reason: format!("{n} does not fit in 64 bits"),
            })?;
            CoefficientPair::new(n, 0.0, 1.0)
        })
        .collect()
}

/// `n·ω` reduced modulo 2 into `(-1, 1]`, exactly.
pub fn reduce_mod_two(n: &BigInt, omega: &Rational) -> Rational {
    let prod = omega * Rational::from_integer(n.clone());
    let floor = (&prod + Rational::one()).floor().to_integer();
    let even = if floor.is_odd() { floor - 1 } else { floor };
    let reduced = prod - Rational::from_integer(even);
    if reduced > Rational::one() {
        reduced - Rational::from_integer(BigInt::from(2))
    } else if reduced.is_negative() && reduced <= -Rational::one() {
        reduced + Rational::from_integer(BigInt::from(2))
    } else {
        reduced
    }
}
