//! Serializable views of the constructions. Rationals travel as exact
//! decimal-string numerator and denominator plus a rounded decimal
//! approximation for human eyes.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{normalize_rational, Enclosure, Rational};
use crate::lacunary::LacunarySequence;
use crate::omega::{ApproximantChain, OddChain, OmegaEnclosure, ThetaResidual};
use crate::sieve::SieveReport;
use crate::target::TargetedOmega;
use crate::trig::{DecayReport, PolarTerm, ResonancePoint};

/// Exact rational on the wire.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalReport {
    pub num: String,
    pub den: String,
    pub approx: String,
}

impl RationalReport {
    /// Recovers the exact value from `num` and `den`; `approx` is ignored.
    pub fn to_rational(&self) -> Result<Rational> {
        let fail = || Error::ParseRational {
            input: format!("{}/{}", self.num, self.den),
        };
        let num = BigInt::from_str(&self.num).map_err(|_| fail())?;
        let den = BigInt::from_str(&self.den).map_err(|_| fail())?;
        normalize_rational(num, den)
    }
}

pub fn serialize_rational(r: &Rational, digits: usize) -> RationalReport {
    RationalReport {
        num: r.numer().to_string(),
        den: r.denom().to_string(),
        approx: decimal_approx(r, digits),
    }
}

/// Nearest integer, ties to even.
fn round_half_even(r: &Rational) -> BigInt {
    let floor = r.floor();
    let frac = r - &floor;
    let floor = floor.to_integer();
    let half = Rational::new(1.into(), 2.into());
    if frac > half || (frac == half && floor.is_odd()) {
        floor + 1
    } else {
        floor
    }
}

fn pow10(k: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), k)
}

/// Positional decimal string of `r` correctly rounded to `digits`
/// significant digits (ties to even). Zero prints as `0.0…` with
/// `digits − 1` fractional zeros.
pub fn decimal_approx(r: &Rational, digits: usize) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return if digits == 1 {
            "0".to_string()
        } else {
            format!("0.{}", "0".repeat(digits - 1))
        };
    }
    let a = r.abs();
    let ten = Rational::from_integer(BigInt::from(10));
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let power = |k: i64| -> Rational {
        if k >= 0 {
            num_traits::pow(ten.clone(), k as usize)
        } else {
            num_traits::pow(ten.clone(), (-k) as usize).recip()
        }
    };
    while a < power(e) {
        e -= 1;
    }
    while a >= power(e + 1) {
        e += 1;
    }

    let mut n = round_half_even(&(&a * power(digits as i64 - 1 - e)));
    if n == pow10(digits) {
        n /= 10;
        e += 1;
    }
    let d = n.to_string();
    let body = if e >= digits as i64 - 1 {
        format!("{d}{}", "0".repeat((e - digits as i64 + 1) as usize))
    } else if e >= 0 {
        let split = (e + 1) as usize;
        format!("{}.{}", &d[..split], &d[split..])
    } else {
        format!("0.{}{d}", "0".repeat((-e - 1) as usize))
    };
    if r.is_negative() {
        format!("-{body}")
    } else {
        body
    }
}

fn ints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnclosureReport {
    pub lo: RationalReport,
    pub hi: RationalReport,
    pub width: RationalReport,
}

impl EnclosureReport {
    pub fn new(e: &Enclosure, digits: usize) -> Self {
        EnclosureReport {
            lo: serialize_rational(e.lo(), digits),
            hi: serialize_rational(e.hi(), digits),
            width: serialize_rational(&e.width(), digits),
        }
    }

    pub fn to_enclosure(&self) -> Result<Enclosure> {
        Enclosure::new(self.lo.to_rational()?, self.hi.to_rational()?)
    }
}

pub fn sequence_report(seq: &LacunarySequence) -> Vec<String> {
    ints(seq.terms())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaRow {
    pub s: usize,
    pub n_s: String,
    pub odd: String,
    pub theta_lo: RationalReport,
    pub theta_hi: RationalReport,
    pub two_pow_minus_s: RationalReport,
    pub pass: bool,
}

impl ThetaRow {
    pub fn new(t: &ThetaResidual, digits: usize) -> Self {
        ThetaRow {
            s: t.s,
            n_s: t.n_s.to_string(),
            odd: t.odd.to_string(),
            theta_lo: serialize_rational(t.theta_bounds.lo(), digits),
            theta_hi: serialize_rational(t.theta_bounds.hi(), digits),
            two_pow_minus_s: serialize_rational(&t.target, digits),
            pass: t.certified,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmegaReport {
    pub depth: usize,
    pub sequence: Vec<String>,
    pub odd_chain: Vec<String>,
    pub q_chain: Vec<RationalReport>,
    pub center: RationalReport,
    pub radius: RationalReport,
    pub enclosure: EnclosureReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_table: Option<Vec<ThetaRow>>,
}

impl OmegaReport {
    pub fn new(
        seq: &LacunarySequence,
        odds: &OddChain,
        q: &ApproximantChain,
        omega: &OmegaEnclosure,
        theta: Option<&[ThetaResidual]>,
        digits: usize,
    ) -> Self {
        OmegaReport {
            depth: omega.depth,
            sequence: sequence_report(seq),
            odd_chain: ints(&odds.odds),
            q_chain: q.q.iter().map(|x| serialize_rational(x, digits)).collect(),
            center: serialize_rational(&omega.center, digits),
            radius: serialize_rational(&omega.radius, digits),
            enclosure: EnclosureReport::new(&omega.enclosure, digits),
            theta_table: theta.map(|rows| rows.iter().map(|t| ThetaRow::new(t, digits)).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetReport {
    pub mu: u64,
    pub nu: u64,
    pub target: EnclosureReport,
    pub middle_third: EnclosureReport,
    pub nu1_index: usize,
    pub nu1: String,
    pub nu_chain: Vec<String>,
    pub odd_chain: Vec<String>,
    pub xi_chain: Vec<RationalReport>,
    pub enclosure: EnclosureReport,
    pub drift_bound: RationalReport,
    pub drift_within_margin: bool,
    pub contained: bool,
}

impl TargetReport {
    pub fn new(t: &TargetedOmega, digits: usize) -> Self {
        TargetReport {
            mu: t.spec.mu(),
            nu: t.spec.nu(),
            target: EnclosureReport::new(&t.spec.interval(), digits),
            middle_third: EnclosureReport::new(&crate::target::middle_third(&t.spec), digits),
            nu1_index: t.nu1_index,
            nu1: t.nu_chain[0].to_string(),
            nu_chain: ints(&t.nu_chain),
            odd_chain: ints(&t.odd_chain),
            xi_chain: t.xi_chain.iter().map(|x| serialize_rational(x, digits)).collect(),
            enclosure: EnclosureReport::new(&t.enclosure, digits),
            drift_bound: serialize_rational(&t.drift_bound, digits),
            drift_within_margin: t.drift_within_margin,
            contained: t.contained,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SieveLevelReport {
    pub level: usize,
    pub delta: RationalReport,
    pub deleted: Vec<usize>,
    pub last_deleted: Option<usize>,
    pub residual_max: Option<RationalReport>,
    pub survivors: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SieveReportView {
    pub input_len: usize,
    pub levels: Vec<SieveLevelReport>,
}

impl SieveReportView {
    pub fn new(rep: &SieveReport, digits: usize) -> Self {
        SieveReportView {
            input_len: rep.input_len,
            levels: rep
                .levels
                .iter()
                .map(|l| SieveLevelReport {
                    level: l.level,
                    delta: serialize_rational(&l.delta, digits),
                    deleted: l.deleted.clone(),
                    last_deleted: l.last_deleted,
                    residual_max: l.residual_max.as_ref().map(|m| serialize_rational(m, digits)),
                    survivors: l.survivors,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarReport {
    pub a: f64,
    pub b: f64,
    pub rho: f64,
    pub phi: f64,
}

impl PolarReport {
    pub fn new(a: f64, b: f64, t: &PolarTerm) -> Self {
        PolarReport {
            a,
            b,
            rho: t.rho,
            phi: t.phi,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonanceRow {
    pub s: usize,
    pub n_s: String,
    pub odd: String,
    pub theta_hi: RationalReport,
    pub theta_hi_f64: f64,
    pub certified_bound: f64,
    pub midpoint_value: f64,
    pub two_pow_minus_s: RationalReport,
    pub theta_certified: bool,
}

impl ResonanceRow {
    pub fn new(r: &ResonancePoint, digits: usize) -> Self {
        ResonanceRow {
            s: r.s,
            n_s: r.n_s.to_string(),
            odd: r.odd.to_string(),
            theta_hi: serialize_rational(r.theta.theta_bounds.hi(), digits),
            theta_hi_f64: r.theta_hi,
            certified_bound: r.certified_bound,
            midpoint_value: r.midpoint_value,
            two_pow_minus_s: serialize_rational(&r.theta.target, digits),
            theta_certified: r.theta.certified,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonanceReport {
    pub depth: usize,
    pub omega: EnclosureReport,
    pub x_star_lo: f64,
    pub x_star_hi: f64,
    pub rows: Vec<ResonanceRow>,
}

impl ResonanceReport {
    pub fn new(omega: &OmegaEnclosure, points: &[ResonancePoint], digits: usize) -> Self {
        let pi = std::f64::consts::PI;
        ResonanceReport {
            depth: omega.depth,
            omega: EnclosureReport::new(&omega.enclosure, digits),
            x_star_lo: pi * omega.enclosure.lo().to_f64().unwrap_or(f64::NAN),
            x_star_hi: pi * omega.enclosure.hi().to_f64().unwrap_or(f64::NAN),
            rows: points.iter().map(|p| ResonanceRow::new(p, digits)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayRowReport {
    pub n: u64,
    pub rho: f64,
    pub grid_sup: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReportView {
    pub alpha: f64,
    pub beta: f64,
    pub grid_points: usize,
    pub eps_term: f64,
    pub eps_rho: f64,
    pub flagged: Vec<u64>,
    pub rows: Vec<DecayRowReport>,
}

impl From<&DecayReport> for DecayReportView {
    fn from(rep: &DecayReport) -> Self {
        DecayReportView {
            alpha: rep.alpha,
            beta: rep.beta,
            grid_points: rep.grid_points,
            eps_term: rep.eps_term,
            eps_rho: rep.eps_rho,
            flagged: rep.flagged().map(|r| r.n).collect(),
            rows: rep
                .rows
                .iter()
                .map(|r| DecayRowReport {
                    n: r.n,
                    rho: r.rho,
                    grid_sup: r.grid_sup,
                    flagged: r.flagged,
                })
                .collect(),
        }
    }
}
