//! Exact integers, rationals in lowest terms and closed rational enclosures.
//!
//! Every quantity that is later certified (approximants, residual bounds,
//! sieve thresholds) lives here as an exact value; floating point only
//! appears at the reporting boundary.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision integer.
pub type WholeInt = BigInt;

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Builds `p/q` in lowest terms with a positive denominator.
pub fn normalize_rational(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Rational> {
    let q = q.into();
    if q.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(p.into(), q))
}

/// `2^k` as an exact integer.
pub fn pow2(k: usize) -> BigInt {
    BigInt::one() << k
}

/// Smallest odd integer `o` with `o >= r`.
pub(crate) fn ceil_odd(r: &Rational) -> BigInt {
    let c = r.ceil().to_integer();
    if c.is_odd() {
        c
    } else {
        c + 1
    }
}

/// Parses `p/q`, a plain integer, or a decimal such as `-0.125` or `2.5e-3`
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let fail = || Error::ParseRational {
        input: text.to_string(),
    };
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| fail())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| fail())?;
        return normalize_rational(p, q);
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp = s[pos + 1..].parse::<i32>().map_err(|_| fail())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(fail());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(fail());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&all_digits).map_err(|_| fail())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if negative { -value } else { value })
}

/// A closed rational interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
}

impl Enclosure {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvertedEnclosure {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Enclosure { lo, hi })
    }

    pub fn point(value: Rational) -> Self {
        Enclosure {
            lo: value.clone(),
            hi: value,
        }
    }

    /// `[center - radius, center + radius]`; a negative radius is treated
    /// by its magnitude.
    pub fn centered(center: &Rational, radius: &Rational) -> Self {
        let r = radius.abs();
        Enclosure {
            lo: center - &r,
            hi: center + &r,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    /// `other ⊆ self`.
    pub fn contains_enclosure(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Exact image under `x ↦ factor·x`.
    pub fn scale(&self, factor: &BigInt) -> Enclosure {
        let f = Rational::from_integer(factor.clone());
        let (a, b) = (&self.lo * &f, &self.hi * &f);
        if a <= b {
            Enclosure { lo: a, hi: b }
        } else {
            Enclosure { lo: b, hi: a }
        }
    }

    /// Exact image under `x ↦ x + offset`.
    pub fn shift(&self, offset: &Rational) -> Enclosure {
        Enclosure {
            lo: &self.lo + offset,
            hi: &self.hi + offset,
        }
    }

    /// Exact image under `x ↦ |x|`.
    pub fn abs(&self) -> Enclosure {
        let zero = Rational::zero();
        if self.lo >= zero {
            self.clone()
        } else if self.hi <= zero {
            Enclosure {
                lo: -&self.hi,
                hi: -&self.lo,
            }
        } else {
            let top = if -&self.lo > self.hi {
                -&self.lo
            } else {
                self.hi.clone()
            };
            Enclosure { lo: zero, hi: top }
        }
    }
}

/// Fallible constructor mirroring [`Enclosure::new`].
pub fn make_enclosure(lo: Rational, hi: Rational) -> Result<Enclosure> {
    Enclosure::new(lo, hi)
}

pub fn enclosure_width(e: &Enclosure) -> Rational {
    e.width()
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
