//! Steering `Ω` into a prescribed subdivision `[(μ−1)/ν, μ/ν]` of `[0, 2]`.
//!
//! The chain starts at the first term `ν_1 > 6ν`, whose odd multiple of
//! `1/ν_1` is placed in the middle third of the target; the consecutive
//! terms after it then follow the same odd-chain recursion as the plain
//! construction. The middle-third margin `1/(3ν)` absorbs the drift.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::{ceil_odd, Enclosure, Rational};
use crate::lacunary::LacunarySequence;
use crate::omega::{residual_enclosure, OddChain};

/// The `μ`-th of the `2ν` equal subintervals of `[0, 2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TargetSpec {
    mu: u64,
    nu: u64,
}

impl TargetSpec {
    pub fn new(mu: u64, nu: u64) -> Result<Self> {
        if nu == 0 || mu == 0 || mu > 2 * nu {
            return Err(Error::BadTarget { mu, nu });
        }
        Ok(TargetSpec { mu, nu })
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    pub fn nu(&self) -> u64 {
        self.nu
    }

    /// `[(μ−1)/ν, μ/ν]`
    pub fn interval(&self) -> Enclosure {
        let nu = BigInt::from(self.nu);
        Enclosure::new(
            Rational::new(BigInt::from(self.mu - 1), nu.clone()),
            Rational::new(BigInt::from(self.mu), nu),
        )
        .expect("mu - 1 < mu")
    }
}

/// `[(3μ−2)/(3ν), (3μ−1)/(3ν)]`
pub fn middle_third(spec: &TargetSpec) -> Enclosure {
    let den = BigInt::from(3 * spec.nu);
    Enclosure::new(
        Rational::new(BigInt::from(3 * spec.mu - 2), den.clone()),
        Rational::new(BigInt::from(3 * spec.mu - 1), den),
    )
    .expect("3mu - 2 < 3mu - 1")
}

/// First term strictly greater than `6ν`, with its 1-based index.
pub fn find_nu1(seq: &LacunarySequence, nu: u64) -> Result<(usize, BigInt)> {
    let bound = BigInt::from(6) * BigInt::from(nu);
    seq.terms()
        .iter()
        .position(|n| n > &bound)
        .map(|i| (i + 1, seq.terms()[i].clone()))
        .ok_or(Error::PrefixTooShort { bound })
}

/// Smallest odd `o` with `o/ν_1` in the middle third.
pub fn base_odd_in_third(nu1: &BigInt, spec: &TargetSpec) -> Result<BigInt> {
    let third = middle_third(spec);
    let scale = Rational::from_integer(nu1.clone());
    let o = ceil_odd(&(third.lo() * &scale));
    if Rational::from_integer(o.clone()) <= third.hi() * &scale {
        Ok(o)
    } else {
        Err(Error::NoOddInThird { nu1: nu1.clone() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetedOmega {
    pub spec: TargetSpec,
    /// 1-based position of `ν_1` in the input sequence.
    pub nu1_index: usize,
    pub nu_chain: Vec<BigInt>,
    pub odd_chain: Vec<BigInt>,
    pub xi_chain: Vec<Rational>,
    pub enclosure: Enclosure,
    /// Tail radius `1/(2^L ν_L)` with `L` counted along the `ν` chain.
    pub radius: Rational,
    /// `|ξ_L − ξ_1| + radius`, an upper bound on `|Ω − ξ_1|`.
    pub drift_bound: Rational,
    /// `drift_bound < 1/(3ν)`
    pub drift_within_margin: bool,
    /// `enclosure ⊆ [(μ−1)/ν, μ/ν]`
    pub contained: bool,
}

impl TargetedOmega {
    /// Certified residual enclosures `|ν_j·Ω − (2μ_j+1)|` along the chain.
    pub fn residuals(&self) -> Vec<Enclosure> {
        self.nu_chain
            .iter()
            .zip(&self.odd_chain)
            .map(|(nu, odd)| residual_enclosure(&self.enclosure, nu, odd))
            .collect()
    }
}

pub fn targeted_omega(seq: &LacunarySequence, spec: &TargetSpec) -> Result<TargetedOmega> {
    let (nu1_index, nu1) = find_nu1(seq, spec.nu)?;
    let first = base_odd_in_third(&nu1, spec)?;

    let nu_chain = seq.terms()[nu1_index - 1..].to_vec();
    let mut odd_chain = vec![first.clone()];
    odd_chain.extend(OddChain::along(&nu_chain, first));
    let xi_chain: Vec<Rational> = odd_chain
        .iter()
        .zip(&nu_chain)
        .map(|(o, n)| Rational::new(o.clone(), n.clone()))
        .collect();

    // A tail of a 2^k-growth sequence obeys the growth law under its own
    // indexing, so the plain tail majorant applies to the ν chain.
    let sub = LacunarySequence::validate(nu_chain.clone())?;
    let radius = sub.tail_majorant();
    let center = xi_chain.last().expect("chain starts at nu_1");
    let enclosure = Enclosure::centered(center, &radius);

    let drift_bound = (center - &xi_chain[0]).abs() + &radius;
    let margin = Rational::new(BigInt::one(), BigInt::from(3 * spec.nu));
    let contained = spec.interval().contains_enclosure(&enclosure);
    if !contained {
        return Err(Error::InsufficientDepth {
            depth: seq.depth(),
            required: seq.depth() + 1,
        });
    }

    Ok(TargetedOmega {
        spec: *spec,
        nu1_index,
        nu_chain,
        odd_chain,
        xi_chain,
        enclosure,
        radius,
        drift_within_margin: drift_bound < margin,
        drift_bound,
        contained,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(b(p), b(q))
    }

    fn spec(mu: u64, nu: u64) -> TargetSpec {
        TargetSpec::new(mu, nu).unwrap()
    }

    #[test]
    fn middle_third_examples() {
        assert_eq!(
            middle_third(&spec(1, 1)),
            Enclosure::new(r(1, 3), r(2, 3)).unwrap()
        );
        assert_eq!(
            middle_third(&spec(1, 2)),
            Enclosure::new(r(1, 6), r(1, 3)).unwrap()
        );
        assert_eq!(
            middle_third(&spec(5, 3)),
            Enclosure::new(r(13, 9), r(14, 9)).unwrap()
        );
        for (mu, nu) in [(1, 1), (2, 1), (3, 4), (8, 4)] {
            let s = spec(mu, nu);
            let third = middle_third(&s);
            assert_eq!(third.width(), r(1, 3 * nu as i64));
            assert_eq!(third.midpoint(), s.interval().midpoint());
        }
    }

    #[test]
    fn bad_targets_are_rejected() {
        for (mu, nu) in [(0, 1), (3, 1), (1, 0), (9, 4)] {
            assert_eq!(TargetSpec::new(mu, nu).unwrap_err().id(), "bad-target");
        }
    }

    #[test]
    fn nu1_examples() {
        let seq = LacunarySequence::generate(4, 3).unwrap();
        assert_eq!(find_nu1(&seq, 1).unwrap(), (2, b(13)));
        assert_eq!(find_nu1(&seq, 2).unwrap(), (2, b(13)));
        assert_eq!(find_nu1(&seq, 20).unwrap(), (4, b(1681)));
        assert_eq!(find_nu1(&seq, 300).unwrap_err().id(), "prefix-too-short");
    }

    #[test]
    fn base_odd_examples() {
        // scan odd candidates upward as the oracle
        let scan = |nu1: i64, s: &TargetSpec| {
            let third = middle_third(s);
            (1..).step_by(2).find(|&o| third.contains(&r(o, nu1))).unwrap()
        };
        for (nu1, mu, nu, expected) in [(13, 1, 1, 5), (13, 1, 2, 3), (13, 2, 1, 19)] {
            let s = spec(mu, nu);
            assert_eq!(scan(nu1, &s), expected);
            assert_eq!(base_odd_in_third(&b(nu1), &s).unwrap(), b(expected));
        }
    }

    #[test]
    fn base_odd_can_be_absent_below_the_floor() {
        // ν_1 = 4 is below 6ν; the middle third [1/3, 2/3] holds no o/4 with o odd
        assert_eq!(
            base_odd_in_third(&b(4), &spec(1, 1)).unwrap_err().id(),
            "no-odd-in-third"
        );
    }

    #[test]
    fn targeted_examples() {
        let seq = LacunarySequence::generate(6, 3).unwrap();
        for (mu, nu, xi1) in [(1, 1, r(5, 13)), (1, 2, r(3, 13)), (2, 1, r(19, 13))] {
            let s = spec(mu, nu);
            let t = targeted_omega(&seq, &s).unwrap();
            assert_eq!(t.xi_chain[0], xi1);
            assert!(middle_third(&s).contains(&t.xi_chain[0]));
            assert!(s.interval().contains_enclosure(&t.enclosure));
            assert!(t.contained && t.drift_within_margin);
            for ((xi, o), n) in t.xi_chain.iter().zip(&t.odd_chain).zip(&t.nu_chain) {
                assert_eq!(xi, &Rational::new(o.clone(), n.clone()));
            }
        }
    }

    #[test]
    fn chain_follows_recursion_and_residuals_shrink() {
        let seq = LacunarySequence::generate(8, 3).unwrap();
        let t = targeted_omega(&seq, &spec(3, 2)).unwrap();
        for k in 1..t.odd_chain.len() {
            let target = Rational::new(&t.odd_chain[k - 1] * &t.nu_chain[k], t.nu_chain[k - 1].clone());
            assert!((Rational::from_integer(t.odd_chain[k].clone()) - target).abs() <= Rational::one());
            let step = (&t.xi_chain[k - 1] - &t.xi_chain[k]).abs();
            assert!(step <= Rational::new(BigInt::one(), t.nu_chain[k].clone()));
        }
        let res = t.residuals();
        // the last residual is dominated by the enclosure width itself
        for w in res[..res.len() - 1].windows(2) {
            assert!(w[1].hi() < w[0].hi());
        }
        assert!(res.iter().all(|e| e.lo() >= &Rational::zero()));
    }
}
