//! Construction of a real number `Ω` resonant with a super-lacunary
//! sequence: every `n_s · Ω` sits within `2^-s` of an odd integer.
//!
//! The odd chain is built by the recursion
//! `|o_k − o_(k−1) · n_(k+1)/n_k| ≤ 1` with the implicit start `o_0 = 1`, so
//! the approximants `q_k = o_(k−1)/n_k` telescope with steps at most `1/n_k`.
//! Because the growth law makes `Σ_{j>K} 1/n_j < 1/(2^K n_K)`, the interval
//! `q_K ± 1/(2^K n_K)` contains the limit of every admissible extension.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{ceil_odd, pow2, Enclosure, Rational};
use crate::lacunary::LacunarySequence;

/// Smallest odd `o` with `|o − target| ≤ 1`.
fn nearest_odd_below_tie(target: &Rational) -> BigInt {
    ceil_odd(&(target - Rational::one()))
}

/// Odd integer within distance 1 of `n2/n1`; the smaller one on a tie.
pub fn select_base_odd(n1: &BigInt, n2: &BigInt) -> BigInt {
    select_next_odd(&BigInt::one(), n1, n2)
}

/// Odd integer within distance 1 of `prev · nk1/nk`; the smaller one on a tie.
pub fn select_next_odd(prev: &BigInt, nk: &BigInt, nk1: &BigInt) -> BigInt {
    nearest_odd_below_tie(&Rational::new(prev * nk1, nk.clone()))
}

/// Odd numerators `o_1..o_(K−1)`; `odds[k−1]` pairs with `n_(k+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddChain {
    pub odds: Vec<BigInt>,
}

/// Approximants `q_1 = 1/n_1`, `q_k = o_(k−1)/n_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximantChain {
    pub q: Vec<Rational>,
}

impl OddChain {
    /// Builds the chain along consecutive terms, starting from `first`
    /// as the numerator paired with `terms[0]`.
    pub(crate) fn along(terms: &[BigInt], first: BigInt) -> Vec<BigInt> {
        let mut odds = Vec::with_capacity(terms.len());
        let mut prev = first;
        for pair in terms.windows(2) {
            let next = select_next_odd(&prev, &pair[0], &pair[1]);
            odds.push(next.clone());
            prev = next;
        }
        odds
    }
}

pub fn approximants(seq: &LacunarySequence) -> (OddChain, ApproximantChain) {
    let terms = seq.terms();
    let odds = OddChain::along(terms, BigInt::one());
    let q = std::iter::once(Rational::new(BigInt::one(), terms[0].clone()))
        .chain(
            odds.iter()
                .zip(&terms[1..])
                .map(|(o, n)| Rational::new(o.clone(), n.clone())),
        )
        .collect();
    (OddChain { odds }, ApproximantChain { q })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaEnclosure {
    pub enclosure: Enclosure,
    pub depth: usize,
    /// `q_K`
    pub center: Rational,
    /// `1/(2^K · n_K)`
    pub radius: Rational,
}

pub fn omega_enclosure(seq: &LacunarySequence) -> Result<OmegaEnclosure> {
    if seq.depth() < 2 {
        return Err(Error::InsufficientDepth {
            depth: seq.depth(),
            required: 2,
        });
    }
    let (_, chain) = approximants(seq);
    let center = chain.q.last().cloned().expect("depth >= 2");
    let radius = seq.tail_majorant();
    Ok(OmegaEnclosure {
        enclosure: Enclosure::centered(&center, &radius),
        depth: seq.depth(),
        center,
        radius,
    })
}

/// Exact enclosure of `|n·x − odd|` for `x` ranging over `omega`.
pub fn residual_enclosure(omega: &Enclosure, n: &BigInt, odd: &BigInt) -> Enclosure {
    omega.scale(n).shift(&-Rational::from_integer(odd.clone())).abs()
}

/// Certified residual `Θ_(n_s) = |n_s·Ω − (2z+1)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaResidual {
    pub s: usize,
    pub n_s: BigInt,
    /// `z = m_(s−1)`
    pub z: BigInt,
    /// `2z + 1`
    pub odd: BigInt,
    pub theta_bounds: Enclosure,
    /// `2^-s`
    pub target: Rational,
    /// `theta_bounds.hi < 2^-s`, decided exactly.
    pub certified: bool,
}

/// Largest `s` whose residual the given depth is allowed to certify.
pub fn max_certified_s(depth: usize) -> usize {
    depth.saturating_sub(2)
}

pub(crate) fn check_s_range(s: usize, depth: usize) -> Result<()> {
    if s < 2 || s > max_certified_s(depth) {
        return Err(Error::InsufficientDepthForS {
            s,
            depth,
            max: max_certified_s(depth),
        });
    }
    Ok(())
}

pub fn theta(seq: &LacunarySequence, s: usize) -> Result<ThetaResidual> {
    check_s_range(s, seq.depth())?;
    let omega = omega_enclosure(seq)?;
    let (odds, _) = approximants(seq);
    Ok(theta_residual(&omega.enclosure, seq, &odds, s))
}

/// Residuals for every `s` in the certified range.
pub fn theta_table(seq: &LacunarySequence) -> Result<Vec<ThetaResidual>> {
    let omega = omega_enclosure(seq)?;
    let (odds, _) = approximants(seq);
    Ok((2..=max_certified_s(seq.depth()))
        .map(|s| theta_residual(&omega.enclosure, seq, &odds, s))
        .collect())
}

pub(crate) fn theta_residual(
    omega: &Enclosure,
    seq: &LacunarySequence,
    odds: &OddChain,
    s: usize,
) -> ThetaResidual {
    let n_s = seq.terms()[s - 1].clone();
    let odd = odds.odds[s - 2].clone();
    let z: BigInt = (&odd - BigInt::one()) / 2;
    let theta_bounds = residual_enclosure(omega, &n_s, &odd);
    let target = Rational::new(BigInt::one(), pow2(s));
    let certified = theta_bounds.hi() < &target;
    ThetaResidual {
        s,
        n_s,
        z,
        odd,
        theta_bounds,
        target,
        certified,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::{Signed, ToPrimitive};

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(b(p), b(q))
    }

    /// Scan every odd integer in a window around the target.
    fn brute_force_odd(target: &Rational) -> BigInt {
        let f = target.floor().to_integer();
        let mut o: BigInt = &f - 3;
        loop {
            if o.is_odd() && (Rational::from_integer(o.clone()) - target).abs() <= Rational::one() {
                return o;
            }
            o += 1;
            assert!(o < &f + 4);
        }
    }

    #[test]
    fn base_selection_examples() {
        assert_eq!(select_base_odd(&b(3), &b(13)), b(5));
        assert_eq!(select_base_odd(&b(1), &b(4)), b(3));
        assert_eq!(select_base_odd(&b(2), &b(10)), b(5));
    }

    #[test]
    fn next_selection_examples() {
        assert_eq!(select_next_odd(&b(5), &b(13), &b(105)), b(41));
        assert_eq!(select_next_odd(&b(41), &b(105), &b(1681)), b(657));
        assert_eq!(select_next_odd(&b(3), &b(2), &b(4)), b(5));
        assert_eq!((r(41, 1) - r(525, 13)).abs(), r(8, 13));
    }

    #[test]
    fn selection_matches_brute_force() {
        for num in -40..200 {
            for den in 1..15 {
                let t = r(num, den);
                assert_eq!(nearest_odd_below_tie(&t), brute_force_odd(&t), "{t}");
            }
        }
    }

    #[test]
    fn approximant_examples() {
        let seq = LacunarySequence::validate(vec![b(3), b(13)]).unwrap();
        let (odds, q) = approximants(&seq);
        assert_eq!(odds.odds, vec![b(5)]);
        assert_eq!(q.q, vec![r(1, 3), r(5, 13)]);

        let seq = LacunarySequence::validate(vec![b(3), b(13), b(105)]).unwrap();
        let (odds, q) = approximants(&seq);
        assert_eq!(odds.odds, vec![b(5), b(41)]);
        assert_eq!(q.q, vec![r(1, 3), r(5, 13), r(41, 105)]);
        assert_eq!((&q.q[1] - &q.q[2]).abs(), r(8, 1365));
        assert!(r(8, 1365) <= r(1, 105));

        let seq = LacunarySequence::validate(vec![b(3)]).unwrap();
        let (odds, q) = approximants(&seq);
        assert!(odds.odds.is_empty());
        assert_eq!(q.q, vec![r(1, 3)]);
    }

    #[test]
    fn enclosure_examples() {
        let seq = LacunarySequence::generate(4, 3).unwrap();
        let om = omega_enclosure(&seq).unwrap();
        assert_eq!(om.center, r(657, 1681));
        assert_eq!(om.radius, r(1, 26896));
        assert!((om.center.to_f64().unwrap() - 0.390839).abs() < 5e-7);

        // deeper approximants stay inside
        let deep = LacunarySequence::generate(6, 3).unwrap();
        let (_, q) = approximants(&deep);
        assert!(om.enclosure.contains(&q.q[4]));
        assert!(om.enclosure.contains(&q.q[5]));

        let short = LacunarySequence::generate(2, 3).unwrap();
        let om2 = omega_enclosure(&short).unwrap();
        assert_eq!(om2.center, r(5, 13));
        assert_eq!(om2.radius, r(1, 52));
        assert!(om2.enclosure.contains(&r(657, 1681)));

        let om3 = omega_enclosure(&LacunarySequence::generate(3, 3).unwrap()).unwrap();
        assert!(om2.enclosure.contains_enclosure(&om3.enclosure));
    }

    #[test]
    fn depth_one_is_rejected() {
        let seq = LacunarySequence::generate(1, 3).unwrap();
        assert_eq!(omega_enclosure(&seq).unwrap_err().id(), "insufficient-depth");
    }

    #[test]
    fn theta_examples_depth_six() {
        // frozen from an independent Fraction-based computation
        let seq = LacunarySequence::generate(6, 3).unwrap();
        let expected = [
            (2, 5, 0.08105379709929815),
            (3, 41, 0.03928066887894659),
            (4, 657, 0.01934099414770679),
        ];
        for (s, odd, hi) in expected {
            let t = theta(&seq, s).unwrap();
            assert_eq!(t.odd, b(odd));
            assert_eq!(&t.z * 2 + 1, t.odd);
            assert!(
                (t.theta_bounds.hi().to_f64().unwrap() - hi).abs() < 1e-15,
                "s = {s}"
            );
            assert!(t.theta_bounds.lo() >= &Rational::from_integer(b(0)));
            assert!(t.certified);
        }
        let mid = omega_enclosure(&seq)
            .unwrap()
            .enclosure
            .midpoint()
            .to_f64()
            .unwrap();
        assert!((13.0 * mid - 5.081).abs() < 1e-3);
    }

    #[test]
    fn theta_range_is_enforced() {
        let seq = LacunarySequence::generate(6, 3).unwrap();
        for s in [0, 1, 5, 6, 7] {
            assert_eq!(
                theta(&seq, s).unwrap_err().id(),
                "insufficient-depth-for-s",
                "s = {s}"
            );
        }
        let table = theta_table(&seq).unwrap();
        assert_eq!(table.iter().map(|t| t.s).collect::<Vec<_>>(), vec![2, 3, 4]);
        assert!(theta_table(&LacunarySequence::generate(3, 3).unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn odd_chain_reverifies_independently() {
        for seed in [1, 2, 3, 5] {
            let seq = LacunarySequence::generate(10, seed).unwrap();
            let (odds, q) = approximants(&seq);
            let n = seq.terms();
            let mut prev = BigInt::one();
            for (k, o) in odds.odds.iter().enumerate() {
                assert!(o.is_odd() && o.is_positive());
                let target = Rational::new(&prev * &n[k + 1], n[k].clone());
                assert!((Rational::from_integer(o.clone()) - target).abs() <= Rational::one());
                prev = o.clone();
            }
            assert!(q.q.iter().all(|x| x.is_positive()));
        }
    }
}
