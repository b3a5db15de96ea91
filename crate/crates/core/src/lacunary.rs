//! Finite prefixes of super-lacunary sequences: positive integers with
//! `n_k > 2^k · n_(k-1)` for every 1-based index `k >= 2`.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::{pow2, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LacunarySequence {
    terms: Vec<BigInt>,
}

impl LacunarySequence {
    /// Checks the growth law on every adjacent pair.
    pub fn validate(terms: Vec<BigInt>) -> Result<Self> {
        let first = terms.first().ok_or(Error::EmptySequence)?;
        if !first.is_positive() {
            return Err(Error::NonPositiveTerm { value: first.clone() });
        }
        for (i, pair) in terms.windows(2).enumerate() {
            let k = i + 2;
            let bound = pow2(k) * &pair[0];
            if pair[1] <= bound {
                return Err(Error::GrowthViolation {
                    k,
                    term: pair[1].clone(),
                    bound,
                });
            }
        }
        Ok(LacunarySequence { terms })
    }

    /// Canonical witness: `n_1 = seed`, `n_k = 2^k · n_(k-1) + 1`.
    pub fn generate(depth: usize, seed: impl Into<BigInt>) -> Result<Self> {
        let seed = seed.into();
        if depth == 0 {
            return Err(Error::InvalidParameter {
                name: "depth",
                reason: "must be at least 1".into(),
            });
        }
        if !seed.is_positive() {
            return Err(Error::InvalidParameter {
                name: "seed",
                reason: "must be at least 1".into(),
            });
        }
        let mut terms = Vec::with_capacity(depth);
        terms.push(seed);
        for k in 2..=depth {
            let next = pow2(k) * &terms[k - 2] + BigInt::one();
            terms.push(next);
        }
        Ok(LacunarySequence { terms })
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    /// Number of terms `K`.
    pub fn depth(&self) -> usize {
        self.terms.len()
    }

    /// 1-based access, `term(1) = n_1`.
    pub fn term(&self, k: usize) -> Option<&BigInt> {
        k.checked_sub(1).and_then(|i| self.terms.get(i))
    }

    pub fn last(&self) -> &BigInt {
        self.terms.last().expect("validated sequences are nonempty")
    }

    /// The first `depth` terms, which again satisfy the growth law.
    pub fn prefix(&self, depth: usize) -> Result<Self> {
        if depth == 0 || depth > self.terms.len() {
            return Err(Error::InvalidParameter {
                name: "depth",
                reason: format!("prefix length must lie in 1..={}", self.terms.len()),
            });
        }
        Ok(LacunarySequence {
            terms: self.terms[..depth].to_vec(),
        })
    }

    /// Strict upper bound `1/(2^K · n_K)` on `Σ_{j>K} 1/n_j` for any
    /// extension of this prefix that keeps the growth law.
    pub fn tail_majorant(&self) -> Rational {
        Rational::new(BigInt::one(), pow2(self.depth()) * self.last())
    }
}

/// Free-function form of [`LacunarySequence::validate`].
pub fn validate(terms: Vec<BigInt>) -> Result<LacunarySequence> {
    LacunarySequence::validate(terms)
}

/// Free-function form of [`LacunarySequence::generate`].
pub fn default_generator(depth: usize, seed: impl Into<BigInt>) -> Result<LacunarySequence> {
    LacunarySequence::generate(depth, seed)
}

impl TryFrom<Vec<BigInt>> for LacunarySequence {
    type Error = Error;

    fn try_from(terms: Vec<BigInt>) -> Result<Self> {
        LacunarySequence::validate(terms)
    }
}

impl AsRef<[BigInt]> for LacunarySequence {
    fn as_ref(&self) -> &[BigInt] {
        &self.terms
    }
}
