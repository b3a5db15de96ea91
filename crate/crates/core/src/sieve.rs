//! The deletion sieve on finite prefixes of size sequences.
//!
//! Pass `k` removes every surviving entry strictly bigger than `Δ_k`. A
//! finite prefix can never decide a limit; the report only records what
//! the passes did.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Finite list of positive rationals, indexed from 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SizeSequence {
    values: Vec<Rational>,
}

impl SizeSequence {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_positive()) {
            return Err(Error::NonPositiveSize { index: i + 1 });
        }
        Ok(SizeSequence { values })
    }

    /// `1/1, 1/2, ..., 1/len`
    pub fn harmonic(len: usize) -> Self {
        SizeSequence {
            values: (1..=len)
                .map(|n| Rational::new(BigInt::one(), BigInt::from(n)))
                .collect(),
        }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// 1-based access.
    pub fn get(&self, index: usize) -> Option<&Rational> {
        index.checked_sub(1).and_then(|i| self.values.get(i))
    }

    /// The subsequence picked out by a strictly increasing 1-based selector.
    pub fn subsequence(&self, selector: &[usize]) -> Result<SizeSequence> {
        check_selector(selector, self.len())?;
        Ok(SizeSequence {
            values: selector.iter().map(|&i| self.values[i - 1].clone()).collect(),
        })
    }
}

/// Strictly decreasing positive thresholds `Δ_1 > Δ_2 > ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ladder {
    levels: Vec<Rational>,
}

impl Ladder {
    pub fn new(levels: Vec<Rational>) -> Result<Self> {
        for (i, level) in levels.iter().enumerate() {
            if !level.is_positive() || (i > 0 && level >= &levels[i - 1]) {
                return Err(Error::BadLadder { level: i + 1 });
            }
        }
        Ok(Ladder { levels })
    }

    /// Default ladder `Δ_k = 1/k`, `k = 1..=count`.
    pub fn harmonic(count: usize) -> Self {
        Ladder {
            levels: (1..=count)
                .map(|k| Rational::new(BigInt::one(), BigInt::from(k)))
                .collect(),
        }
    }

    pub fn levels(&self) -> &[Rational] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveLevel {
    pub level: usize,
    pub delta: Rational,
    /// 1-based indices removed by this pass, ascending.
    pub deleted: Vec<usize>,
    pub last_deleted: Option<usize>,
    /// Largest survivor after the pass; `None` once nothing survives.
    pub residual_max: Option<Rational>,
    pub survivors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SieveReport {
    pub input_len: usize,
    pub levels: Vec<SieveLevel>,
}

impl SieveReport {
    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

pub fn sieve(seq: &SizeSequence, ladder: &Ladder, levels: usize) -> Result<SieveReport> {
    if levels > ladder.len() {
        return Err(Error::LadderTooShort {
            requested: levels,
            available: ladder.len(),
        });
    }
    if seq.is_empty() {
        return Ok(SieveReport::default());
    }

    let mut alive: Vec<usize> = (1..=seq.len()).collect();
    let mut report = SieveReport {
        input_len: seq.len(),
        levels: Vec::with_capacity(levels),
    };
    for (k, delta) in ladder.levels()[..levels].iter().enumerate() {
        let (deleted, kept): (Vec<usize>, Vec<usize>) =
            alive.iter().partition(|&&i| &seq.values[i - 1] > delta);
        alive = kept;
        let residual_max = alive.iter().map(|&i| &seq.values[i - 1]).max().cloned();
        report.levels.push(SieveLevel {
            level: k + 1,
            delta: delta.clone(),
            last_deleted: deleted.last().copied(),
            deleted,
            residual_max,
            survivors: alive.len(),
        });
    }
    Ok(report)
}

/// Smallest 1-based index from which every value stays below `delta`.
pub fn eventually_below(seq: &SizeSequence, delta: &Rational) -> Option<usize> {
    match seq.values.iter().rposition(|v| v >= delta) {
        None if seq.is_empty() => None,
        None => Some(1),
        Some(i) if i + 1 == seq.len() => None,
        Some(i) => Some(i + 2),
    }
}

fn check_selector(selector: &[usize], len: usize) -> Result<()> {
    for (pos, &i) in selector.iter().enumerate() {
        if i == 0 || i > len {
            return Err(Error::BadSelector {
                position: pos + 1,
                reason: format!("index {i} outside 1..={len}"),
            });
        }
        if pos > 0 && i <= selector[pos - 1] {
            return Err(Error::BadSelector {
                position: pos + 1,
                reason: "indices must be strictly increasing".into(),
            });
        }
    }
    Ok(())
}

/// First original index in the selected subsequence whose value is below
/// `delta`, or `None` when the subsequence has no such member.
pub fn subsequence_min_check(
    seq: &SizeSequence,
    selector: &[usize],
    delta: &Rational,
) -> Result<Option<usize>> {
    check_selector(selector, seq.len())?;
    Ok(selector.iter().copied().find(|&i| &seq.values[i - 1] < delta))
}

/// Selector for "the `inner`-th members of the `outer` subsequence".
pub fn compose_selectors(outer: &[usize], inner: &[usize]) -> Result<Vec<usize>> {
    check_selector(inner, outer.len())?;
    Ok(inner.iter().map(|&j| outer[j - 1]).collect())
}

/// Greedy witness of a null sub-subsequence inside `selector`: for each
/// ladder level in turn, the first later member below `Δ_k`. Stops early
/// when the prefix runs out; the returned indices are original positions.
pub fn null_subsequence_witness(
    seq: &SizeSequence,
    selector: &[usize],
    ladder: &Ladder,
    levels: usize,
) -> Result<Vec<usize>> {
    check_selector(selector, seq.len())?;
    if levels > ladder.len() {
        return Err(Error::LadderTooShort {
            requested: levels,
            available: ladder.len(),
        });
    }
    let mut witness = Vec::new();
    let mut rest = selector;
    for delta in &ladder.levels()[..levels] {
        match subsequence_min_check(seq, rest, delta)? {
            Some(i) => {
                witness.push(i);
                let used = rest
                    .iter()
                    .position(|&j| j == i)
                    .expect("witness comes from rest");
                rest = &rest[used + 1..];
            }
            None => break,
        }
    }
    Ok(witness)
}
