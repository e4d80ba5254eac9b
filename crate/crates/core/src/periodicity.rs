//! Periodicity of generalized pseudostandard words.
//!
//! `u(Δ, Θ)` is periodic iff there are `a`, `ϑ` and `n₀` with
//! `δ_{n+1} = a ⇔ ϑ_n = ϑ` for all `n > n₀`. Writing
//! `b_n = [δ_{n+1} = 1] xor [ϑ_n = R]`, this says `b_n` is eventually
//! constant, which one aligned period past both preperiods decides.

use alloc::vec::Vec;
use core::fmt;

use crate::closure::PrefixGenerator;
use crate::complexity::FactorIndex;
use crate::error::GrowthCapExceeded;
use crate::normalize::normalize;
use crate::sequence::BidirectiveSequence;
use crate::word::{Antimorphism, FiniteWord, Letter};

/// `(a, ϑ, n₀)` such that `δ_{n+1} = a ⇔ ϑ_n = ϑ` for every `n > n₀`;
/// `n₀` is the least such index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub a: Letter,
    pub theta: Antimorphism,
    pub n0: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionVerdict {
    Holds(Witness),
    /// Indices past both preperiods with `δ_{n₁+1} = 1 ⇔ ϑ_{n₁} = R` and
    /// `δ_{n₂+1} = 1 ⇔ ϑ_{n₂} = E`; the pattern repeats every period, so no
    /// choice of `(a, ϑ, n₀)` works.
    Fails { n1: usize, n2: usize },
}

impl ConditionVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ConditionVerdict::Holds(_))
    }
}

fn b(seq: &BidirectiveSequence, n: usize) -> bool {
    (seq.delta(n + 1) == Letter::One) ^ (seq.theta(n) == Antimorphism::R)
}

pub fn satisfies_condition(seq: &BidirectiveSequence) -> ConditionVerdict {
    let start = seq.preperiod_len() + 1;
    let period = seq.period_len();
    let tail = start..start + period;
    let first_false = tail.clone().find(|&n| !b(seq, n));
    let first_true = tail.clone().find(|&n| b(seq, n));
    let c = match (first_false, first_true) {
        (Some(n1), Some(n2)) => return ConditionVerdict::Fails { n1, n2 },
        (None, _) => true,
        (_, None) => false,
    };
    let n0 = (1..start).rev().find(|&n| b(seq, n) != c).unwrap_or(0);
    // c = 0: δ = 1 exactly when ϑ = R. c = 1: δ = 0 exactly when ϑ = R.
    let a = if c { Letter::Zero } else { Letter::One };
    ConditionVerdict::Holds(Witness {
        a,
        theta: Antimorphism::R,
        n0,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeriodError {
    ConditionFails { n1: usize, n2: usize },
    /// The constructed candidate does not tile the generated word.
    Inconsistent(&'static str),
    GrowthCap(GrowthCapExceeded),
}

impl fmt::Display for PeriodError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodError::ConditionFails { n1, n2 } => write!(
                f,
                "sequence fails the periodicity condition (witnessed at n = {n1} and n = {n2})"
            ),
            PeriodError::Inconsistent(what) => write!(f, "internal inconsistency: {what}"),
            PeriodError::GrowthCap(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for PeriodError {}

impl From<GrowthCapExceeded> for PeriodError {
    fn from(e: GrowthCapExceeded) -> Self {
        PeriodError::GrowthCap(e)
    }
}

/// `w_1 … w_steps` of `seq`.
fn chain_words(seq: &BidirectiveSequence, steps: usize) -> Result<Vec<FiniteWord>, GrowthCapExceeded> {
    let mut generator = PrefixGenerator::new(seq);
    let mut lens = Vec::with_capacity(steps);
    for _ in 0..steps {
        lens.push(generator.step()?.len);
    }
    let word = generator.word_prefix(generator.len());
    Ok(lens.into_iter().map(|l| word.prefix(l)).collect())
}

/// The primitive period of `u(Δ, Θ)`.
///
/// When both `E` and `R` recur in `Θ` the sequence is normalized first;
/// its tail then alternates as `(aā)^ω, (ϑ̄ϑ)^ω` from some `n₀ + 1` on with
/// `ϑ_{n₀} = ϑ`, and the period is read off
/// `w_{n₀+1} · w̄ · w_{n₀}⁻¹` with `w = w_{n₀}⁻¹ w_{n₀+1}` and `w̄` its
/// complement. Otherwise `Θ` is eventually constant and the period is
/// `w_{n₀+1} w_{n₀}⁻¹` once both streams have become constant.
///
/// The candidate is reduced to its primitive root and checked against the
/// generated word before it is returned.
pub fn extract_period(seq: &BidirectiveSequence) -> Result<FiniteWord, PeriodError> {
    if let ConditionVerdict::Fails { n1, n2 } = satisfies_condition(seq) {
        return Err(PeriodError::ConditionFails { n1, n2 });
    }
    let both_recur = seq.theta_recurs(Antimorphism::E) && seq.theta_recurs(Antimorphism::R);
    let (candidate, anchor_len) = if both_recur {
        alternating_case(seq)?
    } else {
        constant_case(seq)?
    };
    let period = candidate.primitive_root();
    verify(seq, &period, anchor_len)?;
    Ok(period)
}

fn constant_case(seq: &BidirectiveSequence) -> Result<(FiniteWord, usize), PeriodError> {
    let (delta_pre, theta_pre) = seq.minimal_preperiod_lens();
    let n0 = delta_pre.max(theta_pre + 1);
    let words = chain_words(seq, n0 + 1)?;
    let (prev, next) = (&words[n0 - 1], &words[n0]);
    let candidate = next
        .strip_suffix(prev)
        .ok_or(PeriodError::Inconsistent("w_(n0) is not a suffix of w_(n0+1)"))?;
    Ok((candidate, next.len()))
}

fn alternating_case(seq: &BidirectiveSequence) -> Result<(FiniteWord, usize), PeriodError> {
    let horizon = 16 * (seq.preperiod_len() + seq.period_len() + 4) * seq.period_len().max(2);
    let normalized = normalize(seq, horizon)
        .normalized
        .ok_or(PeriodError::Inconsistent("normalization did not fold"))?;
    let stable_from = normalized.preperiod_len() + 1;
    let span = stable_from + 2 * normalized.period_len() + 2;
    let alternates_from = |start: usize| {
        (start..start.max(stable_from) + span).all(|i| {
            normalized.delta(i + 1) != normalized.delta(i) && normalized.theta(i + 1) != normalized.theta(i)
        })
    };
    let n0 = (1..=span)
        .find(|&n| alternates_from(n + 1) && normalized.theta(n) == normalized.theta(n + 2))
        .ok_or(PeriodError::Inconsistent("normalized tail does not alternate"))?;
    let words = chain_words(&normalized, n0 + 1)?;
    let (prev, next) = (&words[n0 - 1], &words[n0]);
    let middle = next
        .strip_prefix(prev)
        .ok_or(PeriodError::Inconsistent("w_(n0) is not a prefix of w_(n0+1)"))?;
    let candidate = next
        .concat(&middle.complemented())
        .strip_suffix(prev)
        .ok_or(PeriodError::Inconsistent("w_(n0) is not a suffix of the period word"))?;
    Ok((candidate, next.len()))
}

fn verify(seq: &BidirectiveSequence, period: &FiniteWord, anchor_len: usize) -> Result<(), PeriodError> {
    if period.is_empty() {
        return Err(PeriodError::Inconsistent("empty period"));
    }
    let len = (10 * period.len()).max(2 * anchor_len);
    let mut generator = PrefixGenerator::new(seq);
    generator.extend_to(len)?;
    let bits = generator.bits();
    let p = period.to_bits();
    if (0..len).all(|i| bits[i] == p[i % p.len()]) {
        Ok(())
    } else {
        Err(PeriodError::Inconsistent("candidate period does not tile the word"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicityVerdict {
    pub periodic: bool,
    pub witness: Option<Witness>,
    pub period: Option<FiniteWord>,
    pub refutation: Option<(usize, usize)>,
}

pub fn is_periodic(seq: &BidirectiveSequence) -> Result<PeriodicityVerdict, PeriodError> {
    match satisfies_condition(seq) {
        ConditionVerdict::Holds(witness) => Ok(PeriodicityVerdict {
            periodic: true,
            witness: Some(witness),
            period: Some(extract_period(seq)?),
            refutation: None,
        }),
        ConditionVerdict::Fails { n1, n2 } => Ok(PeriodicityVerdict {
            periodic: false,
            witness: None,
            period: None,
            refutation: Some((n1, n2)),
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    /// `C(n) ≤ n` at this `n`; `period` is the smallest period of the
    /// analyzed prefix.
    PeriodicEvidence { n: usize, period: FiniteWord },
    NoEvidence { n_max: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrefixTooShort {
    pub length: usize,
    pub required: usize,
}

impl fmt::Display for PrefixTooShort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "prefix of length {} is too short; at least {} letters are needed",
            self.length, self.required
        )
    }
}

impl core::error::Error for PrefixTooShort {}

/// Empirical test: an aperiodic word has `C(n) ≥ n + 1` for every `n`.
/// Requires `|word_prefix| ≥ 4·n_max`.
pub fn morse_hedlund_oracle(word_prefix: &FiniteWord, n_max: usize) -> Result<OracleVerdict, PrefixTooShort> {
    let required = 4 * n_max.max(1);
    if word_prefix.len() < required {
        return Err(PrefixTooShort {
            length: word_prefix.len(),
            required,
        });
    }
    let counts = FactorIndex::new(word_prefix).counts(n_max);
    Ok(match (1..=n_max).find(|&n| counts[n] <= n as u64) {
        Some(n) => OracleVerdict::PeriodicEvidence {
            n,
            period: word_prefix.prefix(word_prefix.smallest_period()),
        },
        None => OracleVerdict::NoEvidence { n_max },
    })
}
