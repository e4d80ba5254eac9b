//! Eventually periodic bidirective sequences `(Δ, Θ)`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{ParseError, SequenceError};
use crate::word::{Antimorphism, FiniteWord, Letter};

/// A pair of eventually periodic streams: letters `δ₁δ₂…` and
/// antimorphisms `ϑ₁ϑ₂…`, both indexed from 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BidirectiveSequence {
    delta_preperiod: FiniteWord,
    delta_period: FiniteWord,
    theta_preperiod: Vec<Antimorphism>,
    theta_period: Vec<Antimorphism>,
}

impl BidirectiveSequence {
    pub fn new(
        delta_preperiod: FiniteWord,
        delta_period: FiniteWord,
        theta_preperiod: Vec<Antimorphism>,
        theta_period: Vec<Antimorphism>,
    ) -> Result<Self, SequenceError> {
        if delta_period.is_empty() {
            return Err(SequenceError::EmptyDeltaPeriod);
        }
        if theta_period.is_empty() {
            return Err(SequenceError::EmptyThetaPeriod);
        }
        Ok(BidirectiveSequence {
            delta_preperiod,
            delta_period,
            theta_preperiod,
            theta_period,
        })
    }

    /// Convenience constructor from the four component strings, e.g.
    /// `("", "011", "", "EER")` for `((011)^ω, (EER)^ω)`.
    ///
    /// # Panics
    ///
    /// On malformed components; intended for literals in code and tests.
    pub fn from_parts(dp: &str, dq: &str, tp: &str, tq: &str) -> Self {
        let letters = |s: &str| s.parse::<FiniteWord>().expect("letters must be 0/1");
        let thetas = |s: &str| parse_thetas(s).expect("antimorphisms must be R/E");
        BidirectiveSequence::new(letters(dp), letters(dq), thetas(tp), thetas(tq))
            .expect("periods must be nonempty")
    }

    /// Builds the sequence whose first terms are `head` and which
    /// continues with `tail` repeated forever.
    pub fn from_pairs(
        head: &[(Letter, Antimorphism)],
        tail: &[(Letter, Antimorphism)],
    ) -> Result<Self, SequenceError> {
        BidirectiveSequence::new(
            head.iter().map(|p| p.0).collect(),
            tail.iter().map(|p| p.0).collect(),
            head.iter().map(|p| p.1).collect(),
            tail.iter().map(|p| p.1).collect(),
        )
    }

    pub fn delta_preperiod(&self) -> &FiniteWord {
        &self.delta_preperiod
    }

    pub fn delta_period(&self) -> &FiniteWord {
        &self.delta_period
    }

    pub fn theta_preperiod(&self) -> &[Antimorphism] {
        &self.theta_preperiod
    }

    pub fn theta_period(&self) -> &[Antimorphism] {
        &self.theta_period
    }

    /// `δ_i`, 1-based.
    pub fn delta(&self, i: usize) -> Letter {
        assert!(i >= 1, "sequence indices start at 1");
        let j = i - 1;
        let pre = self.delta_preperiod.len();
        if j < pre {
            self.delta_preperiod.get(j)
        } else {
            self.delta_period.get((j - pre) % self.delta_period.len())
        }
    }

    /// `ϑ_i`, 1-based.
    pub fn theta(&self, i: usize) -> Antimorphism {
        assert!(i >= 1, "sequence indices start at 1");
        let j = i - 1;
        let pre = self.theta_preperiod.len();
        if j < pre {
            self.theta_preperiod[j]
        } else {
            self.theta_period[(j - pre) % self.theta_period.len()]
        }
    }

    pub fn pair(&self, i: usize) -> (Letter, Antimorphism) {
        (self.delta(i), self.theta(i))
    }

    /// The first `n` pairs `(δ₁, ϑ₁) … (δ_n, ϑ_n)`.
    pub fn pairs(&self, n: usize) -> Vec<(Letter, Antimorphism)> {
        (1..=n).map(|i| self.pair(i)).collect()
    }

    /// Length after which both streams are periodic.
    pub fn preperiod_len(&self) -> usize {
        self.delta_preperiod.len().max(self.theta_preperiod.len())
    }

    /// Period of the paired stream beyond `preperiod_len`.
    pub fn period_len(&self) -> usize {
        lcm(self.delta_period.len(), self.theta_period.len())
    }

    /// Whether `ϑ` occurs infinitely often in `Θ`.
    pub fn theta_recurs(&self, theta: Antimorphism) -> bool {
        self.theta_period.contains(&theta)
    }

    /// Stream equality, independent of representation.
    pub fn same_streams(&self, other: &BidirectiveSequence) -> bool {
        let horizon = self.preperiod_len().max(other.preperiod_len())
            + lcm(self.period_len(), other.period_len());
        (1..=horizon).all(|i| self.pair(i) == other.pair(i))
    }

    /// Shortest preperiod lengths of `Δ` and `Θ`, each taken on its own.
    pub fn minimal_preperiod_lens(&self) -> (usize, usize) {
        let dl: Vec<Letter> = self.delta_preperiod.iter().collect();
        let dp: Vec<Letter> = self.delta_period.iter().collect();
        let (dl, _) = minimize(dl, dp);
        let (tl, _) = minimize(self.theta_preperiod.clone(), self.theta_period.clone());
        (dl.len(), tl.len())
    }

    /// Canonical representation of the same streams.
    ///
    /// Each stream gets its primitive period and shortest preperiod; a
    /// stream that is not purely periodic then has its preperiod unrolled to
    /// the common length `max(|pre Δ|, |pre Θ|)`, matching the usual
    /// `(ν·x^ω, θ·y^ω)` with `|ν| = |θ|` notation.
    pub fn canonical(&self) -> BidirectiveSequence {
        let dl: Vec<Letter> = self.delta_preperiod.iter().collect();
        let dp: Vec<Letter> = self.delta_period.iter().collect();
        let (mut dl, dp) = minimize(dl, dp);
        let (mut tl, tp) = minimize(self.theta_preperiod.clone(), self.theta_period.clone());
        let common = dl.len().max(tl.len());
        let (dp, tp) = (unroll(&mut dl, dp, common), unroll(&mut tl, tp, common));
        BidirectiveSequence {
            delta_preperiod: dl.into_iter().collect(),
            delta_period: dp.into_iter().collect(),
            theta_preperiod: tl,
            theta_period: tp,
        }
    }
}

fn unroll<T: Copy>(pre: &mut Vec<T>, mut period: Vec<T>, target: usize) -> Vec<T> {
    if pre.is_empty() {
        return period;
    }
    while pre.len() < target {
        let head = period[0];
        pre.push(head);
        period.rotate_left(1);
    }
    period
}

fn minimize<T: Copy + PartialEq>(mut pre: Vec<T>, period: Vec<T>) -> (Vec<T>, Vec<T>) {
    let n = period.len();
    let root = (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| period[i] == period[i - p]))
        .unwrap_or(n);
    let mut period: Vec<T> = period[..root].to_vec();
    while let Some(&last) = pre.last() {
        if last != *period.last().expect("nonempty period") {
            break;
        }
        pre.pop();
        period.rotate_right(1);
    }
    (pre, period)
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        return a.max(b);
    }
    a / gcd(a, b) * b
}

pub fn parse_thetas(s: &str) -> Result<Vec<Antimorphism>, ParseError> {
    s.char_indices()
        .map(|(pos, c)| Antimorphism::from_char(c).ok_or(ParseError::new(pos, "expected 'R' or 'E'")))
        .collect()
}

pub(crate) struct ThetaWord<'a>(pub &'a [Antimorphism]);

impl fmt::Display for ThetaWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use core::fmt::Write;
        self.0.iter().try_for_each(|t| f.write_char(t.to_char()))
    }
}

/// Renders in the `prefix(period)^w;prefix(period)^w` notation.
impl fmt::Display for BidirectiveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({})^w;{}({})^w",
            self.delta_preperiod,
            self.delta_period,
            ThetaWord(&self.theta_preperiod),
            ThetaWord(&self.theta_period)
        )
    }
}

impl fmt::Debug for BidirectiveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
