//! The word `u_p = u(1^ω, (EERR)^ω)`, whose complexity exceeds `4n` for
//! every `n ≥ 10`, and executable forms of its structural properties.
//!
//! Throughout, `w_z = ε` for `z ≤ 0`, `u⁻¹v` strips the prefix `u` from `v`
//! and `v·u⁻¹` strips the suffix `u`. Every strip is checked.

use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use crate::closure::PrefixGenerator;
use crate::complexity::{classify_factor, occurrences, BispecialReport, Classification, FactorIndex};
use crate::error::GrowthCapExceeded;
use crate::sequence::BidirectiveSequence;
use crate::word::{Antimorphism, FiniteWord, Letter};

/// `(1^ω, (EERR)^ω)`.
pub fn up_sequence() -> BidirectiveSequence {
    BidirectiveSequence::from_parts("", "1", "", "EERR")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CounterexampleError {
    GrowthCap(GrowthCapExceeded),
    /// A prefix or suffix strip in a closed-form identity failed.
    StripFailed(&'static str),
    /// An argument is outside the documented range.
    Precondition(&'static str),
}

impl fmt::Display for CounterexampleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CounterexampleError::GrowthCap(e) => e.fmt(f),
            CounterexampleError::StripFailed(what) => write!(f, "strip failed: {what}"),
            CounterexampleError::Precondition(what) => write!(f, "precondition violated: {what}"),
        }
    }
}

impl core::error::Error for CounterexampleError {}

impl From<GrowthCapExceeded> for CounterexampleError {
    fn from(e: GrowthCapExceeded) -> Self {
        CounterexampleError::GrowthCap(e)
    }
}

type Result<T> = core::result::Result<T, CounterexampleError>;

fn strip_prefix(u: &FiniteWord, v: &FiniteWord, what: &'static str) -> Result<FiniteWord> {
    v.strip_prefix(u).ok_or(CounterexampleError::StripFailed(what))
}

/// The members `w_1 … w_k` of the prefix chain of `u_p`, kept as one word
/// plus lengths.
#[derive(Clone, Debug)]
pub struct UpChain {
    word: FiniteWord,
    lens: Vec<usize>,
}

impl UpChain {
    pub fn generate(k: usize) -> Result<Self> {
        let mut generator = PrefixGenerator::new(&up_sequence());
        let mut lens = Vec::with_capacity(k);
        for _ in 0..k {
            lens.push(generator.step()?.len);
        }
        Ok(UpChain {
            word: generator.word_prefix(generator.len()),
            lens,
        })
    }

    /// Number of members held.
    pub fn depth(&self) -> usize {
        self.lens.len()
    }

    /// `|w_z|`, zero for `z ≤ 0`.
    pub fn len_of(&self, z: isize) -> usize {
        if z <= 0 {
            0
        } else {
            self.lens[z as usize - 1]
        }
    }

    /// `w_z`, with `w_z = ε` for `z ≤ 0`. Panics past `depth`.
    pub fn w(&self, z: isize) -> FiniteWord {
        self.word.prefix(self.len_of(z))
    }

    /// The longest member held.
    pub fn word(&self) -> &FiniteWord {
        &self.word
    }

    /// `s_{4k+1} = R(w_{4(k−1)+1}) · w_{4(k−1)}⁻¹w_{4(k−1)+3} · w_{4(k−1)}⁻¹w_{4(k−1)+1}`.
    pub fn s_4k1(&self, k: usize) -> Result<FiniteWord> {
        let j = 4 * (k as isize - 1);
        let mut s = Antimorphism::R.apply(&self.w(j + 1));
        s.extend_from(&strip_prefix(&self.w(j), &self.w(j + 3), "w_4(k-1) from w_4(k-1)+3")?);
        s.extend_from(&strip_prefix(&self.w(j), &self.w(j + 1), "w_4(k-1) from w_4(k-1)+1")?);
        Ok(s)
    }

    /// `s_{4k+3} = E(w_{4(k−1)+3}) · w_{4k−2}⁻¹w_{4k+1} · w_{4k−2}⁻¹w_{4(k−1)+3}`.
    pub fn s_4k3(&self, k: usize) -> Result<FiniteWord> {
        let k = k as isize;
        let mut s = Antimorphism::E.apply(&self.w(4 * (k - 1) + 3));
        s.extend_from(&strip_prefix(&self.w(4 * k - 2), &self.w(4 * k + 1), "w_4k-2 from w_4k+1")?);
        s.extend_from(&strip_prefix(
            &self.w(4 * k - 2),
            &self.w(4 * (k - 1) + 3),
            "w_4k-2 from w_4(k-1)+3",
        )?);
        Ok(s)
    }

    /// `p_{4k+1} = w_{4(k−1)+3} · w_{4(k−1)}⁻¹w_{4(k−1)+1}`.
    pub fn p_4k1(&self, k: usize) -> Result<FiniteWord> {
        let j = 4 * (k as isize - 1);
        Ok(self
            .w(j + 3)
            .concat(&strip_prefix(&self.w(j), &self.w(j + 1), "w_4(k-1) from w_4(k-1)+1")?))
    }

    /// `p_{4k+3} = w_{4k+1} · w_{4k−2}⁻¹w_{4(k−1)+3}`.
    pub fn p_4k3(&self, k: usize) -> Result<FiniteWord> {
        let k = k as isize;
        Ok(self.w(4 * k + 1).concat(&strip_prefix(
            &self.w(4 * k - 2),
            &self.w(4 * (k - 1) + 3),
            "w_4k-2 from w_4(k-1)+3",
        )?))
    }
}

/// `w_k` of `u_p`.
pub fn up_prefix(k: usize) -> Result<FiniteWord> {
    if k == 0 {
        return Err(CounterexampleError::Precondition("k must be at least 1"));
    }
    Ok(UpChain::generate(k)?.w(k as isize))
}

/// Checks, with `w_z = ε` for `z ≤ 0`:
///
/// * `w_{4k+1} = w_{4k} · 10 · E(w_{4k})`
/// * `w_{4k+2} = w_{4k+1} · w_{4k−2}⁻¹w_{4k+1}`
/// * `w_{4k+3} = w_{4k+2} · (010)⁻¹R(w_{4k+2})`
/// * `w_{4k+4} = w_{4k+3} · w_{4k}⁻¹w_{4k+3}`
///
/// A failed strip counts as a falsified identity.
pub fn recurrence_check(k: usize) -> Result<bool> {
    Ok(recurrences_hold(&UpChain::generate(4 * k + 4)?, k))
}

fn recurrences_hold(chain: &UpChain, k: usize) -> bool {
    let w = |z: isize| chain.w(z);
    let k = k as isize;
    let ten: FiniteWord = "10".parse().expect("literal");
    let zero_one_zero: FiniteWord = "010".parse().expect("literal");
    let first = w(4 * k).concat(&ten).concat(&Antimorphism::E.apply(&w(4 * k)));
    let second = w(4 * k + 1).strip_prefix(&w(4 * k - 2)).map(|t| w(4 * k + 1).concat(&t));
    let third = Antimorphism::R
        .apply(&w(4 * k + 2))
        .strip_prefix(&zero_one_zero)
        .map(|t| w(4 * k + 2).concat(&t));
    let fourth = w(4 * k + 3).strip_prefix(&w(4 * k)).map(|t| w(4 * k + 3).concat(&t));
    first == w(4 * k + 1)
        && second == Some(w(4 * k + 2))
        && third == Some(w(4 * k + 3))
        && fourth == Some(w(4 * k + 4))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `s_{4k+1}`, an `R`-palindrome.
    OneModFour,
    /// `s_{4k+3}`, an `E`-palindrome.
    ThreeModFour,
}

/// The weak bispecial `s_{4k+1}` or `s_{4k+3}`, `k ≥ 1`.
pub fn weak_bispecial(k: usize, family: Family) -> Result<FiniteWord> {
    if k == 0 {
        return Err(CounterexampleError::Precondition("k must be at least 1"));
    }
    let chain = UpChain::generate(4 * k + 1)?;
    match family {
        Family::OneModFour => chain.s_4k1(k),
        Family::ThreeModFour => chain.s_4k3(k),
    }
}

/// A prefix of `u_p` containing every factor of length `≤ m`: with
/// `j ≥ 5` least such that `|w_{j−5}| ≥ m`, the member `w_{j+2}` contains
/// them all.
pub fn saturated_up_prefix(m: usize) -> Result<FiniteWord> {
    let mut generator = PrefixGenerator::new(&up_sequence());
    let mut lens: Vec<usize> = Vec::new();
    let mut j = 5;
    loop {
        while lens.len() < j - 5 {
            lens.push(generator.step()?.len);
        }
        let len = if j == 5 { 0 } else { lens[j - 6] };
        if len >= m {
            break;
        }
        j += 1;
    }
    while lens.len() < j + 2 {
        lens.push(generator.step()?.len);
    }
    Ok(generator.word_prefix(lens[j + 1]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongBispecialCheck {
    pub k: usize,
    pub w_4k1: BispecialReport,
    pub w_4k3: BispecialReport,
    /// `1·w_{4k+1}·0` is the central factor of `w_{4(k+1)+1}`.
    pub central_4k1: bool,
    /// `0·w_{4k+3}·0` is the central factor of `w_{4(k+1)+3}`.
    pub central_4k3: bool,
}

impl StrongBispecialCheck {
    pub fn holds(&self) -> bool {
        self.w_4k1.classification == Classification::Strong
            && self.w_4k3.classification == Classification::Strong
            && self.central_4k1
            && self.central_4k3
    }
}

fn is_central(outer: &FiniteWord, inner: &FiniteWord) -> bool {
    outer.len() >= inner.len()
        && (outer.len() - inner.len()).is_multiple_of(2)
        && {
            let start = (outer.len() - inner.len()) / 2;
            outer.factor(start, start + inner.len()) == *inner
        }
}

fn wrap(a: Letter, w: &FiniteWord, b: Letter) -> FiniteWord {
    let mut out = FiniteWord::with_capacity(w.len() + 2);
    out.push(a);
    out.extend_from(w);
    out.push(b);
    out
}

/// Classifies `w_{4k+1}` and `w_{4k+3}` and checks where their missing
/// extensions first appear. Four extensions already show a strong
/// bispecial, so the prefix `w_{4k+8}` suffices.
pub fn strong_bispecial_check(k: usize) -> Result<StrongBispecialCheck> {
    let chain = UpChain::generate(4 * k + 8)?;
    let k_i = k as isize;
    let text = chain.w(4 * k_i + 8);
    let w1 = chain.w(4 * k_i + 1);
    let w3 = chain.w(4 * k_i + 3);
    let report = |w: &FiniteWord| {
        classify_factor(&text, w).map_err(|_| CounterexampleError::Precondition("factor missing from prefix"))
    };
    Ok(StrongBispecialCheck {
        k,
        w_4k1: report(&w1)?,
        w_4k3: report(&w3)?,
        central_4k1: is_central(&chain.w(4 * k_i + 5), &wrap(Letter::One, &w1, Letter::Zero)),
        central_4k3: is_central(&chain.w(4 * k_i + 7), &wrap(Letter::Zero, &w3, Letter::Zero)),
    })
}

/// `|s_{4k+1}| < |w_{4k+1}| < |s_{4k+3}| < |w_{4k+3}| < |s_{4(k+1)+1}|`.
pub fn length_interleaving_check(k: usize) -> Result<bool> {
    Ok(interleaving_lengths(k)?.windows(2).all(|p| p[0] < p[1]))
}

/// The five lengths compared by [`length_interleaving_check`].
pub fn interleaving_lengths(k: usize) -> Result<[usize; 5]> {
    if k == 0 {
        return Err(CounterexampleError::Precondition("k must be at least 1"));
    }
    let chain = UpChain::generate(4 * k + 5)?;
    let k_i = k as isize;
    Ok([
        chain.s_4k1(k)?.len(),
        chain.len_of(4 * k_i + 1),
        chain.s_4k3(k)?.len(),
        chain.len_of(4 * k_i + 3),
        chain.s_4k1(k + 1)?.len(),
    ])
}

/// `p_{4k+1}` is a suffix of `s_{4k+1}` and a prefix of `w_{4k}`;
/// `p_{4k+3}` is a suffix of `s_{4k+3}` and a prefix of `w_{4k+2}`.
pub fn p_suffix_check(k: usize) -> Result<bool> {
    if k == 0 {
        return Err(CounterexampleError::Precondition("k must be at least 1"));
    }
    let chain = UpChain::generate(4 * k + 2)?;
    let k_i = k as isize;
    let p1 = chain.p_4k1(k)?;
    let p3 = chain.p_4k3(k)?;
    Ok(chain.s_4k1(k)?.ends_with(&p1)
        && chain.w(4 * k_i).starts_with(&p1)
        && chain.s_4k3(k)?.ends_with(&p3)
        && chain.w(4 * k_i + 2).starts_with(&p3))
}

/// First occurrences (0-based) of `1w_{4k}1` and `1w_{4k+1}0` in `u_p`
/// next to the centered positions inside `w_{4(k+1)}` and `w_{4(k+1)+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FirstOccurrences {
    pub k: usize,
    pub found_4k: Option<usize>,
    pub central_4k: usize,
    pub found_4k1: Option<usize>,
    pub central_4k1: usize,
}

impl FirstOccurrences {
    pub fn holds(&self) -> bool {
        self.found_4k == Some(self.central_4k) && self.found_4k1 == Some(self.central_4k1)
    }
}

pub fn first_occurrence_check(k: usize) -> Result<FirstOccurrences> {
    let chain = UpChain::generate(4 * k + 5)?;
    let k_i = k as isize;
    let text = chain.w(4 * k_i + 5);
    let f0 = wrap(Letter::One, &chain.w(4 * k_i), Letter::One);
    let f1 = wrap(Letter::One, &chain.w(4 * k_i + 1), Letter::Zero);
    let centered = |outer: usize, inner: usize| (outer - inner) / 2;
    Ok(FirstOccurrences {
        k,
        found_4k: occurrences(&text, &f0).first().copied(),
        central_4k: centered(chain.len_of(4 * k_i + 4), f0.len()),
        found_4k1: occurrences(&text, &f1).first().copied(),
        central_4k1: centered(chain.len_of(4 * k_i + 5), f1.len()),
    })
}

/// Outcome of [`verify_4n`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub checked_n_range: RangeInclusive<usize>,
    /// `(n, C(n))` with `C(n) ≤ 4n`.
    pub violations: Vec<(usize, u64)>,
    pub c10: u64,
    pub delta_c9: i64,
    /// `C(0) … C(n_max)` on the saturated prefix.
    pub counts: Vec<u64>,
    pub prefix_length_used: usize,
    /// Doubling-based saturation reproduces the same counts.
    pub heuristic_agrees: bool,
    pub bispecial_families: RangeInclusive<usize>,
    pub recurrence_checks: RangeInclusive<usize>,
    pub family_failures: Vec<usize>,
}

impl CounterexampleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
            && self.c10 == 42
            && self.delta_c9 == 6
            && self.heuristic_agrees
            && self.family_failures.is_empty()
    }
}

/// Checks `C(n) > 4n` for `10 ≤ n ≤ n_max` on a prefix of `u_p` proven to
/// contain every factor of length `≤ n_max + 1`, together with the
/// structural families for `k ≤ k_max`. `family_failures` lists the `k`
/// where a recurrence, strong bispecial, interleaving or `p`-word check
/// failed.
pub fn verify_4n(n_max: usize, k_max: usize) -> Result<CounterexampleReport> {
    if n_max < 10 {
        return Err(CounterexampleError::Precondition("n_max must be at least 10"));
    }
    let prefix = saturated_up_prefix(n_max + 1)?;
    let index = FactorIndex::new(&prefix);
    let counts = index.counts(n_max + 1);
    let half = FactorIndex::new(&prefix.prefix(prefix.len() / 2)).counts(n_max + 1);
    let violations = (10..=n_max)
        .filter(|&n| counts[n] <= 4 * n as u64)
        .map(|n| (n, counts[n]))
        .collect();
    let mut family_failures = Vec::new();
    for k in 0..=k_max {
        let mut ok = recurrence_check(k)? && strong_bispecial_check(k)?.holds();
        if k >= 1 {
            ok = ok && length_interleaving_check(k)? && p_suffix_check(k)?;
        }
        if !ok {
            family_failures.push(k);
        }
    }
    Ok(CounterexampleReport {
        checked_n_range: 10..=n_max,
        violations,
        c10: counts[10],
        delta_c9: counts[10] as i64 - counts[9] as i64,
        heuristic_agrees: half == counts,
        prefix_length_used: prefix.len(),
        counts: counts[..=n_max].to_vec(),
        bispecial_families: 0..=k_max,
        recurrence_checks: 0..=k_max,
        family_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn listing_heads() {
        assert_eq!(up_prefix(4).unwrap().to_string(), "1010110101");
        assert_eq!(up_prefix(5).unwrap().to_string(), "1010110101100101001010");
        assert_eq!(up_prefix(11).unwrap().len(), 1077);
        assert!(up_prefix(0).is_err());
    }

    #[test]
    fn recurrences() {
        for k in 0..=3 {
            assert!(recurrence_check(k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn weak_bispecials_by_formula() {
        assert_eq!(weak_bispecial(1, Family::OneModFour).unwrap().to_string(), "011010110");
        assert_eq!(
            weak_bispecial(1, Family::ThreeModFour).unwrap().to_string(),
            "010101101011001010010101"
        );
        for k in 1..=3 {
            let s1 = weak_bispecial(k, Family::OneModFour).unwrap();
            let s3 = weak_bispecial(k, Family::ThreeModFour).unwrap();
            assert!(Antimorphism::R.is_palindrome(&s1));
            assert!(Antimorphism::E.is_palindrome(&s3));
        }
    }

    #[test]
    fn interleaving() {
        assert_eq!(interleaving_lengths(1).unwrap(), [9, 22, 24, 77, 101]);
        for k in 1..=3 {
            assert!(length_interleaving_check(k).unwrap());
        }
    }

    #[test]
    fn p_words() {
        for k in 1..=3 {
            assert!(p_suffix_check(k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn strong_bispecials() {
        let c = strong_bispecial_check(0).unwrap();
        assert_eq!(c.w_4k1.factor.to_string(), "10");
        assert_eq!(c.w_4k3.factor.to_string(), "10101");
        for k in 0..=2 {
            assert!(strong_bispecial_check(k).unwrap().holds(), "k = {k}");
        }
    }

    #[test]
    fn first_occurrences_are_central() {
        for k in 0..=2 {
            let f = first_occurrence_check(k).unwrap();
            assert!(f.holds(), "{f:?}");
        }
    }

    #[test]
    fn saturated_prefix_covers_all_short_factors() {
        // |w_4| = 10, so w_11 holds every factor of length 10.
        assert_eq!(saturated_up_prefix(10).unwrap().len(), 1077);
    }

    #[test]
    fn four_n_small() {
        let r = verify_4n(10, 1).unwrap();
        assert_eq!(r.c10, 42);
        assert_eq!(r.delta_c9, 6);
        assert!(r.passed(), "{r:?}");
        assert_eq!(verify_4n(9, 0), Err(CounterexampleError::Precondition("n_max must be at least 10")));
    }
}
