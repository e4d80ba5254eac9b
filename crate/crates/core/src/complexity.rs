//! Factor complexity and special factors.
//!
//! For a factor `w` the bilateral order is
//! `B(w) = #{awb} − #{aw} − #{wb} + 1` over letters `a, b` with the named
//! words being factors, and the second difference of the complexity
//! satisfies `Δ²C(n) = Σ_{|w| = n} B(w)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::closure::{PrefixGenerator, DEFAULT_GROWTH_CAP};
use crate::error::GrowthCapExceeded;
use crate::sequence::BidirectiveSequence;
use crate::suffix_automaton::{SuffixAutomaton, ROOT};
use crate::word::{FiniteWord, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexityError {
    /// A requested length exceeds what the prefix supports.
    LengthOutOfRange { requested: usize, available: usize },
    FactorNotFound,
}

impl fmt::Display for ComplexityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexityError::LengthOutOfRange {
                requested,
                available,
            } => write!(
                f,
                "length {requested} is out of range for a prefix supporting {available}"
            ),
            ComplexityError::FactorNotFound => f.write_str("factor does not occur in the prefix"),
        }
    }
}

impl core::error::Error for ComplexityError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexityRow {
    pub n: usize,
    pub c: u64,
    /// `C(n+1) − C(n)`
    pub dc: i64,
    /// `ΔC(n+1) − ΔC(n)`
    pub d2c: i64,
    /// Counts up to length `n + 2` agreed across a doubling of the prefix.
    pub saturated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityProfile {
    pub rows: Vec<ComplexityRow>,
    pub prefix_length_used: usize,
}

impl ComplexityProfile {
    /// Builds rows `0..=n_max` from counts of lengths `0..=n_max + 2`.
    /// `stable[m]` tells whether `C(m)` is trusted.
    fn from_counts(counts: &[u64], stable: &[bool], n_max: usize, prefix_length_used: usize) -> Self {
        let c = |m: usize| counts[m] as i64;
        let rows = (0..=n_max)
            .map(|n| ComplexityRow {
                n,
                c: counts[n],
                dc: c(n + 1) - c(n),
                d2c: c(n + 2) - 2 * c(n + 1) + c(n),
                saturated: stable[..=n + 2].iter().all(|&s| s),
            })
            .collect();
        ComplexityProfile {
            rows,
            prefix_length_used,
        }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> Option<&ComplexityRow> {
        self.rows.get(n)
    }

    /// `C(n)`; panics past `n_max`.
    pub fn c(&self, n: usize) -> u64 {
        self.rows[n].c
    }

    pub fn fully_saturated(&self) -> bool {
        self.rows.iter().all(|r| r.saturated)
    }

    /// Largest `n` such that every row up to `n` is saturated.
    pub fn saturated_through(&self) -> Option<usize> {
        self.rows.iter().take_while(|r| r.saturated).last().map(|r| r.n)
    }
}

/// Distinct-factor index of a finite word.
#[derive(Clone)]
pub struct FactorIndex {
    sam: SuffixAutomaton,
}

/// Which of `0w0, 0w1, 1w0, 1w1` are factors, indexed `[a][b]`.
pub type ExtensionSet = [[bool; 2]; 2];

impl FactorIndex {
    pub fn new(word: &FiniteWord) -> Self {
        FactorIndex {
            sam: SuffixAutomaton::from_bits(&word.to_bits()),
        }
    }

    pub fn text_len(&self) -> usize {
        self.sam.text_len()
    }

    pub fn contains(&self, w: &FiniteWord) -> bool {
        self.sam.walk(w.iter().map(|a| a.bit() as u8)).is_some()
    }

    /// `C(0) … C(n_max)`.
    pub fn counts(&self, n_max: usize) -> Vec<u64> {
        self.sam.counts(n_max)
    }

    /// Extension report for `w` read off the automaton.
    pub fn report(&self, w: &FiniteWord) -> Result<BispecialReport, ComplexityError> {
        let s = self
            .sam
            .walk(w.iter().map(|a| a.bit() as u8))
            .ok_or(ComplexityError::FactorNotFound)?;
        let left = [0u8, 1].map(|a| self.sam.walk(core::iter::once(a).chain(w.iter().map(|x| x.bit() as u8))));
        Ok(self.report_at(w.clone(), s, left))
    }

    fn report_at(&self, factor: FiniteWord, s: u32, left: [Option<u32>; 2]) -> BispecialReport {
        let ext = left.map(|l| [0u8, 1].map(|b| l.and_then(|t| self.sam.next(t, b)).is_some()));
        let right = [0u8, 1].map(|b| self.sam.next(s, b).is_some());
        BispecialReport::new(factor, ext, [left[0].is_some(), left[1].is_some()], right)
    }

    /// Depth-first walk over every factor of length `≤ n_max`, calling
    /// `visit(len, state, left_states)`, where `left_states[a]` is the state
    /// of `a·w` if that is a factor.
    fn walk_factors(&self, n_max: usize, mut visit: impl FnMut(usize, &[u8], u32, [Option<u32>; 2])) {
        let root_left = [self.sam.next(ROOT, 0), self.sam.next(ROOT, 1)];
        let mut stack: Vec<(usize, u8, u32, [Option<u32>; 2])> = vec![(0, 0, ROOT, root_left)];
        let mut path: Vec<u8> = Vec::new();
        while let Some((depth, bit, s, left)) = stack.pop() {
            path.truncate(depth.saturating_sub(1));
            if depth > 0 {
                path.push(bit);
            }
            visit(depth, &path, s, left);
            if depth == n_max {
                continue;
            }
            for b in [1u8, 0] {
                if let Some(t) = self.sam.next(s, b) {
                    let l = left.map(|x| x.and_then(|x| self.sam.next(x, b)));
                    stack.push((depth + 1, b, t, l));
                }
            }
        }
    }

    /// `Σ_{|w| = n} B(w)` for `n = 0..=n_max`.
    pub fn bilateral_sums(&self, n_max: usize) -> Vec<i64> {
        let mut sums = vec![0i64; n_max + 1];
        self.walk_factors(n_max, |depth, _, s, left| {
            let mut b = 1i64;
            for t in left.into_iter().flatten() {
                b -= 1;
                b += (0..2).filter(|&x| self.sam.next(t, x).is_some()).count() as i64;
            }
            b -= (0..2).filter(|&x| self.sam.next(s, x).is_some()).count() as i64;
            sums[depth] += b;
        });
        sums
    }

    /// Every bispecial factor of length `≤ n_max`, sorted by length and
    /// then lexicographically.
    pub fn bispecials(&self, n_max: usize) -> Vec<BispecialReport> {
        let mut out = Vec::new();
        self.walk_factors(n_max, |_, path, s, left| {
            let right_both = self.sam.next(s, 0).is_some() && self.sam.next(s, 1).is_some();
            if right_both && left[0].is_some() && left[1].is_some() {
                out.push(self.report_at(FiniteWord::from_bits(path), s, left));
            }
        });
        out.sort_by(|x, y| (x.factor.len(), &x.factor).cmp(&(y.factor.len(), &y.factor)));
        out
    }

    /// Left special factors of length `≤ n_max` in (length, lexicographic)
    /// order.
    pub fn left_specials(&self, n_max: usize) -> Vec<FiniteWord> {
        let mut out = Vec::new();
        self.walk_factors(n_max, |_, path, _, left| {
            if left[0].is_some() && left[1].is_some() {
                out.push(FiniteWord::from_bits(path));
            }
        });
        out.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
        out
    }

    /// All factors of length exactly `n`, in lexicographic order.
    pub fn factors_of_length(&self, n: usize) -> Vec<FiniteWord> {
        let mut out = Vec::new();
        self.walk_factors(n, |depth, path, _, _| {
            if depth == n {
                out.push(FiniteWord::from_bits(path));
            }
        });
        out.sort();
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Weak,
    Strong,
    NeutralBispecial,
    LeftSpecialOnly,
    RightSpecialOnly,
    Ordinary,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Weak => "weak",
            Classification::Strong => "strong",
            Classification::NeutralBispecial => "neutral-bispecial",
            Classification::LeftSpecialOnly => "left-special-only",
            Classification::RightSpecialOnly => "right-special-only",
            Classification::Ordinary => "ordinary",
        }
    }

    pub fn is_bispecial(self) -> bool {
        matches!(
            self,
            Classification::Weak | Classification::Strong | Classification::NeutralBispecial
        )
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BispecialReport {
    pub factor: FiniteWord,
    pub extensions: ExtensionSet,
    pub left_extensions: [bool; 2],
    pub right_extensions: [bool; 2],
    pub b_value: i64,
    pub classification: Classification,
}

impl BispecialReport {
    pub fn new(
        factor: FiniteWord,
        extensions: ExtensionSet,
        left_extensions: [bool; 2],
        right_extensions: [bool; 2],
    ) -> Self {
        let count = |xs: &[bool]| xs.iter().filter(|&&x| x).count() as i64;
        let both = count(&extensions[0]) + count(&extensions[1]);
        let l = count(&left_extensions);
        let r = count(&right_extensions);
        let b_value = both - l - r + 1;
        let classification = match (l == 2, r == 2) {
            (true, true) => match b_value {
                -1 => Classification::Weak,
                1 => Classification::Strong,
                _ => Classification::NeutralBispecial,
            },
            (true, false) => Classification::LeftSpecialOnly,
            (false, true) => Classification::RightSpecialOnly,
            (false, false) => Classification::Ordinary,
        };
        BispecialReport {
            factor,
            extensions,
            left_extensions,
            right_extensions,
            b_value,
            classification,
        }
    }

    /// The two-sided extensions present, e.g. `[(1, 0), (0, 1)]` for `1w0`
    /// and `0w1`.
    pub fn extension_pairs(&self) -> Vec<(Letter, Letter)> {
        let mut out = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                if self.extensions[a][b] {
                    out.push((Letter::from_bit(a == 1), Letter::from_bit(b == 1)));
                }
            }
        }
        out
    }
}

/// Number of distinct length-`n` factors of `word`.
pub fn factor_count(word: &FiniteWord, n: usize) -> Result<u64, ComplexityError> {
    if n > word.len() {
        return Err(ComplexityError::LengthOutOfRange {
            requested: n,
            available: word.len(),
        });
    }
    Ok(FactorIndex::new(word).counts(n)[n])
}

/// `C`, `ΔC` and `Δ²C` for `n ≤ n_max` on a finite prefix. A row is
/// flagged saturated when the first half of the prefix already has the
/// same counts for every length up to `n + 2`.
pub fn complexity_profile(
    word: &FiniteWord,
    n_max: usize,
) -> Result<ComplexityProfile, ComplexityError> {
    if n_max + 2 > word.len() {
        return Err(ComplexityError::LengthOutOfRange {
            requested: n_max + 2,
            available: word.len(),
        });
    }
    let bits = word.to_bits();
    let half = bits.len() / 2;
    let mut sam = SuffixAutomaton::new();
    for &b in &bits[..half] {
        sam.push(b);
    }
    let early = sam.counts(n_max + 2);
    for &b in &bits[half..] {
        sam.push(b);
    }
    let full = sam.counts(n_max + 2);
    let stable: Vec<bool> = early.iter().zip(&full).map(|(a, b)| a == b).collect();
    Ok(ComplexityProfile::from_counts(&full, &stable, n_max, word.len()))
}

/// Classifies `w` by scanning all of its occurrences in `word`. Only
/// occurrences with a letter on the relevant side contribute extensions.
pub fn classify_factor(word: &FiniteWord, w: &FiniteWord) -> Result<BispecialReport, ComplexityError> {
    let text = word.to_bits();
    let m = w.len();
    let mut ext = [[false; 2]; 2];
    let mut left = [false; 2];
    let mut right = [false; 2];
    let mut found = false;
    for start in occurrences(word, w) {
        found = true;
        let before = start.checked_sub(1).map(|i| text[i] as usize);
        let after = text.get(start + m).map(|&b| b as usize);
        if let Some(a) = before {
            left[a] = true;
        }
        if let Some(b) = after {
            right[b] = true;
        }
        if let (Some(a), Some(b)) = (before, after) {
            ext[a][b] = true;
        }
    }
    if !found {
        return Err(ComplexityError::FactorNotFound);
    }
    Ok(BispecialReport::new(w.clone(), ext, left, right))
}

/// 0-based start positions of every occurrence of `pattern` in `text`
/// (Knuth–Morris–Pratt).
pub fn occurrences(text: &FiniteWord, pattern: &FiniteWord) -> Vec<usize> {
    let m = pattern.len();
    if m == 0 {
        return (0..=text.len()).collect();
    }
    let p = pattern.to_bits();
    let fail = crate::word::failure_function(&p);
    let mut out = Vec::new();
    let mut k = 0usize;
    for (i, a) in text.iter().enumerate() {
        let b = a.bit() as u8;
        while k > 0 && p[k] != b {
            k = fail[k - 1];
        }
        if p[k] == b {
            k += 1;
        }
        if k == m {
            out.push(i + 1 - m);
            k = fail[k - 1];
        }
    }
    out
}

/// All bispecial factors of `word` of length `≤ n_max`, sorted by length
/// then lexicographically.
pub fn bispecials_up_to(
    word: &FiniteWord,
    n_max: usize,
) -> Result<Vec<BispecialReport>, ComplexityError> {
    if n_max + 2 > word.len() {
        return Err(ComplexityError::LengthOutOfRange {
            requested: n_max + 2,
            available: word.len(),
        });
    }
    Ok(FactorIndex::new(word).bispecials(n_max))
}

/// Both sides of `Δ²C(n) = Σ_{|w| = n} B(w)` evaluated on a prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SecondDifferenceCheck {
    pub n: usize,
    pub second_difference: i64,
    pub bilateral_sum: i64,
}

impl SecondDifferenceCheck {
    pub fn holds(&self) -> bool {
        self.second_difference == self.bilateral_sum
    }
}

pub fn second_difference_consistency(
    word: &FiniteWord,
    n: usize,
) -> Result<SecondDifferenceCheck, ComplexityError> {
    if n + 2 > word.len() {
        return Err(ComplexityError::LengthOutOfRange {
            requested: n + 2,
            available: word.len(),
        });
    }
    let index = FactorIndex::new(word);
    let counts = index.counts(n + 2);
    let c = |m: usize| counts[m] as i64;
    Ok(SecondDifferenceCheck {
        n,
        second_difference: c(n + 2) - 2 * c(n + 1) + c(n),
        bilateral_sum: index.bilateral_sums(n)[n],
    })
}

/// `analyze_infinite` ran into the growth cap before every length
/// stabilized; `partial` still holds valid lower bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisCapped {
    pub partial: ComplexityProfile,
    pub cap: GrowthCapExceeded,
}

impl fmt::Display for AnalysisCapped {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}; counts from the first {} letters are lower bounds",
            self.cap, self.partial.prefix_length_used
        )
    }
}

impl core::error::Error for AnalysisCapped {}

pub fn analyze_infinite(
    seq: &BidirectiveSequence,
    n_max: usize,
) -> Result<ComplexityProfile, AnalysisCapped> {
    analyze_infinite_with_cap(seq, n_max, DEFAULT_GROWTH_CAP)
}

/// Doubles the analyzed prefix of `u(Δ, Θ)` until `C(m)` agrees across
/// a doubling for every `m ≤ n_max + 2`.
pub fn analyze_infinite_with_cap(
    seq: &BidirectiveSequence,
    n_max: usize,
    cap: usize,
) -> Result<ComplexityProfile, AnalysisCapped> {
    let mut generator = PrefixGenerator::with_cap(seq, cap);
    let mut sam = SuffixAutomaton::new();
    let mut target = (4 * (n_max + 2)).max(256);
    let mut previous: Option<Vec<u64>> = None;
    loop {
        let fed = sam.text_len();
        let reached = generator.extend_to(target);
        let available = generator.len().min(target);
        for &b in &generator.bits()[fed..available] {
            sam.push(b);
        }
        if let Err(cap_err) = reached {
            // The prefix stopped short of doubling, so no length counts as
            // saturated.
            let counts = sam.counts(n_max + 2);
            let profile = ComplexityProfile::from_counts(&counts, &vec![false; n_max + 3], n_max, available);
            return Err(AnalysisCapped {
                partial: profile,
                cap: cap_err,
            });
        }
        let counts = sam.counts(n_max + 2);
        if let Some(p) = &previous {
            if *p == counts {
                let stable = vec![true; n_max + 3];
                return Ok(ComplexityProfile::from_counts(&counts, &stable, n_max, available));
            }
        }
        previous = Some(counts);
        target = target.saturating_mul(2);
    }
}
