//! Normalization of bidirective sequences.
//!
//! A sequence is normalized when its prefix chain `(w_k)` meets every `E`-
//! and `R`-palindromic prefix of the generated word. Three prefix rewrites
//! and one factor rewrite turn any sequence into a normalized one without
//! changing the word:
//!
//! * `(aā, RR) → (aāa, RER)`
//! * `(aⁱ, Rⁱ⁻¹E) → (aⁱā, RⁱE)`
//! * `(aⁱāā, RⁱEE) → (aⁱāāa, RⁱERE)`
//! * `(abb̄, ϑϑ̄ϑ̄) → (abb̄b, ϑϑ̄ϑϑ̄)` anywhere, scanning left to right.
//!
//! The prefix rules are applied until none matches. The factor rule is
//! applied leftmost-first: after a rewrite the scan resumes at the
//! inserted pairs, so a rewrite may enable another one immediately to its
//! right.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::closure::PrefixGenerator;
use crate::error::GrowthCapExceeded;
use crate::sequence::BidirectiveSequence;
use crate::word::{theta_palindromic_prefix_lengths, Antimorphism, FiniteWord, Letter};

type Pair = (Letter, Antimorphism);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RewriteRule {
    /// `(aā, RR) → (aāa, RER)`
    AlternatingPrefix,
    /// `(aⁱ, Rⁱ⁻¹E) → (aⁱā, RⁱE)`
    LetterRunPrefix,
    /// `(aⁱāā, RⁱEE) → (aⁱāāa, RⁱERE)`
    DoubledComplementPrefix,
    /// `(abb̄, ϑϑ̄ϑ̄) → (abb̄b, ϑϑ̄ϑϑ̄)`
    Factor,
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RewriteRule::AlternatingPrefix => "prefix (a a', RR) -> (a a' a, RER)",
            RewriteRule::LetterRunPrefix => "prefix (a^i, R^(i-1)E) -> (a^i a', R^i E)",
            RewriteRule::DoubledComplementPrefix => "prefix (a^i a' a', R^i EE) -> (a^i a' a' a, R^i ERE)",
            RewriteRule::Factor => "factor (a b b', t t' t') -> (a b b' b, t t' t t')",
        })
    }
}

/// One applied rewrite. `position` is the 1-based index, in the rewritten
/// output, of the first pair the rule matched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RewriteEvent {
    pub rule: RewriteRule,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationResult {
    /// Folded eventually periodic form, present iff `closed_form_found`.
    pub normalized: Option<BidirectiveSequence>,
    /// The first `horizon` normalized pairs.
    pub horizon_terms: Vec<Pair>,
    pub closed_form_found: bool,
    pub rewrite_log: Vec<RewriteEvent>,
}

/// Normalizes `seq`, producing at least `horizon` explicit terms (a zero
/// horizon is treated as one) and folding the output into an eventually
/// periodic sequence once the rewriting state repeats.
///
/// The state is the last two emitted pairs together with the phase of the
/// input inside its period; it repeats within `16·lcm(|x|, |y|)` input
/// terms after the prefix region, so a horizon above that always folds.
pub fn normalize(seq: &BidirectiveSequence, horizon: usize) -> NormalizationResult {
    let horizon = horizon.max(1);
    let mut log = Vec::new();

    // Every prefix rule matches inside the first E plus two pairs, and the
    // first E (if any) lies within one period past the preperiod.
    let head_len = seq.preperiod_len() + seq.period_len() + 3;
    let head = apply_prefix_rules(seq.pairs(head_len), &mut log);

    let mut scanner = FactorScanner::default();
    for &pair in &head {
        if let Some(position) = scanner.feed(pair) {
            log.push(RewriteEvent {
                rule: RewriteRule::Factor,
                position,
            });
        }
    }

    let period = seq.period_len();
    let mut seen: BTreeMap<(Pair, Pair, usize), usize> = BTreeMap::new();
    let mut folded = None;
    let mut input_index = head_len;
    while folded.is_none() && scanner.out.len() < horizon {
        input_index += 1;
        let phase = (input_index - seq.preperiod_len()) % period;
        let n = scanner.out.len();
        let key = (scanner.out[n - 2], scanner.out[n - 1], phase);
        if let Some(&start) = seen.get(&key) {
            folded = Some((start, n));
            break;
        }
        seen.insert(key, n);
        if let Some(position) = scanner.feed(seq.pair(input_index)) {
            log.push(RewriteEvent {
                rule: RewriteRule::Factor,
                position,
            });
        }
    }

    match folded {
        Some((start, end)) => {
            let out = &scanner.out;
            let normalized = BidirectiveSequence::from_pairs(&out[..start], &out[start..end])
                .expect("a repeated state spans at least one pair")
                .canonical();
            NormalizationResult {
                horizon_terms: normalized.pairs(horizon),
                normalized: Some(normalized),
                closed_form_found: true,
                rewrite_log: log,
            }
        }
        None => {
            let mut terms = scanner.out;
            terms.truncate(horizon);
            NormalizationResult {
                normalized: None,
                horizon_terms: terms,
                closed_form_found: false,
                rewrite_log: log,
            }
        }
    }
}

/// Leftmost streaming application of the factor rule.
///
/// An incoming `(b̄, ϑ̄)` that completes `(·, ϑ)(b, ϑ̄)(b̄, ϑ̄)` is emitted as
/// `(b̄, ϑ)(b, ϑ̄)`. The emitted pairs never complete a match among
/// themselves, so checking each incoming pair against the last two
/// outputs finds every leftmost occurrence. `feed` reports the 1-based
/// output index of the first pair of a rewritten block.
#[derive(Default)]
struct FactorScanner {
    out: Vec<Pair>,
}

impl FactorScanner {
    fn feed(&mut self, pair: Pair) -> Option<usize> {
        let n = self.out.len();
        if n >= 2 && factor_matches(self.out[n - 2], self.out[n - 1], pair) {
            let theta = self.out[n - 2].1;
            let b = self.out[n - 1].0;
            self.out.push((pair.0, theta));
            self.out.push((b, theta.complement()));
            return Some(n - 1);
        }
        self.out.push(pair);
        None
    }
}

fn factor_matches(first: Pair, second: Pair, third: Pair) -> bool {
    third.0 == second.0.complement() && second.1 == first.1.complement() && third.1 == second.1
}

/// Which prefix rule matches `pairs`, if any, with the length of the
/// leading `R`-run it was matched with.
fn match_prefix_rule(pairs: &[Pair]) -> Option<(RewriteRule, usize)> {
    use Antimorphism::{E, R};
    let a = pairs.first()?.0;
    let abar = a.complement();
    if pairs.len() >= 2 && pairs[1].0 == abar && pairs[0].1 == R && pairs[1].1 == R {
        return Some((RewriteRule::AlternatingPrefix, 0));
    }
    if let Some(e) = pairs.iter().position(|p| p.1 == E) {
        if pairs[..=e].iter().all(|p| p.0 == a) {
            return Some((RewriteRule::LetterRunPrefix, e + 1));
        }
    }
    let run = pairs.iter().take_while(|p| *p == &(a, R)).count();
    if run >= 1
        && pairs.len() >= run + 2
        && pairs[run] == (abar, E)
        && pairs[run + 1] == (abar, E)
    {
        return Some((RewriteRule::DoubledComplementPrefix, run));
    }
    None
}

fn apply_prefix_rules(mut pairs: Vec<Pair>, log: &mut Vec<RewriteEvent>) -> Vec<Pair> {
    use Antimorphism::{E, R};
    // Each rule lengthens the sequence by one pair and at most two rules
    // can fire in a row; the bound only guards against a logic error.
    for _ in 0..8 {
        let Some((rule, run)) = match_prefix_rule(&pairs) else {
            return pairs;
        };
        let a = pairs[0].0;
        let abar = a.complement();
        log.push(RewriteEvent { rule, position: 1 });
        match rule {
            RewriteRule::AlternatingPrefix => {
                pairs.splice(..2, [(a, R), (abar, E), (a, R)]);
            }
            RewriteRule::LetterRunPrefix => {
                let replacement: Vec<Pair> =
                    vec![(a, R); run].into_iter().chain([(abar, E)]).collect();
                pairs.splice(..run, replacement);
            }
            RewriteRule::DoubledComplementPrefix => {
                pairs.splice(run..run + 2, [(abar, E), (abar, R), (a, E)]);
            }
            RewriteRule::Factor => unreachable!("not a prefix rule"),
        }
    }
    panic!("prefix rewriting did not settle");
}

/// A location where `seq` has one of the forbidden shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SyntacticViolation {
    pub rule: RewriteRule,
    /// 1-based index of the first pair of the offending block.
    pub position: usize,
}

/// The first forbidden prefix form or factor `(abb̄, ϑϑ̄ϑ̄)` among the
/// first `horizon` pairs of `seq`.
pub fn find_syntactic_violation(
    seq: &BidirectiveSequence,
    horizon: usize,
) -> Option<SyntacticViolation> {
    let head_len = seq.preperiod_len() + seq.period_len() + 3;
    let pairs = seq.pairs(horizon.max(head_len));
    if let Some((rule, _)) = match_prefix_rule(&pairs) {
        return Some(SyntacticViolation { rule, position: 1 });
    }
    let window = &pairs[..horizon.min(pairs.len())];
    window
        .windows(3)
        .position(|w| factor_matches(w[0], w[1], w[2]))
        .map(|i| SyntacticViolation {
            rule: RewriteRule::Factor,
            position: i + 1,
        })
}

/// True iff no forbidden prefix form and no factor `(abb̄, ϑϑ̄ϑ̄)` occurs
/// within the first `horizon` pairs.
pub fn syntactic_normal_check(seq: &BidirectiveSequence, horizon: usize) -> bool {
    find_syntactic_violation(seq, horizon).is_none()
}

/// Outcome of the semantic normalization test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationCheck {
    pub normalized: bool,
    /// Shortest `E`- or `R`-palindromic prefix of `w_horizon` that is not a
    /// member of the chain.
    pub first_missed: Option<FiniteWord>,
}

/// Checks that every `ϑ`-palindromic prefix of `w_horizon` is some `w_k`.
pub fn is_normalized(
    seq: &BidirectiveSequence,
    horizon: usize,
) -> Result<NormalizationCheck, GrowthCapExceeded> {
    let mut generator = PrefixGenerator::new(seq);
    let mut lengths = Vec::with_capacity(horizon);
    for _ in 0..horizon.max(1) {
        lengths.push(generator.step()?.len);
    }
    let w = generator.word_prefix(generator.len());
    let mut missed: Option<usize> = None;
    for theta in [Antimorphism::R, Antimorphism::E] {
        for len in theta_palindromic_prefix_lengths(theta, &w) {
            if len > 0 && lengths.binary_search(&len).is_err() {
                missed = Some(missed.map_or(len, |m| m.min(len)));
                break;
            }
        }
    }
    Ok(NormalizationCheck {
        normalized: missed.is_none(),
        first_missed: missed.map(|len| w.prefix(len)),
    })
}
