//! Palindromic, pseudopalindromic and generalized closure, and the prefix
//! chains `w₀ = ε, w_{k+1} = (w_k δ_{k+1})^{ϑ_{k+1}}` they generate.

use alloc::vec::Vec;

use crate::error::GrowthCapExceeded;
use crate::pal_tree::PalTree;
use crate::sequence::BidirectiveSequence;
use crate::word::{longest_theta_palindromic_suffix, Antimorphism, FiniteWord, Letter};

/// Default bound on the length of any generated prefix, in letters.
pub const DEFAULT_GROWTH_CAP: usize = 1 << 26;

/// Shortest `R`-palindrome having `w` as a prefix.
pub fn palindromic_closure(w: &FiniteWord) -> FiniteWord {
    generalized_closure(w, Antimorphism::R)
}

/// Shortest `E`-palindrome having `w` as a prefix.
pub fn pseudopalindromic_closure(w: &FiniteWord) -> FiniteWord {
    generalized_closure(w, Antimorphism::E)
}

/// `w^ϑ = p·s·ϑ(p)` where `s` is the longest `ϑ`-palindromic suffix of `w = p·s`.
pub fn generalized_closure(w: &FiniteWord, theta: Antimorphism) -> FiniteWord {
    let (p, _) = longest_theta_palindromic_suffix(theta, w);
    w.concat(&theta.apply(&p))
}

/// Image under the Thue–Morse morphism `0 ↦ 01`, `1 ↦ 10`.
pub fn thue_morse_image(w: &FiniteWord) -> FiniteWord {
    let mut out = FiniteWord::with_capacity(2 * w.len());
    for a in w.iter() {
        out.push(a);
        out.push(a.complement());
    }
    out
}

/// One closure step of a chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainStep {
    /// `k ≥ 1`.
    pub index: usize,
    pub letter: Letter,
    pub theta: Antimorphism,
    /// `|w_k|`.
    pub len: usize,
}

/// The prefixes `w₁ … w_K` of a generalized pseudostandard word.
///
/// Every `w_k` is a prefix of `w_K`, so only the longest word is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixChain {
    word: FiniteWord,
    steps: Vec<ChainStep>,
}

impl PrefixChain {
    pub fn steps(&self) -> &[ChainStep] {
        &self.steps
    }

    /// Number of closure steps `K`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `w_k` for `0 ≤ k ≤ K`.
    pub fn prefix(&self, k: usize) -> FiniteWord {
        self.word.prefix(self.prefix_len(k))
    }

    pub fn prefix_len(&self, k: usize) -> usize {
        match k {
            0 => 0,
            k => self.steps[k - 1].len,
        }
    }

    /// The last prefix `w_K`.
    pub fn last(&self) -> &FiniteWord {
        &self.word
    }

    pub fn into_word(self) -> FiniteWord {
        self.word
    }

    /// `(step, w_k)` for `k = 1..=K`.
    pub fn iter(&self) -> impl Iterator<Item = (ChainStep, FiniteWord)> + '_ {
        self.steps.iter().map(move |s| (*s, self.word.prefix(s.len)))
    }
}

/// Incremental generator of the prefix chain of `u(Δ, Θ)`.
///
/// Keeps one palindromic tree per antimorphism so that each closure step
/// costs time proportional to the letters it appends.
#[derive(Clone)]
pub struct PrefixGenerator {
    seq: BidirectiveSequence,
    bits: Vec<u8>,
    trees: [PalTree; 2],
    steps: Vec<ChainStep>,
    cap: usize,
    poisoned: bool,
}

impl PrefixGenerator {
    pub fn new(seq: &BidirectiveSequence) -> Self {
        PrefixGenerator::with_cap(seq, DEFAULT_GROWTH_CAP)
    }

    pub fn with_cap(seq: &BidirectiveSequence, cap: usize) -> Self {
        PrefixGenerator {
            seq: seq.clone(),
            bits: Vec::new(),
            trees: [PalTree::new(Antimorphism::R), PalTree::new(Antimorphism::E)],
            steps: Vec::new(),
            cap,
            poisoned: false,
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Current `|w_k|`.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of closure steps performed.
    pub fn steps_done(&self) -> usize {
        self.steps.len()
    }

    fn push_bit(&mut self, b: u8) {
        self.bits.push(b);
        let i = self.bits.len() - 1;
        for tree in self.trees.iter_mut() {
            tree.push(&self.bits, i);
        }
    }

    /// Performs one closure step. After a cap error the generator refuses
    /// further steps.
    pub fn step(&mut self) -> Result<ChainStep, GrowthCapExceeded> {
        let cap_error = GrowthCapExceeded {
            cap: self.cap,
            attempted: self.bits.len().saturating_mul(2).saturating_add(2),
        };
        if self.poisoned {
            return Err(cap_error);
        }
        let index = self.steps.len() + 1;
        let letter = self.seq.delta(index);
        let theta = self.seq.theta(index);
        self.push_bit(letter.bit() as u8);
        let n = self.bits.len();
        let s = self.trees[theta as usize].longest_suffix();
        let p_len = n - s;
        let new_len = n + p_len;
        if new_len > self.cap {
            self.poisoned = true;
            return Err(GrowthCapExceeded {
                cap: self.cap,
                attempted: new_len,
            });
        }
        let flip = u8::from(theta == Antimorphism::E);
        for j in (0..p_len).rev() {
            let b = self.bits[j] ^ flip;
            self.push_bit(b);
        }
        let step = ChainStep {
            index,
            letter,
            theta,
            len: new_len,
        };
        self.steps.push(step);
        Ok(step)
    }

    /// Steps until the current prefix has at least `length` letters.
    pub fn extend_to(&mut self, length: usize) -> Result<(), GrowthCapExceeded> {
        while self.bits.len() < length {
            self.step()?;
        }
        Ok(())
    }

    /// The first `length` letters generated so far.
    pub fn word_prefix(&self, length: usize) -> FiniteWord {
        FiniteWord::from_bits(&self.bits[..length.min(self.bits.len())])
    }

    /// Raw `0/1` bytes of the current prefix.
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn chain(&self) -> PrefixChain {
        PrefixChain {
            word: FiniteWord::from_bits(&self.bits),
            steps: self.steps.clone(),
        }
    }
}

/// `w₀ … w_steps` of `u(Δ, Θ)` under the default growth cap.
pub fn generate_chain(
    seq: &BidirectiveSequence,
    steps: usize,
) -> Result<PrefixChain, GrowthCapExceeded> {
    generate_chain_with_cap(seq, steps, DEFAULT_GROWTH_CAP)
}

pub fn generate_chain_with_cap(
    seq: &BidirectiveSequence,
    steps: usize,
    cap: usize,
) -> Result<PrefixChain, GrowthCapExceeded> {
    let mut generator = PrefixGenerator::with_cap(seq, cap);
    for _ in 0..steps {
        generator.step()?;
    }
    Ok(generator.chain())
}

/// The prefix of `u(Δ, Θ)` of exactly `length` letters.
pub fn generate_word_prefix(
    seq: &BidirectiveSequence,
    length: usize,
) -> Result<FiniteWord, GrowthCapExceeded> {
    generate_word_prefix_with_cap(seq, length, DEFAULT_GROWTH_CAP)
}

pub fn generate_word_prefix_with_cap(
    seq: &BidirectiveSequence,
    length: usize,
    cap: usize,
) -> Result<FiniteWord, GrowthCapExceeded> {
    let mut generator = PrefixGenerator::with_cap(seq, cap);
    generator.extend_to(length)?;
    Ok(generator.word_prefix(length))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};
    use alloc::vec;
    use proptest::prelude::*;

    fn w(s: &str) -> FiniteWord {
        s.parse().unwrap()
    }

    /// Shortest ϑ-palindrome with prefix `word`, by trying every extension
    /// length and every completion.
    fn brute_closure(word: &FiniteWord, theta: Antimorphism) -> FiniteWord {
        for extra in 0..=word.len() + 1 {
            for code in 0u32..(1 << extra) {
                let mut cand = word.clone();
                for i in 0..extra {
                    cand.push(Letter::from_bit(code >> i & 1 == 1));
                }
                if theta.is_palindrome(&cand) {
                    return cand;
                }
            }
        }
        unreachable!("closure always exists within 2|w| letters")
    }

    #[test]
    fn closure_examples() {
        assert_eq!(palindromic_closure(&w("0100")), w("010010"));
        assert_eq!(palindromic_closure(&w("010")), w("010"));
        assert_eq!(palindromic_closure(&w("0001")), w("0001000"));
        assert_eq!(pseudopalindromic_closure(&w("0010")), w("001011"));
        assert_eq!(pseudopalindromic_closure(&w("0101")), w("0101"));
        assert_eq!(pseudopalindromic_closure(&w("000")), w("000111"));
        assert_eq!(generalized_closure(&w("0100"), Antimorphism::R), w("010010"));
        assert_eq!(generalized_closure(&w("000"), Antimorphism::E), w("000111"));
        assert_eq!(generalized_closure(&w(""), Antimorphism::R), w(""));
    }

    #[test]
    fn thue_morse_examples() {
        assert_eq!(thue_morse_image(&w("0")), w("01"));
        assert_eq!(thue_morse_image(&w("010")), w("011001"));
        assert_eq!(thue_morse_image(&w("")), w(""));
    }

    fn chain_strings(seq: &BidirectiveSequence, k: usize) -> Vec<String> {
        generate_chain(seq, k)
            .unwrap()
            .iter()
            .map(|(_, w)| w.to_string())
            .collect()
    }

    #[test]
    fn fibonacci_chain() {
        let seq = BidirectiveSequence::from_parts("", "01", "", "R");
        assert_eq!(chain_strings(&seq, 4), ["0", "010", "010010", "01001010010"]);
    }

    #[test]
    fn e_standard_chain() {
        let seq = BidirectiveSequence::from_parts("", "01", "", "E");
        assert_eq!(chain_strings(&seq, 3), ["01", "011001", "011001011001"]);
    }

    #[test]
    fn counterexample_chain_head() {
        let seq = BidirectiveSequence::from_parts("", "1", "", "EERR");
        assert_eq!(
            chain_strings(&seq, 6),
            [
                "10",
                "1010",
                "10101",
                "1010110101",
                "1010110101100101001010",
                "1010110101100101001010110101100101001010",
            ]
        );
    }

    #[test]
    fn word_prefix_examples() {
        let up = BidirectiveSequence::from_parts("", "1", "", "EERR");
        assert_eq!(generate_word_prefix(&up, 10).unwrap(), w("1010110101"));
        assert_eq!(generate_word_prefix(&up, 0).unwrap(), w(""));
        let s = BidirectiveSequence::from_parts("", "011", "", "EER");
        assert_eq!(generate_word_prefix(&s, 8).unwrap(), w("01100110"));
    }

    #[test]
    fn chain_prefix_zero_is_empty() {
        let seq = BidirectiveSequence::from_parts("", "01", "", "R");
        let chain = generate_chain(&seq, 0).unwrap();
        assert!(chain.is_empty());
        assert_eq!(chain.prefix(0), w(""));
    }

    #[test]
    fn growth_cap_is_enforced() {
        let seq = BidirectiveSequence::from_parts("", "01", "", "R");
        let err = generate_chain_with_cap(&seq, 40, 1000).unwrap_err();
        assert_eq!(err.cap, 1000);
        assert!(err.attempted > 1000);
        assert!(generate_word_prefix_with_cap(&seq, 990, 1000).is_err());
        assert_eq!(generate_word_prefix_with_cap(&seq, 980, 1000).unwrap().len(), 980);
    }

    #[test]
    fn closure_minimality_exhaustive() {
        for n in 0..=8usize {
            for code in 0u32..(1 << n) {
                let word: FiniteWord = (0..n).map(|i| Letter::from_bit(code >> i & 1 == 1)).collect();
                for theta in [Antimorphism::R, Antimorphism::E] {
                    assert_eq!(generalized_closure(&word, theta), brute_closure(&word, theta));
                }
            }
        }
    }

    fn arb_word(max: usize) -> impl Strategy<Value = FiniteWord> {
        proptest::collection::vec(any::<bool>(), 0..max)
            .prop_map(|v| v.into_iter().map(Letter::from_bit).collect())
    }

    fn arb_thetas(max: usize) -> impl Strategy<Value = Vec<Antimorphism>> {
        proptest::collection::vec(prop_oneof![Just(Antimorphism::R), Just(Antimorphism::E)], 0..max)
    }

    fn arb_sequence() -> impl Strategy<Value = BidirectiveSequence> {
        (arb_word(5), arb_word(5), arb_thetas(5), arb_thetas(5)).prop_map(|(dp, mut dq, tp, mut tq)| {
            if dq.is_empty() {
                dq.push(Letter::One);
            }
            if tq.is_empty() {
                tq.push(Antimorphism::E);
            }
            BidirectiveSequence::new(dp, dq, tp, tq).unwrap()
        })
    }

    /// The recurrence applied literally with the border-scan closure.
    fn naive_chain(seq: &BidirectiveSequence, steps: usize) -> Vec<FiniteWord> {
        let mut out = vec![];
        let mut cur = FiniteWord::new();
        for k in 1..=steps {
            cur.push(seq.delta(k));
            cur = generalized_closure(&cur, seq.theta(k));
            out.push(cur.clone());
        }
        out
    }

    proptest! {
        #[test]
        fn closure_is_idempotent_and_bounded(word in arb_word(60)) {
            let r = palindromic_closure(&word);
            let e = pseudopalindromic_closure(&word);
            prop_assert!(r.starts_with(&word) && e.starts_with(&word));
            prop_assert!(Antimorphism::R.is_palindrome(&r));
            prop_assert!(Antimorphism::E.is_palindrome(&e));
            prop_assert_eq!(palindromic_closure(&r), r.clone());
            prop_assert_eq!(pseudopalindromic_closure(&e), e.clone());
            prop_assert!(r.len() <= (2 * word.len()).saturating_sub(1).max(word.len()));
            prop_assert!(e.len() <= 2 * word.len());
        }

        #[test]
        fn generator_agrees_with_literal_recurrence(seq in arb_sequence()) {
            let chain = generate_chain(&seq, 9).unwrap();
            let naive = naive_chain(&seq, 9);
            for (k, expected) in naive.iter().enumerate() {
                prop_assert_eq!(&chain.prefix(k + 1), expected);
            }
        }

        #[test]
        fn chain_invariants(seq in arb_sequence()) {
            let chain = generate_chain(&seq, 10).unwrap();
            for k in 1..=10 {
                let step = chain.steps()[k - 1];
                let wk = chain.prefix(k);
                prop_assert!(step.theta.is_palindrome(&wk));
                prop_assert_eq!(step.letter, seq.delta(k));
                prop_assert!(chain.prefix_len(k) > chain.prefix_len(k - 1));
                prop_assert!(wk.starts_with(&chain.prefix(k - 1)));
            }
        }
    }
}
