//! Generalized pseudostandard words over the binary alphabet.
//!
//! The crate builds infinite words `u(Δ, Θ)` by iterated `R`/`E`
//! palindromic closure, normalizes bidirective sequences, decides
//! periodicity with an explicit period, and measures factor complexity.
//! Everything here is `no_std` with `alloc`.
#![no_std]

extern crate alloc;

pub mod closure;
pub mod complexity;
pub mod counterexample;
pub mod error;
pub mod normalize;
mod pal_tree;
pub mod periodicity;
pub mod sequence;
mod suffix_automaton;
pub mod word;

pub use closure::{
    generate_chain, generate_word_prefix, generalized_closure, palindromic_closure,
    pseudopalindromic_closure, thue_morse_image, PrefixChain, PrefixGenerator,
};
pub use normalize::{
    is_normalized, normalize, syntactic_normal_check, NormalizationCheck, NormalizationResult,
    RewriteEvent, RewriteRule,
};
pub use complexity::{
    analyze_infinite, bispecials_up_to, classify_factor, complexity_profile, factor_count,
    second_difference_consistency, BispecialReport, Classification, ComplexityProfile,
    FactorIndex,
};
pub use error::{GrowthCapExceeded, ParseError, SequenceError};
pub use periodicity::{
    extract_period, is_periodic, morse_hedlund_oracle, satisfies_condition, ConditionVerdict,
    OracleVerdict, PeriodError, PeriodicityVerdict, Witness,
};
pub use sequence::BidirectiveSequence;
pub use word::{Antimorphism, FiniteWord, Letter};
