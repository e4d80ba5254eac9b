use std::collections::BTreeSet;

use pseudostandard_core::complexity::{occurrences, FactorIndex};
use pseudostandard_core::counterexample::{
    first_occurrence_check, saturated_up_prefix, up_sequence, UpChain,
};
use pseudostandard_core::{
    bispecials_up_to, complexity_profile, generate_word_prefix, second_difference_consistency,
    Antimorphism, Classification, FiniteWord,
};

fn w(s: &str) -> FiniteWord {
    s.parse().unwrap()
}

#[test]
fn members_alternate_between_e_and_r_palindromes() {
    let chain = UpChain::generate(16).unwrap();
    for k in 0..4isize {
        assert!(Antimorphism::E.is_palindrome(&chain.w(4 * k + 1)));
        assert!(Antimorphism::E.is_palindrome(&chain.w(4 * k + 2)));
        assert!(Antimorphism::R.is_palindrome(&chain.w(4 * k + 3)));
        assert!(Antimorphism::R.is_palindrome(&chain.w(4 * k + 4)));
    }
}

#[test]
fn weak_bispecials_are_exactly_the_named_family() {
    let chain = UpChain::generate(13).unwrap();
    let mut expected = BTreeSet::new();
    for k in 1..=2 {
        let s1 = chain.s_4k1(k).unwrap();
        let s3 = chain.s_4k3(k).unwrap();
        expected.insert(Antimorphism::E.apply(&s1));
        expected.insert(s1);
        expected.insert(Antimorphism::R.apply(&s3));
        expected.insert(s3);
    }
    let max_len = chain.s_4k3(2).unwrap().len();
    assert_eq!(max_len, 364);
    let prefix = saturated_up_prefix(max_len + 2).unwrap();
    let weak: BTreeSet<FiniteWord> = bispecials_up_to(&prefix, max_len)
        .unwrap()
        .into_iter()
        .filter(|r| r.classification == Classification::Weak)
        .map(|r| r.factor)
        .collect();
    assert_eq!(weak, expected);
}

#[test]
fn bispecial_sweep_lists_s5_and_its_image() {
    let prefix = saturated_up_prefix(26).unwrap();
    let reports = bispecials_up_to(&prefix, 24).unwrap();
    let find = |f: &FiniteWord| reports.iter().find(|r| &r.factor == f).map(|r| r.classification);
    assert_eq!(find(&w("011010110")), Some(Classification::Weak));
    assert_eq!(find(&w("100101001")), Some(Classification::Weak));
    assert_eq!(find(&w("010101101011001010010101")), Some(Classification::Weak));
    let keys: Vec<(usize, FiniteWord)> = reports.iter().map(|r| (r.factor.len(), r.factor.clone())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn weak_family_contributes_minus_two() {
    let chain = UpChain::generate(16).unwrap();
    for k in 1..=3 {
        for s in [chain.s_4k1(k).unwrap(), chain.s_4k3(k).unwrap()] {
            let prefix = saturated_up_prefix(s.len() + 2).unwrap();
            let index = FactorIndex::new(&prefix);
            let image = if Antimorphism::R.is_palindrome(&s) {
                Antimorphism::E.apply(&s)
            } else {
                Antimorphism::R.apply(&s)
            };
            let total: i64 = [&s, &image].iter().map(|f| index.report(f).unwrap().b_value).sum();
            assert_eq!(total, -2, "k = {k}, |s| = {}", s.len());
        }
    }
}

#[test]
fn strong_members_raise_the_second_difference() {
    let chain = UpChain::generate(12).unwrap();
    for k in 1..=2isize {
        for n in [chain.len_of(4 * k + 1), chain.len_of(4 * k + 3)] {
            let prefix = saturated_up_prefix(n + 2).unwrap();
            let profile = complexity_profile(&prefix, n).unwrap();
            assert!(profile.rows[n].d2c >= 2, "n = {n}: {:?}", profile.rows[n]);
        }
    }
}

#[test]
fn second_difference_at_s5() {
    let prefix = saturated_up_prefix(11).unwrap();
    let check = second_difference_consistency(&prefix, 9).unwrap();
    assert!(check.holds());
}

#[test]
fn factor_sets_are_closed_under_both_antimorphisms() {
    let prefix = saturated_up_prefix(40).unwrap();
    let index = FactorIndex::new(&prefix);
    for n in 1..=40 {
        let factors: BTreeSet<FiniteWord> = index.factors_of_length(n).into_iter().collect();
        for f in &factors {
            assert!(factors.contains(&Antimorphism::R.apply(f)), "R-image of {f}");
            assert!(factors.contains(&Antimorphism::E.apply(f)), "E-image of {f}");
        }
    }
}

#[test]
fn doubling_agrees_with_the_proven_prefix() {
    let proven = saturated_up_prefix(66).unwrap();
    let proven_counts = FactorIndex::new(&proven).counts(64);
    let profile = pseudostandard_core::analyze_infinite(&up_sequence(), 64).unwrap();
    let heuristic: Vec<u64> = profile.rows.iter().map(|r| r.c).collect();
    assert_eq!(heuristic, proven_counts);
}

#[test]
fn factor_counts_match_naive_enumeration() {
    let prefix = generate_word_prefix(&up_sequence(), 1 << 12).unwrap();
    let text = prefix.to_string();
    let counts = FactorIndex::new(&prefix).counts(60);
    for n in 0..=60 {
        let naive: BTreeSet<&str> = (0..=text.len() - n).map(|i| &text[i..i + n]).collect();
        assert_eq!(counts[n], naive.len() as u64, "n = {n}");
    }
}

#[test]
fn worked_occurrence_indices() {
    let chain = UpChain::generate(5).unwrap();
    let w4 = chain.w(4);
    let w5 = chain.w(5);
    let images = [w("110"), w("100"), w("011"), w("001")];
    let first = images
        .iter()
        .filter_map(|v| occurrences(&w4, v).first().copied().map(|i| (i, v.to_string())))
        .min()
        .unwrap();
    assert_eq!(first, (3, "011".to_string()));
    assert!(occurrences(&w4, &w("110")).contains(&4));
    assert!(occurrences(&w5, &w("110")).contains(&9));
}

#[test]
fn first_occurrences_sit_in_the_centre() {
    for k in 0..=2 {
        assert!(first_occurrence_check(k).unwrap().holds(), "k = {k}");
    }
}
