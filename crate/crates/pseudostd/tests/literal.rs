use proptest::prelude::*;
use pseudostandard_core::{Antimorphism, BidirectiveSequence, FiniteWord, Letter};
use pseudostd::{parse, render, SequenceLiteral};

fn letters(min: usize) -> impl Strategy<Value = FiniteWord> {
    prop::collection::vec(any::<bool>(), min..6).prop_map(|v| v.into_iter().map(Letter::from_bit).collect())
}

fn thetas(min: usize) -> impl Strategy<Value = Vec<Antimorphism>> {
    prop::collection::vec(any::<bool>(), min..6)
        .prop_map(|v| v.into_iter().map(|e| if e { Antimorphism::E } else { Antimorphism::R }).collect())
}

fn sequences() -> impl Strategy<Value = BidirectiveSequence> {
    (letters(0), letters(1), thetas(0), thetas(1))
        .prop_map(|(dp, dq, tp, tq)| BidirectiveSequence::new(dp, dq, tp, tq).unwrap())
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(s in sequences()) {
        prop_assert_eq!(parse(&render(&s)).unwrap(), s);
    }

    #[test]
    fn rendering_is_a_fixed_point(s in sequences()) {
        let once = render(&s);
        prop_assert_eq!(render(&parse(&once).unwrap()), once);
    }

    #[test]
    fn whitespace_is_ignored(s in sequences(), gaps in prop::collection::vec(0usize..3, 64)) {
        let text: String = render(&s)
            .chars()
            .zip(gaps.iter().cycle())
            .flat_map(|(c, &g)| std::iter::repeat_n(' ', g).chain(std::iter::once(c)))
            .collect();
        prop_assert_eq!(parse(&text).unwrap(), s);
    }

    #[test]
    fn garbage_never_panics(text in "[01RE()^w; x]{0,24}") {
        let _ = parse(&text);
    }
}

#[test]
fn literal_newtype_round_trips() {
    let lit: SequenceLiteral = "1010(1)^w;RERE(RREE)^w".parse().unwrap();
    assert_eq!(lit.to_string(), "1010(1)^w;RERE(RREE)^w");
    assert_eq!(lit.sequence().theta_preperiod().len(), 4);
}
