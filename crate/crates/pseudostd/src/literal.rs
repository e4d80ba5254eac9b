//! Text form of bidirective sequences.
//!
//! A literal is `DELTA;THETA` where each side reads `prefix(period)^w`.
//! The prefix may be empty, and a period of one symbol may drop its
//! parentheses, so `1^w`, `(1)^w` and `01^w` (prefix `0`, period `1`) are
//! all accepted. Whitespace anywhere is ignored and `^ω` may replace `^w`.
//! Letters are `0`/`1` on the left of the semicolon and `R`/`E` on the right.

use std::fmt;
use std::str::FromStr;

use pseudostandard_core::{Antimorphism, BidirectiveSequence, FiniteWord, Letter, ParseError};

/// A parsed literal. Rendering goes through the sequence's canonical
/// `prefix(period)^w;prefix(period)^w` form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceLiteral(pub BidirectiveSequence);

impl SequenceLiteral {
    pub fn sequence(&self) -> &BidirectiveSequence {
        &self.0
    }

    pub fn into_sequence(self) -> BidirectiveSequence {
        self.0
    }
}

impl FromStr for SequenceLiteral {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        parse(text).map(SequenceLiteral)
    }
}

impl fmt::Display for SequenceLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn render(seq: &BidirectiveSequence) -> String {
    seq.to_string()
}

/// A non-whitespace character with its byte offset in the input.
type Token = (usize, char);

pub fn parse(text: &str) -> Result<BidirectiveSequence, ParseError> {
    let tokens: Vec<Token> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut semicolons = tokens.iter().enumerate().filter(|(_, t)| t.1 == ';');
    let (split, &(split_pos, _)) = semicolons
        .next()
        .ok_or(ParseError::new(text.len(), "expected ';' between the letter and antimorphism streams"))?;
    if let Some((_, &(pos, _))) = semicolons.next() {
        return Err(ParseError::new(pos, "unexpected second ';'"));
    }
    let (dp, dq) = split_side(&tokens[..split], split_pos)?;
    let (tp, tq) = split_side(&tokens[split + 1..], text.len())?;
    let letter = |&(pos, c): &Token| Letter::from_char(c).ok_or(ParseError::new(pos, "expected '0' or '1'"));
    let theta_of = |&(pos, c): &Token| Antimorphism::from_char(c).ok_or(ParseError::new(pos, "expected 'R' or 'E'"));
    let dp: FiniteWord = dp.iter().map(letter).collect::<Result<_, _>>()?;
    let dq: FiniteWord = dq.iter().map(letter).collect::<Result<_, _>>()?;
    let tp: Vec<Antimorphism> = tp.iter().map(theta_of).collect::<Result<_, _>>()?;
    let tq: Vec<Antimorphism> = tq.iter().map(theta_of).collect::<Result<_, _>>()?;
    Ok(BidirectiveSequence::new(dp, dq, tp, tq).expect("periods are checked nonempty while splitting"))
}

/// Splits one side into `(prefix, period)` symbols. `end` is the byte
/// offset reported when the side is truncated.
fn split_side(side: &[Token], end: usize) -> Result<(&[Token], &[Token]), ParseError> {
    let caret = side
        .iter()
        .rposition(|&(_, c)| c == '^')
        .ok_or(ParseError::new(end, "expected '^w' after the period"))?;
    match &side[caret + 1..] {
        [(_, 'w' | 'ω')] => {}
        [] => return Err(ParseError::new(end, "expected 'w' after '^'")),
        [(pos, _), ..] => return Err(ParseError::new(*pos, "expected a single 'w' after '^'")),
    }
    let body = &side[..caret];
    let (prefix, period) = match body.last() {
        None => return Err(ParseError::new(side[caret].0, "missing period before '^w'")),
        Some(&(close, ')')) => {
            let open = body
                .iter()
                .rposition(|&(_, c)| c == '(')
                .ok_or(ParseError::new(close, "unmatched ')'"))?;
            let period = &body[open + 1..body.len() - 1];
            if period.is_empty() {
                return Err(ParseError::new(close, "empty period"));
            }
            (&body[..open], period)
        }
        Some(_) => body.split_at(body.len() - 1),
    };
    if let Some(&(pos, _)) = prefix.iter().chain(period).find(|&&(_, c)| "()^".contains(c)) {
        return Err(ParseError::new(pos, "misplaced bracket or '^'"));
    }
    Ok((prefix, period))
}
