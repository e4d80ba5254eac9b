//! Binary words, the two involutory antimorphisms `R` and `E`, and
//! palindromic-suffix primitives.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::ParseError;

/// A letter of the binary alphabet `{0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Zero,
    One,
}

impl Letter {
    #[inline]
    pub const fn from_bit(bit: bool) -> Self {
        if bit {
            Letter::One
        } else {
            Letter::Zero
        }
    }

    #[inline]
    pub const fn bit(self) -> bool {
        matches!(self, Letter::One)
    }

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    /// The letter written with a bar: `0̄ = 1`, `1̄ = 0`.
    #[inline]
    pub const fn complement(self) -> Self {
        match self {
            Letter::Zero => Letter::One,
            Letter::One => Letter::Zero,
        }
    }

    pub const fn to_char(self) -> char {
        match self {
            Letter::Zero => '0',
            Letter::One => '1',
        }
    }

    pub const fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Letter::Zero),
            '1' => Some(Letter::One),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// One of the two involutory antimorphisms over `{0, 1}`.
///
/// `R` is the mirror map, `E` reverses and exchanges the letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Antimorphism {
    R,
    E,
}

impl Antimorphism {
    /// `R̄ = E`, `Ē = R`.
    #[inline]
    pub const fn complement(self) -> Self {
        match self {
            Antimorphism::R => Antimorphism::E,
            Antimorphism::E => Antimorphism::R,
        }
    }

    /// Image of a single letter: `R` fixes letters, `E` exchanges them.
    #[inline]
    pub const fn map_letter(self, a: Letter) -> Letter {
        match self {
            Antimorphism::R => a,
            Antimorphism::E => a.complement(),
        }
    }

    pub fn apply(self, w: &FiniteWord) -> FiniteWord {
        let n = w.len();
        let mut out = FiniteWord::with_capacity(n);
        for i in (0..n).rev() {
            out.push(self.map_letter(w.get(i)));
        }
        out
    }

    pub fn is_palindrome(self, w: &FiniteWord) -> bool {
        let n = w.len();
        (0..n / 2).all(|i| w.get(i) == self.map_letter(w.get(n - 1 - i)))
            && (n.is_multiple_of(2) || self == Antimorphism::R)
    }

    pub const fn to_char(self) -> char {
        match self {
            Antimorphism::R => 'R',
            Antimorphism::E => 'E',
        }
    }

    pub const fn from_char(c: char) -> Option<Self> {
        match c {
            'R' => Some(Antimorphism::R),
            'E' => Some(Antimorphism::E),
            _ => None,
        }
    }
}

impl fmt::Display for Antimorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

const BLOCK: usize = 64;

/// An immutable-by-convention binary word stored as packed bits.
///
/// Bits beyond `len` in the last block are always zero, so derived
/// equality and hashing agree with letterwise equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FiniteWord {
    blocks: Vec<u64>,
    len: usize,
}

impl FiniteWord {
    pub const fn new() -> Self {
        FiniteWord {
            blocks: Vec::new(),
            len: 0,
        }
    }

    pub fn with_capacity(letters: usize) -> Self {
        FiniteWord {
            blocks: Vec::with_capacity(letters.div_ceil(BLOCK)),
            len: 0,
        }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = FiniteWord::new();
        for a in letters {
            w.push(a);
        }
        w
    }

    /// Builds a word from bytes that are `0` or `1`.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut w = FiniteWord::with_capacity(bits.len());
        for &b in bits {
            w.push(Letter::from_bit(b != 0));
        }
        w
    }

    /// `a^n`.
    pub fn repeat_letter(a: Letter, n: usize) -> Self {
        let mut w = FiniteWord::with_capacity(n);
        for _ in 0..n {
            w.push(a);
        }
        w
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> Letter {
        assert!(i < self.len, "index {i} out of range for word of length {}", self.len);
        Letter::from_bit((self.blocks[i / BLOCK] >> (i % BLOCK)) & 1 == 1)
    }

    pub fn first(&self) -> Option<Letter> {
        (!self.is_empty()).then(|| self.get(0))
    }

    pub fn last(&self) -> Option<Letter> {
        (!self.is_empty()).then(|| self.get(self.len - 1))
    }

    #[inline]
    pub fn push(&mut self, a: Letter) {
        if self.len.is_multiple_of(BLOCK) {
            self.blocks.push(0);
        }
        if a.bit() {
            self.blocks[self.len / BLOCK] |= 1 << (self.len % BLOCK);
        }
        self.len += 1;
    }

    pub fn extend_from(&mut self, other: &FiniteWord) {
        if self.len.is_multiple_of(BLOCK) {
            self.blocks.extend_from_slice(&other.blocks);
            self.len += other.len;
            return;
        }
        for a in other.iter() {
            self.push(a);
        }
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut out = FiniteWord::with_capacity(self.len + other.len);
        out.extend_from(self);
        out.extend_from(other);
        out
    }

    pub fn truncate(&mut self, n: usize) {
        if n >= self.len {
            return;
        }
        self.len = n;
        self.blocks.truncate(n.div_ceil(BLOCK));
        if !n.is_multiple_of(BLOCK) {
            let last = self.blocks.len() - 1;
            self.blocks[last] &= (1u64 << (n % BLOCK)) - 1;
        }
    }

    /// The prefix of length `min(n, |w|)`.
    pub fn prefix(&self, n: usize) -> FiniteWord {
        let n = n.min(self.len);
        let mut out = FiniteWord {
            blocks: self.blocks[..n.div_ceil(BLOCK)].to_vec(),
            len: self.len,
        };
        out.truncate(n);
        out
    }

    /// The factor `w[start..end]`.
    pub fn factor(&self, start: usize, end: usize) -> FiniteWord {
        assert!(start <= end && end <= self.len, "factor {start}..{end} out of range");
        if start == 0 {
            return self.prefix(end);
        }
        let mut out = FiniteWord::with_capacity(end - start);
        for i in start..end {
            out.push(self.get(i));
        }
        out
    }

    pub fn suffix(&self, n: usize) -> FiniteWord {
        assert!(n <= self.len);
        self.factor(self.len - n, self.len)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Unpacks into one byte per letter (`0` or `1`).
    pub fn to_bits(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.len];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = ((self.blocks[i / BLOCK] >> (i % BLOCK)) & 1) as u8;
        }
        out
    }

    pub fn starts_with(&self, p: &FiniteWord) -> bool {
        p.len <= self.len && (0..p.len).all(|i| self.get(i) == p.get(i))
    }

    pub fn ends_with(&self, s: &FiniteWord) -> bool {
        let off = match self.len.checked_sub(s.len) {
            Some(off) => off,
            None => return false,
        };
        (0..s.len).all(|i| self.get(off + i) == s.get(i))
    }

    /// `p⁻¹w`: removes the prefix `p`, or `None` if `p` is not a prefix.
    pub fn strip_prefix(&self, p: &FiniteWord) -> Option<FiniteWord> {
        self.starts_with(p).then(|| self.factor(p.len, self.len))
    }

    /// `w·s⁻¹`: removes the suffix `s`, or `None` if `s` is not a suffix.
    pub fn strip_suffix(&self, s: &FiniteWord) -> Option<FiniteWord> {
        self.ends_with(s).then(|| self.prefix(self.len - s.len))
    }

    /// Letterwise exchange `0 ↔ 1`, i.e. the morphism `ER = RE`.
    pub fn complemented(&self) -> FiniteWord {
        FiniteWord::from_letters(self.iter().map(Letter::complement))
    }

    pub fn reversed(&self) -> FiniteWord {
        Antimorphism::R.apply(self)
    }

    /// Smallest `p` with `w[i] = w[i + p]` for all valid `i` (or `|w|`).
    pub fn smallest_period(&self) -> usize {
        let bits = self.to_bits();
        let fail = failure_function(&bits);
        match fail.last() {
            Some(&b) => bits.len() - b,
            None => 0,
        }
    }

    /// The shortest `r` with `w = r^k`.
    pub fn primitive_root(&self) -> FiniteWord {
        let p = self.smallest_period();
        if p > 0 && self.len.is_multiple_of(p) {
            self.prefix(p)
        } else {
            self.clone()
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive_root().len() == self.len
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use core::fmt::Write;
        for a in self.iter() {
            f.write_char(a.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for FiniteWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut w = FiniteWord::with_capacity(s.len());
        for (pos, c) in s.char_indices() {
            match Letter::from_char(c) {
                Some(a) => w.push(a),
                None => return Err(ParseError::new(pos, "expected '0' or '1'")),
            }
        }
        Ok(w)
    }
}

impl FromIterator<Letter> for FiniteWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        FiniteWord::from_letters(iter)
    }
}

impl PartialOrd for FiniteWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on letters, a proper prefix sorting first.
impl Ord for FiniteWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

/// KMP failure function: `fail[i]` is the length of the longest proper
/// border of `s[..=i]`.
pub(crate) fn failure_function(s: &[u8]) -> Vec<usize> {
    let mut fail = vec![0usize; s.len()];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

fn theta_bits(theta: Antimorphism, w: &FiniteWord) -> Vec<u8> {
    let mut bits = w.to_bits();
    bits.reverse();
    if theta == Antimorphism::E {
        for b in bits.iter_mut() {
            *b ^= 1;
        }
    }
    bits
}

const SEPARATOR: u8 = 2;

pub fn apply_antimorphism(theta: Antimorphism, w: &FiniteWord) -> FiniteWord {
    theta.apply(w)
}

pub fn is_theta_palindrome(theta: Antimorphism, w: &FiniteWord) -> bool {
    theta.is_palindrome(w)
}

/// Splits `w = p·s` with `s` the longest `ϑ`-palindromic suffix.
///
/// A suffix `s` of `w` is a `ϑ`-palindrome iff it is also a prefix of
/// `ϑ(w)`, so `|s|` is the longest border of `ϑ(w) # w`.
pub fn longest_theta_palindromic_suffix(
    theta: Antimorphism,
    w: &FiniteWord,
) -> (FiniteWord, FiniteWord) {
    let mut text = theta_bits(theta, w);
    text.push(SEPARATOR);
    text.extend(w.to_bits());
    let fail = failure_function(&text);
    let s_len = fail.last().copied().unwrap_or(0);
    let split = w.len() - s_len;
    (w.prefix(split), w.factor(split, w.len()))
}

/// All `ℓ ≤ |w|` (including 0) whose prefix of length `ℓ` is a
/// `ϑ`-palindrome, ascending.
///
/// A prefix `u` of `w` is a `ϑ`-palindrome iff it is a suffix of `ϑ(w)`,
/// so these are the border lengths of `w # ϑ(w)`.
pub fn theta_palindromic_prefix_lengths(theta: Antimorphism, w: &FiniteWord) -> Vec<usize> {
    let mut text = w.to_bits();
    text.push(SEPARATOR);
    text.extend(theta_bits(theta, w));
    let fail = failure_function(&text);
    let mut lengths = vec![];
    let mut b = fail.last().copied().unwrap_or(0);
    while b > 0 {
        lengths.push(b);
        b = fail[b - 1];
    }
    lengths.push(0);
    lengths.reverse();
    lengths
}
