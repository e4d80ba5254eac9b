//! Online suffix automaton over `{0, 1}`.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) const NONE: u32 = u32::MAX;
pub(crate) const ROOT: u32 = 0;

#[derive(Clone, Copy)]
struct State {
    len: u32,
    link: u32,
    next: [u32; 2],
}

#[derive(Clone)]
pub(crate) struct SuffixAutomaton {
    states: Vec<State>,
    last: u32,
    text_len: usize,
}

impl SuffixAutomaton {
    pub fn new() -> Self {
        SuffixAutomaton {
            states: vec![State {
                len: 0,
                link: NONE,
                next: [NONE; 2],
            }],
            last: ROOT,
            text_len: 0,
        }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut sam = SuffixAutomaton::new();
        sam.states.reserve(2 * bits.len());
        for &b in bits {
            sam.push(b);
        }
        sam
    }

    pub fn text_len(&self) -> usize {
        self.text_len
    }

    pub fn next(&self, state: u32, bit: u8) -> Option<u32> {
        let t = self.states[state as usize].next[bit as usize];
        (t != NONE).then_some(t)
    }

    pub fn push(&mut self, bit: u8) {
        let c = bit as usize;
        self.text_len += 1;
        let cur = self.states.len() as u32;
        self.states.push(State {
            len: self.states[self.last as usize].len + 1,
            link: NONE,
            next: [NONE; 2],
        });
        let mut p = self.last;
        while p != NONE && self.states[p as usize].next[c] == NONE {
            self.states[p as usize].next[c] = cur;
            p = self.states[p as usize].link;
        }
        if p == NONE {
            self.states[cur as usize].link = ROOT;
        } else {
            let q = self.states[p as usize].next[c];
            if self.states[p as usize].len + 1 == self.states[q as usize].len {
                self.states[cur as usize].link = q;
            } else {
                let clone = self.states.len() as u32;
                let mut copy = self.states[q as usize];
                copy.len = self.states[p as usize].len + 1;
                self.states.push(copy);
                while p != NONE && self.states[p as usize].next[c] == q {
                    self.states[p as usize].next[c] = clone;
                    p = self.states[p as usize].link;
                }
                self.states[q as usize].link = clone;
                self.states[cur as usize].link = clone;
            }
        }
        self.last = cur;
    }

    /// Number of distinct factors of each length `0..=n_max` of the text
    /// read so far.
    pub fn counts(&self, n_max: usize) -> Vec<u64> {
        let mut diff = vec![0i64; n_max + 2];
        diff[0] += 1;
        diff[1] -= 1;
        for s in &self.states[1..] {
            let lo = self.states[s.link as usize].len as usize + 1;
            let hi = s.len as usize;
            if lo <= n_max {
                diff[lo] += 1;
                diff[hi.min(n_max) + 1] -= 1;
            }
        }
        let mut acc = 0i64;
        diff[..=n_max]
            .iter()
            .map(|d| {
                acc += d;
                acc as u64
            })
            .collect()
    }

    /// State reached by reading `bits` from the root.
    pub fn walk(&self, bits: impl IntoIterator<Item = u8>) -> Option<u32> {
        bits.into_iter().try_fold(ROOT, |s, b| self.next(s, b))
    }
}
