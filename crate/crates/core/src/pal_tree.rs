//! Online tree of `ϑ`-palindromic factors (an eertree), used to track the
//! longest `ϑ`-palindromic suffix while a word grows one letter at a time.
//!
//! For `E` the imaginary root of length -1 never extends (no letter is
//! `E`-fixed), so walks that reach it fall back to the empty suffix.

use alloc::vec;
use alloc::vec::Vec;

use crate::word::Antimorphism;

const IMAGINARY: u32 = 0;
const EMPTY: u32 = 1;
const NONE: u32 = u32::MAX;

#[derive(Clone, Copy)]
struct Node {
    len: i64,
    link: u32,
    next: [u32; 2],
}

#[derive(Clone)]
pub(crate) struct PalTree {
    theta: Antimorphism,
    nodes: Vec<Node>,
    last: u32,
}

impl PalTree {
    pub fn new(theta: Antimorphism) -> Self {
        PalTree {
            theta,
            nodes: vec![
                Node {
                    len: -1,
                    link: IMAGINARY,
                    next: [NONE; 2],
                },
                Node {
                    len: 0,
                    link: IMAGINARY,
                    next: [NONE; 2],
                },
            ],
            last: EMPTY,
        }
    }

    /// Length of the longest `ϑ`-palindromic suffix of the word pushed so far.
    pub fn longest_suffix(&self) -> usize {
        self.nodes[self.last as usize].len as usize
    }

    /// Whether palindrome `node` followed by `s[i]` can be wrapped:
    /// `s[i - len - 1] = ϑ(s[i])`.
    fn extends(&self, s: &[u8], i: usize, node: u32) -> bool {
        let len = self.nodes[node as usize].len;
        let j = i as i64 - len - 1;
        if j < 0 {
            return false;
        }
        let mirrored = match self.theta {
            Antimorphism::R => s[i],
            Antimorphism::E => s[i] ^ 1,
        };
        s[j as usize] == mirrored
    }

    /// Walks suffix links from `node` to the longest palindrome that can be
    /// wrapped around `s[i]`. `None` only happens for `E`.
    fn find(&self, s: &[u8], i: usize, mut node: u32) -> Option<u32> {
        loop {
            if node == IMAGINARY {
                return match self.theta {
                    Antimorphism::R => Some(IMAGINARY),
                    Antimorphism::E => None,
                };
            }
            if self.extends(s, i, node) {
                return Some(node);
            }
            node = self.nodes[node as usize].link;
        }
    }

    /// Registers `s[i]`, where `s[..i]` has already been pushed.
    pub fn push(&mut self, s: &[u8], i: usize) {
        let c = s[i] as usize;
        let parent = match self.find(s, i, self.last) {
            Some(p) => p,
            None => {
                self.last = EMPTY;
                return;
            }
        };
        let existing = self.nodes[parent as usize].next[c];
        if existing != NONE {
            self.last = existing;
            return;
        }
        let len = self.nodes[parent as usize].len + 2;
        let link = if len == 1 {
            EMPTY
        } else {
            let from = self.nodes[parent as usize].link;
            match self.find(s, i, from) {
                Some(p) => self.nodes[p as usize].next[c],
                None => EMPTY,
            }
        };
        debug_assert!(link != NONE);
        let id = self.nodes.len() as u32;
        self.nodes.push(Node {
            len,
            link,
            next: [NONE; 2],
        });
        self.nodes[parent as usize].next[c] = id;
        self.last = id;
    }
}
