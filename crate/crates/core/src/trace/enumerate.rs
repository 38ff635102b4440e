//! Linear-extension enumeration and counting, and the commutation class of a
//! word as explicit closure under adjacent commuting swaps.
//!
//! Enumeration backtracks over the minimal elements of what remains, always
//! trying the smallest element id first, so the stream order is
//! deterministic. Counting runs the classic dynamic program over down-sets;
//! both carry explicit budgets because the counts can be astronomically
//! large while the inputs stay small.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::trace::alphabet::{Alphabet, Word};
use crate::trace::poset::WordPoset;

/// Default cap on enumerated words (linear extensions, BFS classes).
pub const DEFAULT_WORD_BUDGET: usize = 1_000_000;
/// Default cap on distinct down-sets visited while counting extensions.
pub const DEFAULT_DOWNSET_BUDGET: usize = 10_000_000;

struct Frame {
    choices: Vec<usize>,
    idx: usize,
}

/// Lazy stream of the linear extensions of a word poset, emitted as words
/// (the labels read along each extension).
pub struct LinearExtensions<'a> {
    poset: &'a WordPoset,
    succs: Vec<Vec<usize>>,
    indeg: Vec<usize>,
    placed_mask: Vec<bool>,
    placed: Vec<usize>,
    frames: Vec<Frame>,
    done: bool,
}

impl WordPoset {
    /// Streams every linear extension exactly once, smallest element id
    /// first at each step.
    pub fn linear_extensions(&self) -> LinearExtensions<'_> {
        let n = self.size();
        let mut succs = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(u, v) in self.covers() {
            succs[u].push(v);
            indeg[v] += 1;
        }
        let first = Frame {
            choices: (0..n).filter(|&u| indeg[u] == 0).collect(),
            idx: 0,
        };
        LinearExtensions {
            poset: self,
            succs,
            indeg,
            placed_mask: vec![false; n],
            placed: Vec::with_capacity(n),
            frames: vec![first],
            done: false,
        }
    }

    /// Collects the whole class through the extension stream, failing once
    /// more than `limit` words exist.
    pub fn enumerate_words(&self, limit: usize) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        for word in self.linear_extensions() {
            if out.len() >= limit {
                return Err(Error::BudgetExceeded {
                    what: "enumerating linear extensions",
                    limit,
                });
            }
            out.push(word);
        }
        Ok(out)
    }

    /// Number of linear extensions, computed by the down-set dynamic
    /// program. Fails once the memo table would exceed `node_budget`
    /// distinct down-sets.
    pub fn count_linear_extensions(&self, node_budget: usize) -> Result<BigUint> {
        let n = self.size();
        if n == 0 {
            return Ok(BigUint::one());
        }
        let stride = n.div_ceil(64);
        let strictly_above: Vec<Box<[u64]>> = (0..n)
            .map(|u| {
                let mut row: Box<[u64]> = self.up().row(u).into();
                row[u / 64] &= !(1u64 << (u % 64));
                row
            })
            .collect();
        let mut full = vec![u64::MAX; stride].into_boxed_slice();
        let spare = stride * 64 - n;
        if spare > 0 {
            full[stride - 1] >>= spare;
        }
        let mut counter = DownSetCounter {
            strictly_above,
            memo: HashMap::new(),
            budget: node_budget,
        };
        counter.count(full)
    }
}

struct DownSetCounter {
    strictly_above: Vec<Box<[u64]>>,
    memo: HashMap<Box<[u64]>, BigUint>,
    budget: usize,
}

impl DownSetCounter {
    /// Extensions of the down-set `mask`: sum over its maximal elements of
    /// the count with that element removed.
    fn count(&mut self, mask: Box<[u64]>) -> Result<BigUint> {
        if mask.iter().all(|&w| w == 0) {
            return Ok(BigUint::one());
        }
        if let Some(v) = self.memo.get(&mask) {
            return Ok(v.clone());
        }
        let mut total = BigUint::zero();
        for (w, &bits) in mask.iter().enumerate() {
            let mut rest = bits;
            while rest != 0 {
                let m = w * 64 + rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let is_maximal = self.strictly_above[m]
                    .iter()
                    .zip(mask.iter())
                    .all(|(a, b)| a & b == 0);
                if is_maximal {
                    let mut next = mask.clone();
                    next[m / 64] &= !(1u64 << (m % 64));
                    total += self.count(next)?;
                }
            }
        }
        if self.memo.len() >= self.budget {
            return Err(Error::BudgetExceeded {
                what: "counting linear extensions (down-set table)",
                limit: self.budget,
            });
        }
        self.memo.insert(mask, total.clone());
        Ok(total)
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let n = self.poset.size();
        if n == 0 {
            self.done = true;
            return Some(Word::empty());
        }
        loop {
            let Some(frame) = self.frames.last_mut() else {
                self.done = true;
                return None;
            };
            if frame.idx < frame.choices.len() {
                let e = frame.choices[frame.idx];
                frame.idx += 1;
                self.placed.push(e);
                self.placed_mask[e] = true;
                for &v in &self.succs[e] {
                    self.indeg[v] -= 1;
                }
                if self.placed.len() == n {
                    let word = self.placed.iter().map(|&u| self.poset.label(u)).collect();
                    self.unplace();
                    return Some(word);
                }
                let choices = (0..n)
                    .filter(|&u| !self.placed_mask[u] && self.indeg[u] == 0)
                    .collect();
                self.frames.push(Frame { choices, idx: 0 });
            } else {
                self.frames.pop();
                if !self.placed.is_empty() {
                    self.unplace();
                }
            }
        }
    }
}

impl LinearExtensions<'_> {
    fn unplace(&mut self) {
        let e = self.placed.pop().expect("unplace with empty prefix");
        self.placed_mask[e] = false;
        for &v in &self.succs[e] {
            self.indeg[v] += 1;
        }
    }
}

/// The commutation class of `word`: closure under swapping adjacent
/// commuting letters, by breadth-first search. Fails once the class exceeds
/// `limit` words.
pub fn commutation_class_bfs(
    word: &Word,
    alphabet: &Alphabet,
    limit: usize,
) -> Result<BTreeSet<Word>> {
    alphabet.validate_word(word)?;
    let mut seen = BTreeSet::new();
    if 1 > limit {
        return Err(Error::BudgetExceeded { what: "commutation-class search", limit });
    }
    seen.insert(word.clone());
    let mut queue = VecDeque::from([word.clone()]);
    while let Some(current) = queue.pop_front() {
        let letters = current.letters();
        for i in 0..letters.len().saturating_sub(1) {
            if alphabet.commutes(letters[i], letters[i + 1]) {
                let mut swapped = letters.to_vec();
                swapped.swap(i, i + 1);
                let next = Word::new(swapped);
                if !seen.contains(&next) {
                    if seen.len() >= limit {
                        return Err(Error::BudgetExceeded {
                            what: "commutation-class search",
                            limit,
                        });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen)
}

/// The lexicographically least word (by symbol id) of `word`'s commutation
/// class, read greedily off the word poset.
pub fn canonical_word(word: &Word, alphabet: &Alphabet) -> Result<Word> {
    Ok(crate::trace::poset::build_poset(word, alphabet)?.canonical_extension_word())
}
