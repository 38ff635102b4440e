//! Group elements as exact matrices of the reflection representation.
//!
//! An element stores its action matrix (column `s` is the image of the
//! simple root `r_s`) together with the matrix of its inverse, maintained
//! jointly so both right descents (negative columns of the action) and left
//! descents (negative columns of the inverse) are read off directly.
//! Multiplying on the right by a generator is a rank-one column update,
//! O(n^2) scalar operations; the inverse gets the matching row update.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::coxeter::system::{CoxeterSystem, RootSign, RootVec};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::trace::Word;

/// An element of a Coxeter group, represented exactly.
#[derive(Clone)]
pub struct GroupElement {
    sys: CoxeterSystem,
    /// Row-major n*n matrix of the element acting on root coordinates.
    action: Vec<Scalar>,
    /// The matrix of the inverse element.
    inverse: Vec<Scalar>,
    word_cache: OnceLock<Word>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(
            self.sys.same_instance(&other.sys),
            "comparing elements of different systems"
        );
        self.action == other.action
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.action.hash(state);
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.word_cache.get() {
            Some(w) => write!(
                f,
                "GroupElement({})",
                self.sys.alphabet().format_word(w)
            ),
            None => write!(f, "GroupElement(n={}, word not yet computed)", self.sys.n()),
        }
    }
}

impl CoxeterSystem {
    /// The identity element.
    pub fn identity(&self) -> GroupElement {
        let n = self.n();
        let mut action = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                action.push(if i == j { self.ctx().one() } else { self.ctx().zero() });
            }
        }
        let inverse = action.clone();
        let g = GroupElement {
            sys: self.clone(),
            action,
            inverse,
            word_cache: OnceLock::new(),
        };
        let _ = g.word_cache.set(Word::empty());
        g
    }

    /// The generator `s` as a group element.
    pub fn generator(&self, s: usize) -> GroupElement {
        assert!(s < self.n(), "generator index out of range");
        self.identity().right_mul_gen(s)
    }

    /// Multiplies out a word left to right. Letters must be in range.
    pub fn element_of_word(&self, word: &Word) -> Result<GroupElement> {
        self.alphabet().validate_word(word)?;
        let mut g = self.identity();
        for &s in word.letters() {
            g = g.right_mul_gen(s);
        }
        Ok(g)
    }
}

impl GroupElement {
    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    pub fn is_identity(&self) -> bool {
        let n = self.sys.n();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let c = &self.action[i * n + j];
                if i == j { c.is_one() } else { c.is_zero() }
            })
        })
    }

    /// The element `g * s`. Column update on the action, row update on the
    /// inverse: `(g M_s)[i][j] = g[i][j] - 2 B[s][j] g[i][s]` for `j != s`,
    /// and column `s` flips sign; `(M_s g^{-1})` changes only row `s`:
    /// `row_s -= sum_k 2 B[s][k] row_k` (the k = s term flips the sign).
    pub fn right_mul_gen(&self, s: usize) -> GroupElement {
        let n = self.sys.n();
        assert!(s < n, "generator index out of range");
        let mut action = Vec::with_capacity(n * n);
        for i in 0..n {
            let pivot = self.action[i * n + s].clone();
            for j in 0..n {
                if j == s {
                    action.push(-pivot.clone());
                } else {
                    let tb = self.sys.two_bilinear(s, j);
                    if pivot.is_zero() || tb.is_zero() {
                        action.push(self.action[i * n + j].clone());
                    } else {
                        action.push(&self.action[i * n + j] - &(tb * &pivot));
                    }
                }
            }
        }
        let mut inverse = self.inverse.clone();
        for j in 0..n {
            let mut acc = self.sys.ctx().zero();
            for k in 0..n {
                let h = &self.inverse[k * n + j];
                if !h.is_zero() {
                    let tb = self.sys.two_bilinear(s, k);
                    if !tb.is_zero() {
                        acc = &acc + &(tb * h);
                    }
                }
            }
            inverse[s * n + j] = &self.inverse[s * n + j] - &acc;
        }
        GroupElement {
            sys: self.sys.clone(),
            action,
            inverse,
            word_cache: OnceLock::new(),
        }
    }

    /// The product `self * other` by full matrix multiplication.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        assert!(
            self.sys.same_instance(&other.sys),
            "composing elements of different systems"
        );
        let n = self.sys.n();
        let mul = |a: &[Scalar], b: &[Scalar]| {
            let mut out = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let mut acc = self.sys.ctx().zero();
                    for k in 0..n {
                        let x = &a[i * n + k];
                        let y = &b[k * n + j];
                        if !x.is_zero() && !y.is_zero() {
                            acc = &acc + &(x * y);
                        }
                    }
                    out.push(acc);
                }
            }
            out
        };
        GroupElement {
            sys: self.sys.clone(),
            action: mul(&self.action, &other.action),
            inverse: mul(&other.inverse, &self.inverse),
            word_cache: OnceLock::new(),
        }
    }

    /// The inverse element; both matrices are already at hand.
    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            sys: self.sys.clone(),
            action: self.inverse.clone(),
            inverse: self.action.clone(),
            word_cache: OnceLock::new(),
        }
    }

    /// Applies the element to a coordinate vector.
    pub fn apply(&self, v: &RootVec) -> RootVec {
        let n = self.sys.n();
        let coords = v.coords();
        assert_eq!(coords.len(), n, "vector has wrong dimension");
        let out = (0..n)
            .map(|i| {
                let mut acc = self.sys.ctx().zero();
                for (j, c) in coords.iter().enumerate() {
                    let a = &self.action[i * n + j];
                    if !a.is_zero() && !c.is_zero() {
                        acc = &acc + &(a * c);
                    }
                }
                acc
            })
            .collect();
        RootVec::new(out)
    }

    /// The image of the simple root `r_s`: column `s` of the action matrix.
    pub fn root_image(&self, s: usize) -> RootVec {
        let n = self.sys.n();
        assert!(s < n, "generator index out of range");
        RootVec::new((0..n).map(|i| self.action[i * n + s].clone()).collect())
    }

    fn root_image_of(&self, matrix: &[Scalar], s: usize) -> RootVec {
        let n = self.sys.n();
        RootVec::new((0..n).map(|i| matrix[i * n + s].clone()).collect())
    }

    /// Generators `s` with `length(g s) < length(g)`, in ascending order:
    /// exactly those whose root image under `g` is negative.
    pub fn right_descents(&self) -> Vec<usize> {
        let n = self.sys.n();
        (0..n)
            .filter(|&s| {
                self.root_image(s)
                    .sign_class()
                    .expect("a group element must map a simple root to a root")
                    == RootSign::Negative
            })
            .collect()
    }

    /// Generators `s` with `length(s g) < length(g)`: right descents of the
    /// inverse, read from the inverse matrix columns.
    pub fn left_descents(&self) -> Vec<usize> {
        let n = self.sys.n();
        (0..n)
            .filter(|&s| {
                self.root_image_of(&self.inverse, s)
                    .sign_class()
                    .expect("a group element must map a simple root to a root")
                    == RootSign::Negative
            })
            .collect()
    }

    /// The canonical reduced word: repeatedly strip the smallest right
    /// descent. This is the lexicographically least reduced word when read
    /// through the correspondence with linear extensions, and it is computed
    /// once per element and cached.
    pub fn canonical_reduced_word(&self) -> &Word {
        self.word_cache.get_or_init(|| {
            let mut letters_rev = Vec::new();
            let mut g = self.clone();
            loop {
                let descents = g.right_descents();
                let Some(&s) = descents.first() else {
                    break;
                };
                letters_rev.push(s);
                g = g.right_mul_gen(s);
            }
            debug_assert!(g.is_identity());
            letters_rev.reverse();
            Word::new(letters_rev)
        })
    }

    /// Coxeter length: the length of any reduced word.
    pub fn length(&self) -> usize {
        self.canonical_reduced_word().len()
    }
}

/// Outcome of scanning a word prefix by prefix: either every prefix root is
/// positive (and they are the inversions), or some step turned negative.
enum Scan {
    Reduced(Vec<RootVec>),
    DropAt(usize),
}

impl CoxeterSystem {
    /// Walks the word once, computing for each position `i` the root
    /// `s_{w_1} ... s_{w_{i-1}} (r_{w_i})`. The word is reduced exactly when
    /// all of these are positive; the first negative one locates a deletable
    /// position.
    fn scan_word(&self, word: &Word) -> Result<Scan> {
        self.alphabet().validate_word(word)?;
        let mut g = self.identity();
        let mut roots = Vec::with_capacity(word.len());
        for (i, &s) in word.letters().iter().enumerate() {
            let root = g.root_image(s);
            match root.sign_class()? {
                RootSign::Positive => roots.push(root),
                RootSign::Negative => return Ok(Scan::DropAt(i)),
            }
            g = g.right_mul_gen(s);
        }
        Ok(Scan::Reduced(roots))
    }

    /// Whether the word is a reduced expression in this system.
    pub fn is_reduced(&self, word: &Word) -> Result<bool> {
        Ok(matches!(self.scan_word(word)?, Scan::Reduced(_)))
    }

    /// The inversion set of a reduced word, in prefix order: position `i`
    /// contributes the positive root sent negative by the length-`i` prefix
    /// acting on the right. Fails with `NotReduced` if the word is not
    /// reduced. The roots of a reduced word are pairwise distinct and depend
    /// only on the element, not the chosen word.
    pub fn inversion_set(&self, word: &Word) -> Result<Vec<RootVec>> {
        match self.scan_word(word)? {
            Scan::Reduced(roots) => {
                let distinct: std::collections::HashSet<&RootVec> = roots.iter().collect();
                assert_eq!(
                    distinct.len(),
                    roots.len(),
                    "inversion roots of a reduced word must be pairwise distinct"
                );
                Ok(roots)
            }
            Scan::DropAt(position) => Err(Error::NotReduced { position }),
        }
    }
}

/// Depth-first stream of all reduced words of one element. Each word is
/// produced by walking down through right descents (taken in ascending
/// index order) to the identity and reversing the path, so the stream is
/// deterministic: words appear in lexicographic order of their REVERSALS
/// (the last letter varies slowest).
pub struct ReducedWords {
    path: Vec<usize>,
    frames: Vec<Frame>,
    pending_empty: bool,
    done: bool,
}

struct Frame {
    elem: GroupElement,
    descents: Vec<usize>,
    idx: usize,
}

impl ReducedWords {
    fn new(g: &GroupElement) -> ReducedWords {
        if g.is_identity() {
            ReducedWords {
                path: Vec::new(),
                frames: Vec::new(),
                pending_empty: true,
                done: false,
            }
        } else {
            let descents = g.right_descents();
            ReducedWords {
                path: Vec::new(),
                frames: vec![Frame { elem: g.clone(), descents, idx: 0 }],
                pending_empty: false,
                done: false,
            }
        }
    }
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        if self.pending_empty {
            self.pending_empty = false;
            self.done = true;
            return Some(Word::empty());
        }
        loop {
            let step = {
                let Some(frame) = self.frames.last_mut() else {
                    self.done = true;
                    return None;
                };
                if frame.idx < frame.descents.len() {
                    let s = frame.descents[frame.idx];
                    frame.idx += 1;
                    Some((frame.elem.right_mul_gen(s), s))
                } else {
                    None
                }
            };
            match step {
                Some((child, s)) => {
                    self.path.push(s);
                    if child.is_identity() {
                        let word: Word = self.path.iter().rev().copied().collect();
                        self.path.pop();
                        return Some(word);
                    }
                    let descents = child.right_descents();
                    self.frames.push(Frame { elem: child, descents, idx: 0 });
                }
                None => {
                    self.frames.pop();
                    self.path.pop();
                }
            }
        }
    }
}

impl GroupElement {
    /// Streams every reduced word of this element in the deterministic
    /// order described on [`ReducedWords`].
    pub fn reduced_words(&self) -> ReducedWords {
        ReducedWords::new(self)
    }

    /// Collects the reduced words, failing once more than `limit` exist.
    pub fn enumerate_reduced_words(&self, limit: usize) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        for word in self.reduced_words() {
            if out.len() >= limit {
                return Err(Error::BudgetExceeded { what: "reduced word enumeration", limit });
            }
            out.push(word);
        }
        Ok(out)
    }

    /// Counts reduced words by the descent recursion
    /// `count(g) = sum over right descents s of count(g s)`, memoized on
    /// elements. `memo_budget` caps the number of distinct elements stored.
    pub fn count_reduced_words(&self, memo_budget: usize) -> Result<BigUint> {
        let mut memo: HashMap<GroupElement, BigUint> = HashMap::new();
        fn rec(
            g: &GroupElement,
            memo: &mut HashMap<GroupElement, BigUint>,
            budget: usize,
        ) -> Result<BigUint> {
            if g.is_identity() {
                return Ok(BigUint::one());
            }
            if let Some(v) = memo.get(g) {
                return Ok(v.clone());
            }
            let mut total = BigUint::zero();
            for s in g.right_descents() {
                total += rec(&g.right_mul_gen(s), memo, budget)?;
            }
            if memo.len() >= budget {
                return Err(Error::BudgetExceeded { what: "reduced word counting", limit: budget });
            }
            memo.insert(g.clone(), total.clone());
            Ok(total)
        }
        rec(self, &mut memo, memo_budget)
    }
}
