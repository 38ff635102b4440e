//! One-line-notation permutations as elements of type A systems.
//!
//! The rank-(n−1) chain system is the symmetric group S_n; generator `s_i`
//! (0-based index `i-1` internally) acts by swapping positions `i`, `i+1`
//! of one-line notation under right multiplication, composing left to
//! right. That orientation is pinned by the worked example
//! `[4231] -> {[2431], [4213], [2413]}`: stripping the descents of
//! `[4231]` on the right reproduces exactly those one-line notations.

use std::fmt;

use crate::coxeter::{CoxeterSystem, GroupElement};
use crate::error::{Error, Result};
use crate::trace::Word;

/// A permutation of `{1, .., n}` in one-line notation: entry `i-1` of
/// `images` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates that `images` is a bijection on `{1, .., n}`, n ≥ 1.
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty one-line notation".into()));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "image {v} out of range 1..={n}"
                )));
            }
            if seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("image {v} repeats")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses `"4231"` (one digit per point, so ranks up to 9) or a comma
    /// list `"10,3,2,..."` for larger ranks.
    pub fn parse(text: &str) -> Result<Permutation> {
        let text = text.trim();
        let parse_err = |reason: &str| Error::Parse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        if text.is_empty() {
            return Err(parse_err("empty permutation"));
        }
        let images: Vec<usize> = if text.contains(',') {
            text.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<usize>()
                        .map_err(|_| parse_err("expected comma-separated integers"))
                })
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| parse_err("expected a digit string or a comma list"))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(images)
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (1..=n).collect() }
    }

    /// Number of points permuted.
    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Descent positions as 0-based generator indices: `i-1` is listed
    /// exactly when the adjacent pair at positions `i`, `i+1` is out of
    /// order, i.e. `p(i) > p(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (0..self.images.len().saturating_sub(1))
            .filter(|&i| self.images[i] > self.images[i + 1])
            .collect()
    }

    /// Pairs `i < j` with `p(i) > p(j)`; equals the Coxeter length of the
    /// corresponding element.
    pub fn inversion_count(&self) -> usize {
        let n = self.images.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.images[i] > self.images[j])
            .count()
    }

    /// Right multiplication by the generator with 0-based index `s`: swaps
    /// positions `s+1` and `s+2` of one-line notation.
    pub fn swap_adjacent(&self, s: usize) -> Permutation {
        assert!(s + 1 < self.images.len(), "generator index out of range");
        let mut images = self.images.clone();
        images.swap(s, s + 1);
        Permutation { images }
    }

    /// Whether no indices `i < j < k` carry a decreasing subsequence
    /// `p(i) > p(j) > p(k)`. Permutations avoiding the pattern have exactly
    /// one commutation class of reduced words.
    pub fn is_321_avoiding(&self) -> bool {
        let n = self.images.len();
        // Scan middles j; a witness exists iff some earlier entry exceeds
        // p(j) and some later entry is below it.
        for j in 0..n {
            let mid = self.images[j];
            let has_bigger_before = self.images[..j].iter().any(|&v| v > mid);
            let has_smaller_after = self.images[j + 1..].iter().any(|&v| v < mid);
            if has_bigger_before && has_smaller_after {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Permutation {
    /// `[4231]` when every image is a single digit, `[10,3,2,...]`
    /// otherwise; guaranteed to parse back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        if self.images.len() <= 9 {
            for v in &self.images {
                write!(f, "{v}")?;
            }
        } else {
            for (i, v) in self.images.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}

/// The reduced word obtained by repeatedly stripping the smallest descent
/// on the right; equals the element's canonical reduced word.
fn bubble_word(p: &Permutation) -> Word {
    let mut p = p.clone();
    let mut letters_rev = Vec::with_capacity(p.inversion_count());
    while let Some(&s) = p.descents().first() {
        letters_rev.push(s);
        p = p.swap_adjacent(s);
    }
    letters_rev.reverse();
    Word::new(letters_rev)
}

/// Converts a permutation of `n` points into an element of the given
/// rank-(n−1) type A system. Fails when the system is not type A or the
/// rank does not match.
pub fn perm_to_element(sys: &CoxeterSystem, p: &Permutation) -> Result<GroupElement> {
    if !sys.is_type_a() {
        return Err(Error::NotTypeA);
    }
    if sys.n() + 1 != p.n() {
        return Err(Error::RankMismatch { points: p.n(), rank: sys.n() });
    }
    sys.element_of_word(&bubble_word(p))
}

/// Reads a type A element back into one-line notation by folding its
/// canonical reduced word over the identity permutation.
pub fn element_to_perm(g: &GroupElement) -> Result<Permutation> {
    let sys = g.system();
    if !sys.is_type_a() {
        return Err(Error::NotTypeA);
    }
    let mut p = Permutation::identity(sys.n() + 1);
    for &s in g.canonical_reduced_word().letters() {
        p = p.swap_adjacent(s);
    }
    Ok(p)
}
