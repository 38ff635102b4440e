//! Word posets: the dependency order a word induces on its own positions.
//!
//! Positions `i <= j` of a word are directly related when their letters are
//! equal or do not commute; the partial order is the transitive closure of
//! that relation. Linear extensions of the poset, read back through the
//! labels, are exactly the words reachable by swapping adjacent commuting
//! letters, so the poset is a complete invariant of the commutation class.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::trace::alphabet::{Alphabet, Word};

/// Dense square bit matrix; rows are packed `u64` words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn new(n: usize) -> BitMatrix {
        let stride = n.div_ceil(64);
        BitMatrix { n, stride, bits: vec![0; n * stride] }
    }

    pub(crate) fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    pub(crate) fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.stride + j / 64] |= 1 << (j % 64);
    }

    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    /// `row[dst] |= row[src]`; the rows must be distinct.
    pub(crate) fn or_row_from(&mut self, dst: usize, src: usize) {
        assert_ne!(dst, src);
        let s = self.stride;
        let (lo, hi, flip) = if dst < src { (dst, src, false) } else { (src, dst, true) };
        let (left, right) = self.bits.split_at_mut(hi * s);
        let lo_row = &mut left[lo * s..lo * s + s];
        let hi_row = &mut right[..s];
        if flip {
            for (d, x) in hi_row.iter_mut().zip(lo_row.iter()) {
                *d |= x;
            }
        } else {
            for (d, x) in lo_row.iter_mut().zip(hi_row.iter()) {
                *d |= x;
            }
        }
    }

    pub(crate) fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in self.iter_row(i) {
                t.set(j, i);
            }
        }
        t
    }

    /// Indices of the set bits in row `i`, ascending.
    pub(crate) fn iter_row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(i);
        row.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    fn rows_intersection_count(&self, other_row: &[u64], i: usize) -> u32 {
        self.row(i)
            .iter()
            .zip(other_row)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }
}

/// The partial order a word induces on its positions, together with the
/// position labels and the Hasse covers (the transitive reduction).
#[derive(Debug, Clone)]
pub struct WordPoset {
    labels: Vec<usize>,
    /// Reflexive-transitive relation; row `u` holds `{v : u <= v}`.
    up: BitMatrix,
    covers: Vec<(usize, usize)>,
}

/// Builds the word poset of `word`: positions are ordered by the transitive
/// closure of "earlier, and equal or non-commuting letters".
pub fn build_poset(word: &Word, alphabet: &Alphabet) -> Result<WordPoset> {
    alphabet.validate_word(word)?;
    let letters = word.letters();
    let mut pairs = Vec::new();
    for i in 0..letters.len() {
        for j in i + 1..letters.len() {
            if alphabet.dependent(letters[i], letters[j]) {
                pairs.push((i, j));
            }
        }
    }
    WordPoset::from_relation(letters.to_vec(), &pairs)
}

impl WordPoset {
    /// Builds a poset from labels and generating relation pairs `(u, v)`
    /// meaning `u < v`. The relation is closed reflexively and transitively;
    /// a cycle is rejected. This is the general entry point — `build_poset`
    /// uses it with the dependency pairs of a word.
    pub fn from_relation(labels: Vec<usize>, pairs: &[(usize, usize)]) -> Result<WordPoset> {
        let n = labels.len();
        let mut up = BitMatrix::new(n);
        for u in 0..n {
            up.set(u, u);
        }
        for &(u, v) in pairs {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::SymbolOutOfRange { id, len: n });
                }
            }
            up.set(u, v);
        }
        // Reachability closure over the bit rows.
        for k in 0..n {
            for i in 0..n {
                if i != k && up.get(i, k) {
                    up.or_row_from(i, k);
                }
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                if up.get(u, v) && up.get(v, u) {
                    return Err(Error::RelationCycle { size: n });
                }
            }
        }
        let down = up.transpose();
        // (u, v) is a cover exactly when nothing lies strictly between, i.e.
        // the interval [u, v] contains only its endpoints.
        let mut covers = Vec::new();
        for u in 0..n {
            for v in up.iter_row(u) {
                if v != u && down.rows_intersection_count(up.row(u), v) == 2 {
                    covers.push((u, v));
                }
            }
        }
        covers.sort_unstable();
        Ok(WordPoset { labels, up, covers })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, u: usize) -> usize {
        self.labels[u]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Is `u <= v` in the order?
    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.up.get(u, v)
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.up.get(u, v) || self.up.get(v, u)
    }

    /// Hasse covers, sorted ascending.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub(crate) fn up(&self) -> &BitMatrix {
        &self.up
    }

    /// Checks the two word-poset axioms against an alphabet: (a) positions
    /// with equal or non-commuting labels are comparable, and (b) every
    /// cover edge joins such a pair. Returns false on the first violation.
    pub fn verify(&self, alphabet: &Alphabet) -> bool {
        let n = self.size();
        if self.labels.iter().any(|&l| l >= alphabet.n()) {
            return false;
        }
        for u in 0..n {
            for v in u + 1..n {
                if alphabet.dependent(self.labels[u], self.labels[v]) && !self.comparable(u, v) {
                    return false;
                }
            }
        }
        self.covers
            .iter()
            .all(|&(u, v)| alphabet.dependent(self.labels[u], self.labels[v]))
    }

    /// True when the transitive closure of the cover edges reproduces the
    /// stored order — the reduction lost nothing.
    pub fn covers_regenerate_order(&self) -> bool {
        match WordPoset::from_relation(self.labels.clone(), &self.covers) {
            Ok(p) => p.up == self.up,
            Err(_) => false,
        }
    }

    /// Depth of each element: the length of the longest chain ending at it,
    /// minimum 1.
    pub fn depth_function(&self) -> Vec<u32> {
        let n = self.size();
        let mut succs = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(u, v) in &self.covers {
            succs[u].push(v);
            indeg[v] += 1;
        }
        let mut dp = vec![1u32; n];
        let mut stack: Vec<usize> = (0..n).filter(|&u| indeg[u] == 0).collect();
        while let Some(u) = stack.pop() {
            for &v in &succs[u] {
                dp[v] = dp[v].max(dp[u] + 1);
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        dp
    }

    /// Elements grouped by depth (`result[k]` holds depth `k+1`, each group
    /// ascending). Each group must be an antichain whose labels are distinct
    /// and pairwise commuting; a violation means the poset was not built
    /// from a word over this alphabet.
    pub fn depth_layers(&self, alphabet: &Alphabet) -> Result<Vec<Vec<usize>>> {
        let dp = self.depth_function();
        let max = dp.iter().copied().max().unwrap_or(0) as usize;
        let mut layers = vec![Vec::new(); max];
        for (u, &d) in dp.iter().enumerate() {
            layers[(d - 1) as usize].push(u);
        }
        for (k, layer) in layers.iter().enumerate() {
            for (i, &u) in layer.iter().enumerate() {
                for &v in &layer[i + 1..] {
                    if self.comparable(u, v)
                        || alphabet.dependent(self.labels[u], self.labels[v])
                    {
                        return Err(Error::DepthLayerViolation { layer: k + 1 });
                    }
                }
            }
        }
        Ok(layers)
    }

    /// The greedy linear extension that always removes the minimal element
    /// with the smallest label (ties broken by element id); reading labels
    /// along it yields the lexicographically least word of the class.
    pub fn canonical_extension(&self) -> Vec<usize> {
        let n = self.size();
        let mut preds_left = vec![0usize; n];
        let mut succs = vec![Vec::new(); n];
        for &(u, v) in &self.covers {
            succs[u].push(v);
            preds_left[v] += 1;
        }
        let mut avail: BTreeSet<(usize, usize)> = (0..n)
            .filter(|&u| preds_left[u] == 0)
            .map(|u| (self.labels[u], u))
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some((_label, u)) = avail.pop_first() {
            order.push(u);
            for &v in &succs[u] {
                preds_left[v] -= 1;
                if preds_left[v] == 0 {
                    avail.insert((self.labels[v], v));
                }
            }
        }
        debug_assert_eq!(order.len(), n);
        order
    }

    /// The word read along the canonical extension.
    pub fn canonical_extension_word(&self) -> Word {
        self.canonical_extension()
            .into_iter()
            .map(|u| self.labels[u])
            .collect()
    }

    /// Label-preserving isomorphism test. Valid word posets over a common
    /// alphabet are isomorphic exactly when they present the same
    /// commutation class, i.e. when their canonical extension words agree.
    pub fn is_isomorphic(&self, other: &WordPoset) -> bool {
        self.size() == other.size()
            && self.canonical_extension_word() == other.canonical_extension_word()
    }

    /// GraphViz rendering: nodes `pos:symbol` (positions 1-based), cover
    /// edges pointing from lower to higher element.
    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = String::from("digraph word_poset {\n  rankdir=BT;\n");
        for (u, &label) in self.labels.iter().enumerate() {
            out.push_str(&format!(
                "  n{} [label=\"{}:{}\"];\n",
                u + 1,
                u + 1,
                alphabet.name(label)
            ));
        }
        for &(u, v) in &self.covers {
            out.push_str(&format!("  n{} -> n{};\n", u + 1, v + 1));
        }
        out.push_str("}\n");
        out
    }
}
