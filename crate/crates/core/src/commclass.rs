//! Commutation classes of reduced words, counted and classified through
//! depth functions on inversion sets.
//!
//! Every reduced word of a group element `w` has a word poset, and distinct
//! commutation classes have non-isomorphic posets. Pushing a poset's depth
//! function through the bijection between its elements and the inversion
//! set `R(w)` yields a map `λ: R(w) → ℕ₊` that depends only on the class.
//! These λ can also be generated recursively, one descent at a time, without
//! touching words at all — that recursion is [`c_set`] — and the number of
//! classes satisfies an inclusion-exclusion recurrence over independent
//! descent subsets, implemented by [`c_count_recurrence`]. Agreement of the
//! three viewpoints (posets, recursion, recurrence) is what the test suite
//! drills on.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::coxeter::{CoxeterSystem, GroupElement, Order, RootSign, RootVec};
use crate::error::{Error, Result};
use crate::trace::{build_poset, canonical_word, Word, WordPoset};

/// A depth function `λ: R(w) → ℕ₊`, keyed by exact root coordinates.
/// Equality, ordering, and hashing are exact map equality, so sets of
/// these deduplicate by mathematical identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LambdaFunction {
    entries: BTreeMap<RootVec, u32>,
}

impl LambdaFunction {
    /// The empty function, the sole member of the identity's class set.
    pub fn empty() -> LambdaFunction {
        LambdaFunction { entries: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, root: &RootVec) -> Option<u32> {
        self.entries.get(root).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RootVec, &u32)> {
        self.entries.iter()
    }

    /// JSON form: a list of `{"root": [...], "value": k}` entries in the
    /// deterministic key order of the map.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|(root, value)| {
                    serde_json::json!({ "root": root.to_json_value(), "value": value })
                })
                .collect(),
        )
    }
}

impl fmt::Display for LambdaFunction {
    /// Writes `{(1, 0) -> 1, (1, 1) -> 2}`-style text.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (root, value)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{root} -> {value}")?;
        }
        write!(f, "}}")
    }
}

/// The set `C(w)` of depth functions of one element, one per commutation
/// class of its reduced words.
#[derive(Debug, Clone)]
pub struct CSet {
    element: GroupElement,
    lambdas: BTreeSet<LambdaFunction>,
}

impl CSet {
    pub fn element(&self) -> &GroupElement {
        &self.element
    }

    pub fn lambdas(&self) -> &BTreeSet<LambdaFunction> {
        &self.lambdas
    }

    /// The number of commutation classes of reduced words of the element.
    pub fn count(&self) -> usize {
        self.lambdas.len()
    }
}

/// The bijection from poset elements onto the inversion set: element `i`
/// (position `i` of the underlying word `w`) maps to the root
/// `s_{w_1} ... s_{w_{i-1}} (r_{w_i})`. Entry `i` of the result is the root
/// of element `i`. Fails if the word is not reduced; the roots are pairwise
/// distinct and, as a set, independent of which word of the class built the
/// poset.
pub fn phi_bijection(sys: &CoxeterSystem, p: &WordPoset) -> Result<Vec<RootVec>> {
    sys.inversion_set(&Word::new(p.labels().to_vec()))
}

/// The depth function of a reduced word's poset, transported to roots:
/// `λ(root of element u) = depth(u)`. Also checks the layer structure that
/// makes λ well-formed — each depth layer must be an antichain whose labels
/// pairwise commute.
pub fn lambda_of_poset(sys: &CoxeterSystem, p: &WordPoset) -> Result<LambdaFunction> {
    let roots = phi_bijection(sys, p)?;
    p.depth_layers(sys.alphabet())?;
    let depth = p.depth_function();
    let entries: BTreeMap<RootVec, u32> = roots.into_iter().zip(depth).collect();
    assert_eq!(
        entries.len(),
        p.size(),
        "inversion roots must be pairwise distinct"
    );
    Ok(LambdaFunction { entries })
}

/// Extends a depth function on `R(w)` to one on `R(ws)`, for `s` not a
/// right descent of `w`. The new root `r = w(r_s)` gets one more than the
/// largest `λ(r')` among inversions `r'` with `(r, r') > 0` — the sign
/// test that detects a non-commuting earlier letter. When no inversion
/// pairs positively, the new letter is isolated in the word poset, the
/// root is necessarily simple, and the value is 1. (Simplicity of the
/// root alone decides nothing: a non-isolated letter can also produce a
/// simple root, e.g. the third letter of `s1 s2 s1`, which sits at depth
/// 3.) A non-simple root with no positive pairing would be a geometry
/// bug and is reported as a distinct invariant error. Ties among maximal
/// `r'` are harmless, since only the value is used.
pub fn extend_lambda(
    sys: &CoxeterSystem,
    lambda: &LambdaFunction,
    w: &GroupElement,
    s: usize,
) -> Result<LambdaFunction> {
    let new_root = w.root_image(s);
    if new_root.sign_class()? == RootSign::Negative {
        return Err(Error::DescentExtension { gen: s });
    }
    let mut best: Option<u32> = None;
    for (r_prime, &v) in lambda.iter() {
        if sys.form(&new_root, r_prime).sign() > 0 {
            best = Some(best.map_or(v, |b| b.max(v)));
        }
    }
    let value = match best {
        Some(v) => v + 1,
        None if new_root.as_simple().is_some() => 1,
        None => return Err(Error::UndefinedExtension),
    };
    let mut entries = lambda.entries.clone();
    let displaced = entries.insert(new_root, value);
    assert!(
        displaced.is_none(),
        "the new inversion of a longer element cannot already be present"
    );
    Ok(LambdaFunction { entries })
}

type LambdaSetMemo = HashMap<GroupElement, Arc<BTreeSet<LambdaFunction>>>;

fn c_set_rec(
    g: &GroupElement,
    memo: &mut LambdaSetMemo,
    budget: usize,
) -> Result<Arc<BTreeSet<LambdaFunction>>> {
    if let Some(v) = memo.get(g) {
        return Ok(v.clone());
    }
    let sys = g.system().clone();
    let mut set = BTreeSet::new();
    if g.is_identity() {
        set.insert(LambdaFunction::empty());
    } else {
        for s in g.right_descents() {
            let child = g.right_mul_gen(s);
            let sub = c_set_rec(&child, memo, budget)?;
            for lam in sub.iter() {
                // s is not a descent of the shorter element g s, so the
                // extension is always defined on this path.
                set.insert(extend_lambda(&sys, lam, &child, s)?);
            }
        }
    }
    if memo.len() >= budget {
        return Err(Error::BudgetExceeded { what: "depth-function set recursion", limit: budget });
    }
    let arc = Arc::new(set);
    memo.insert(g.clone(), arc.clone());
    Ok(arc)
}

/// Computes the full set `C(g)` of depth functions by the descent
/// recursion: `C(identity)` holds just the empty function, and `C(g)`
/// collects every extension of every `λ ∈ C(gs)` across right descents
/// `s`, deduplicated by exact equality. `element_budget` caps the number
/// of distinct group elements memoized.
pub fn c_set(g: &GroupElement, element_budget: usize) -> Result<CSet> {
    let mut memo = LambdaSetMemo::new();
    let lambdas = c_set_rec(g, &mut memo, element_budget)?;
    Ok(CSet { element: g.clone(), lambdas: (*lambdas).clone() })
}

/// All nonempty subsets of `gens` whose members pairwise commute
/// (`m = 2`), in ascending bitmask order over the input slice — singletons
/// first by position, then pairs, and so on.
pub fn independent_subsets(sys: &CoxeterSystem, gens: &[usize]) -> Vec<Vec<usize>> {
    let k = gens.len();
    assert!(k < 63, "generator set too large for subset enumeration");
    let mut out = Vec::new();
    for mask in 1u64..1u64 << k {
        let subset: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| gens[i]).collect();
        let independent = subset.iter().enumerate().all(|(a, &s)| {
            subset[a + 1..].iter().all(|&t| sys.order(s, t) == Order::Finite(2))
        });
        if independent {
            out.push(subset);
        }
    }
    out
}

fn c_count_rec(
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
    let mut acc = BigInt::zero();
    for subset in independent_subsets(g.system(), &g.right_descents()) {
        let mut h = g.clone();
        for &s in &subset {
            h = h.right_mul_gen(s);
        }
        let term = BigInt::from(c_count_rec(&h, memo, budget)?);
        if subset.len() % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    let out = acc
        .to_biguint()
        .expect("alternating sum of class counts must be nonnegative");
    if memo.len() >= budget {
        return Err(Error::BudgetExceeded { what: "class-count recursion", limit: budget });
    }
    memo.insert(g.clone(), out.clone());
    Ok(out)
}

/// Counts commutation classes of reduced words without enumerating any
/// words: inclusion-exclusion over nonempty independent subsets `T` of the
/// right descent set, `count(g) = Σ (−1)^{|T|+1} count(g·T)` with `g·T`
/// the product over the (commuting) members of `T`. The identity counts 1.
/// `element_budget` caps the number of distinct elements memoized.
pub fn c_count_recurrence(g: &GroupElement, element_budget: usize) -> Result<BigUint> {
    let mut memo = HashMap::new();
    c_count_rec(g, &mut memo, element_budget)
}

/// One first-level term of the inclusion-exclusion recurrence.
#[derive(Debug, Clone)]
pub struct RecurrenceTerm {
    /// The independent descent subset `T`, by generator index.
    pub subset: Vec<usize>,
    /// +1 for odd-sized subsets, −1 for even.
    pub sign: i8,
    /// The class count of `g·T`.
    pub count: BigUint,
}

/// The recurrence at `g` with its first level spelled out: each
/// independent descent subset's term, plus the resulting total. The
/// identity has no terms and total 1.
pub struct RecurrenceExpansion {
    pub terms: Vec<RecurrenceTerm>,
    pub total: BigUint,
}

/// Like [`c_count_recurrence`], but also reports the first level of the
/// expansion, one term per nonempty independent descent subset.
pub fn c_count_expansion(g: &GroupElement, element_budget: usize) -> Result<RecurrenceExpansion> {
    let mut memo = HashMap::new();
    let total = c_count_rec(g, &mut memo, element_budget)?;
    let mut terms = Vec::new();
    for subset in independent_subsets(g.system(), &g.right_descents()) {
        let mut h = g.clone();
        for &s in &subset {
            h = h.right_mul_gen(s);
        }
        let count = c_count_rec(&h, &mut memo, element_budget)?;
        let sign = if subset.len() % 2 == 1 { 1 } else { -1 };
        terms.push(RecurrenceTerm { subset, sign, count });
    }
    Ok(RecurrenceExpansion { terms, total })
}

/// Partitions the reduced words of `g` into commutation classes and
/// returns, per class, its canonical word and that word's poset, ordered
/// by canonical word. The identity yields the single class of the empty
/// word. `word_budget` caps the total number of reduced words walked.
pub fn enumerate_commutation_classes(
    g: &GroupElement,
    word_budget: usize,
) -> Result<Vec<(Word, WordPoset)>> {
    let alphabet = g.system().alphabet();
    let mut canonicals = BTreeSet::new();
    for word in g.enumerate_reduced_words(word_budget)? {
        canonicals.insert(canonical_word(&word, alphabet)?);
    }
    canonicals
        .into_iter()
        .map(|c| {
            let poset = build_poset(&c, alphabet)?;
            Ok((c, poset))
        })
        .collect()
}
