//! Word posets, commutation classes, and reduced words of Coxeter groups,
//! with exact arithmetic throughout.
//!
//! The crate has three layers:
//!
//! * [`trace`] — pure word combinatorics over a commutation alphabet: the
//!   word poset of a word, its linear extensions (which are exactly the
//!   words of the commutation class), counting extensions by down-set
//!   dynamic programming, canonical class representatives, and
//!   label-preserving poset isomorphism.
//! * [`scalar`] — the real cyclotomic field `Q(2cos(pi/N))` with certified
//!   sign evaluation, the exact home of Coxeter bilinear forms for
//!   arbitrary finite bond orders.
//! * [`coxeter`], [`commclass`], [`typea`] — Coxeter systems and group
//!   elements as exact matrices; inversion sets, descents, reduced-word
//!   recognition, counting, and enumeration; the depth functions
//!   `λ: R(w) → ℕ₊` classifying commutation classes of reduced words; the
//!   inclusion-exclusion recurrence for the number of classes; and
//!   one-line-notation permutations for type A.
//!
//! Everything is deterministic, and nothing ever rounds: signs of algebraic
//! numbers are settled by Sturm-interval certification, never floating
//! point.

pub mod commclass;
pub mod coxeter;
pub mod error;
pub mod scalar;
pub mod trace;
pub mod typea;

pub use commclass::{
    c_count_expansion, c_count_recurrence, c_set, enumerate_commutation_classes, extend_lambda,
    independent_subsets, lambda_of_poset, phi_bijection, CSet, LambdaFunction,
    RecurrenceExpansion, RecurrenceTerm,
};
pub use coxeter::{CoxeterSystem, GroupElement, Order, ReducedWords, RootSign, RootVec};
pub use error::{Error, ErrorClass, Result};
pub use scalar::{Scalar, ScalarContext};
pub use trace::{
    build_poset, canonical_word, commutation_class_bfs, Alphabet, Word, WordPoset,
    DEFAULT_DOWNSET_BUDGET, DEFAULT_WORD_BUDGET,
};
pub use typea::{element_to_perm, perm_to_element, Permutation};
