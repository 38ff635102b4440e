//! Words over a partially commutative alphabet and their word posets.
//!
//! The submodules cover the three concerns: the alphabet and word types,
//! the poset a word induces on its positions, and enumeration/counting of
//! the commutation class through linear extensions.

mod alphabet;
mod enumerate;
mod poset;

pub use alphabet::{Alphabet, Word};
pub use enumerate::{
    canonical_word, commutation_class_bfs, LinearExtensions, DEFAULT_DOWNSET_BUDGET,
    DEFAULT_WORD_BUDGET,
};
pub use poset::{build_poset, WordPoset};
