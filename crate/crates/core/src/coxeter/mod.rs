//! Coxeter systems, their exact reflection representation, and reduced
//! words.
//!
//! [`CoxeterSystem`] holds the matrix, the bilinear form over the scalar
//! field, and the commutation alphabet of the generators. [`GroupElement`]
//! is an exact matrix pair (action and inverse); descents, lengths, and
//! inversion sets fall out of coordinate signs, certified by the scalar
//! layer. Reduced words of an element can be recognized, enumerated
//! lexicographically, or counted without enumeration.

mod element;
mod system;

pub use element::{GroupElement, ReducedWords};
pub use system::{CoxeterSystem, Order, RootSign, RootVec};
