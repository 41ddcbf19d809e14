//! Exact computational kernel for PM-monoids and braid PM-monoids.
//!
//! The finite monoid `R_n` (the PM-monoid) is the matched pair of the
//! symmetric group `S_n` with the monoid `P_n` of ordered set partitions
//! of `{1..n}`; its elements are realized by tuples of 0/1 matrices.
//! The braid PM-monoid `RB_n` sits above it: words over braid generators
//! and partial idempotents are evaluated into layered partial
//! isomorphisms of a free group, which decides the word problem.
//!
//! Module map:
//!
//! - [`freegroup`] — reduced words in a free group and substitution
//!   endomorphisms (the Artin action lives here).
//! - [`perm`], [`setpart`] — permutations, ordered set partitions and
//!   standard compositions.
//! - [`pm`] — the monoid `R_n`: product, star, idempotents, enumeration,
//!   matched-pair verification, matrix-tuple realization.
//! - [`present`] — words over the `R_n` generating set, relation schemas,
//!   semantic relation checking and normal forms.
//! - [`braid`] — layered partial free-group isomorphisms, the extended
//!   Artin map, the layered product and the word-problem decision.
//! - [`linalg`] — exact rational matrix tuples, the tuple product with
//!   redundancy removal, and projective limits of polynomial families.
//! - [`words`] — the shared word grammar (`s1 s2^-1 e[1,2]`).
//! - [`diagram`] — schematic SVG rendering of layered braid words.
//! - [`selftest`] — structured self-test suites used by the CLI.

pub mod braid;
pub mod diagram;
pub mod freegroup;
pub mod linalg;
pub mod perm;
pub mod pm;
pub mod present;
pub mod selftest;
pub mod setpart;
pub mod words;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
