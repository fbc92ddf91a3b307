//! Lax modal lambda calculi: a common simply-typed core extended with a
//! diamond type constructor `<>` whose strength varies by *flavor*.
//!
//! The four flavors form a small lattice of monadic power:
//!
//! | flavor | modal constructs    | categorical reading    |
//! |--------|---------------------|------------------------|
//! | `slc`  | `letmap`            | strong functor         |
//! | `rlc`  | `letmap`, `return`  | strong pointed functor |
//! | `jlc`  | `letmap`, `letjoin` | strong semimonad       |
//! | `mlc`  | `return`, `let`     | strong monad           |
//!
//! The crate provides:
//!
//! - flavor-gated typechecking and capture-avoiding substitution ([`typing`]),
//! - order-preserving embeddings between contexts and weakening ([`ope`]),
//! - the equational theory of each flavor as an executable rule catalog and a
//!   single-step rewriter ([`equations`]),
//! - normalization by evaluation into a possible-world model whose worlds are
//!   contexts ([`nbe`]), deciding judgmental equality,
//! - eta-long normal forms, bounded enumeration, and an inhabitation checker
//!   that certifies underivability of the missing modal axioms ([`nf`]),
//! - finite, proof-irrelevant Kripke models for the corresponding
//!   propositional logics ([`kripke`]),
//! - a seeded generator of well-typed terms for randomized testing ([`gen`]).
//!
//! The crate is `no_std` (with `alloc`); parsing, file formats, and the
//! command-line driver live in the companion `laxcal-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod equations;
pub mod gen;
pub mod kripke;
pub mod nbe;
pub mod nf;
pub mod ope;
pub mod syntax;
pub mod typing;

pub use syntax::{Ctx, Flavor, Term, Type};
pub use typing::{infer, substitute, TypeError};
