//! Canonical labeling of colored graphs from a pluggable complete invariant.
//!
//! Two reductions turn an invariant into a canonical labeling: recursion on
//! small balanced separators ([`separator`]) and individualization of a
//! bounded fixing sequence ([`rigidity`]). Brute-force oracles ([`iso`],
//! [`oracle`]) and combinatorial embeddings ([`embedding`]) check the
//! assumptions both reductions rest on.

pub mod embedding;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod invariant;
pub mod iso;
pub mod oracle;
pub mod report;
pub mod rigidity;
pub mod separator;
mod seq;

pub use error::{Error, Result};
pub use graph::{apply_permutation, encode, CanonicalCode, ColoredGraph, Labeling};
pub use invariant::{Invariant, InvariantKind};
pub use iso::are_isomorphic_bf;
pub use report::Diagnostic;
pub use seq::arrangements;
