//! Deck-based reconstruction analysis for small graphs and digraphs.
//!
//! The crate enumerates isomorphism classes, computes decks (multisets of
//! vertex-deleted cards) and the partition they induce, counts subgraphs and
//! sequence covers exactly, and assembles cover-count matrices whose rank
//! over the integers bounds the number of deck-equivalence classes. All
//! counts use arbitrary precision; all orderings are fixed by a canonical
//! total order on graphs, so every result is deterministic.

pub mod canon;
pub mod certify;
pub mod covers;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod g6;
pub mod graph;
pub mod linalg;
pub mod recon;

pub use error::{Error, Result};

/// Default seed for every randomized routine; reports echo the seed used.
pub const DEFAULT_SEED: u64 = 42;
