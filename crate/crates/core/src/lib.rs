//! Search finite groups for triple product property (TPP) triples, screen
//! groups as candidates for fast matrix-multiplication bounds, and verify
//! found triples by embedding actual matrix products into the group algebra.
//!
//! The pieces:
//!
//! * [`group`] — finite groups as validated Cayley tables: standard
//!   families, products, conjugacy classes, index-2 subgroups.
//! * [`tpp`] — right quotients, the definition-based and quotient-based TPP
//!   tests, triple normalization, size feasibility.
//! * [`search`] — the marked-vector `⟨m,m,m⟩` search with moving-1
//!   enumeration, quotient marking with exact undo, and shard partitioning.
//! * [`baseline`] — the plain disjoint-subset enumeration the new search is
//!   measured against.
//! * [`screen`] — rank lower/upper bounds and C1/C2 candidate
//!   classification from character degree patterns.
//! * [`algebra`] — exact group-ring convolution for verifying that a triple
//!   really realizes matrix multiplication.
//! * [`corpus`] — named constructions for the comparison corpus and the
//!   shipped data set.
//!
//! Groups are immutable after construction and safe to share across
//! threads; all operations here are pure.

pub mod algebra;
pub mod baseline;
pub mod bitset;
pub mod corpus;
pub mod group;
pub mod screen;
pub mod search;
pub mod tpp;

pub use group::{Group, GroupError};
pub use search::{SearchMode, SearchOutcome, SearchStats};
pub use tpp::{TppError, TppTriple};
