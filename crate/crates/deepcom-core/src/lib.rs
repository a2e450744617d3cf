//! Finite group analysis on explicit Cayley tables.
//!
//! The crate takes small finite groups given as multiplication tables and
//! computes the commuting graph, the enhanced power graph, and the graph of
//! pairs whose lifts commute in every central extension, together with the
//! invariants that control where those graphs coincide: the Schur multiplier,
//! the Bogomolov multiplier, and the commuting probability. Central
//! extensions can be constructed explicitly from 2-cocycles and compared
//! (stem, commutativity-preserving, pullbacks, isoclinism).
//!
//! The crate is `no_std` + `alloc`; IO, file formats and the command line
//! live in the companion `deepcom-cli` crate. All computations are exact and
//! deterministic: fixed orderings everywhere, and the one randomized
//! component (constraint compression in the cocycle solver) runs on a fixed,
//! documented seed and verifies its output against the full constraint set.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod census;
pub mod cohomology;
pub mod error;
pub mod extensions;
pub mod graphs;
pub mod group;
pub mod ring;
pub mod speclang;

pub use error::{Error, Result};

/// Untrusted Cayley tables larger than this are rejected: associativity is
/// checked exhaustively (n^3 lookups) and only internal constructors may
/// skip that check.
pub const ASSOC_CHECK_CAP: usize = 512;

/// Default cap on the order of a realized group spec.
pub const DEFAULT_REALIZE_CAP: usize = 10_000;

/// Absolute cap on group order; element indices are stored as u16 and
/// table memory grows quadratically.
pub const HARD_ORDER_CAP: usize = 32_768;

/// Cap on the order for automorphism group enumeration.
pub const AUTOMORPHISM_CAP: usize = 64;

/// Cap on the order for full subgroup lattice enumeration.
pub const SUBGROUP_ENUM_CAP: usize = 64;

/// Default cap on the order for cohomology computations (overridable).
pub const DEFAULT_COHOMOLOGY_CAP: usize = 64;

/// Cap on the order of an explicitly constructed central extension.
pub const EXTENSION_ORDER_CAP: usize = 1024;

/// Cap on the order for the extension-enumerating oracle.
pub const ORACLE_ORDER_CAP: usize = 12;

/// Cap on the vertex count for graph isomorphism search.
pub const GRAPH_ISO_CAP: usize = 128;

/// Default number of random module samples taken by the oracle.
pub const DEFAULT_ORACLE_BUDGET: usize = 128;
