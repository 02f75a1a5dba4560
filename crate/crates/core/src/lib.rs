//! Reconfiguration of dominating sets under the token addition/removal rule.
//!
//! A TAR(k) reconfiguration sequence walks from one dominating set to another
//! by adding or removing a single vertex per step, never leaving the family of
//! dominating sets and never exceeding `k` vertices. This crate provides
//!
//! * graph primitives and exact (brute-force) domination invariants,
//! * move/sequence semantics with a verifier,
//! * an explicit k-dominating graph oracle for small instances,
//! * three constructive transformations: [`general`] (budget `Γ+α−1`),
//!   [`minor_sparse`] (budget `Γ+d−1` for d-minor-sparse graphs) and
//!   [`treewidth`] (budget `Γ+tw+1` along a tree decomposition),
//! * generators for the extremal instance families in [`instances`].
//!
//! Vertices are `0..n` internally; every text format uses 1-based ids.

pub mod domination;
pub mod error;
pub mod general;
pub mod graph;
pub mod instances;
pub mod invariants;
pub mod minor_sparse;
pub mod oracle;
pub mod sequence;
pub mod treewidth;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use invariants::{exact_invariants, GraphInvariants};
pub use sequence::{verify_sequence, Move, MoveKind, ReconfigSequence, VerificationReport};
pub use vertex_set::VertexSet;

/// Default vertex bound for subset enumeration (`2^n` work).
pub const DEFAULT_INVARIANT_LIMIT: usize = 24;
/// Default vertex bound for building an explicit reconfiguration graph.
pub const DEFAULT_ORACLE_LIMIT: usize = 20;
