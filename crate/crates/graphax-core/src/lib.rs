//! Algebras from edge-labeled directed graphs.
//!
//! A labeled digraph (no loops, no multiple edges, nonzero labels over an
//! exact field) determines a nonassociative algebra on its vertex basis:
//! `x*x = x`, `x*y = a(x+y)` along an edge labeled `a`, and `x*y = 0`
//! otherwise. This crate builds those algebras exactly and verifies their
//! structure theory at desk scale:
//!
//! - [`structure`]: simplicity classification with witnessing ideals, plus a
//!   brute-force ideal-closure oracle and quotient algebras against graph
//!   contraction;
//! - [`fusion`]: axis eigenspace spectra and the graph-type fusion law,
//!   checked from exact coordinates;
//! - [`autgrp`]: automorphism groups of labeled digraphs by refinement and
//!   individualization, exhaustive idempotent sweeps over small prime fields,
//!   recovery of the vertex axes among low-rank idempotents, and rank/support
//!   analysis;
//! - [`frucht`]: construction of graphs (and simple axial algebras) with a
//!   prescribed finite automorphism group, verified by search, never trusted
//!   on construction grounds alone.
//!
//! Everything is exact: prime fields `F_p` and arbitrary-precision rationals.

pub mod algebra;
pub mod autgrp;
pub mod field;
pub mod frucht;
pub mod fusion;
pub mod graph;
pub mod linalg;
pub mod perm;
pub mod structure;
#[cfg(test)]
pub(crate) mod testutil;

pub use algebra::{AlgebraElement, GraphAlgebra, Side};
pub use field::{FieldCtx, Scalar};
pub use graph::{Extent, LabeledDigraph, PartialLinearSpace, SimpleGraph};
pub use perm::{Perm, PermGroup};
