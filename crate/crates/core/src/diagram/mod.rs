//! Diagrams: trivalent graphs with beads, unitrivalent graphs with legs,
//! their graded linear combinations and generators of the local relations.
//!
//! Darts are numbered so that trivalent vertex `v` owns darts `3v`, `3v+1`,
//! `3v+2` in its cyclic order. Legs of a [`LegDiagram`] own the darts after
//! the trivalent ones.

mod bead;
pub(crate) mod canonical;
mod combo;
pub mod dsl;
mod hermitian;
mod leg;
pub mod random;
mod relations;

pub use bead::{BeadDiagram, BeadEdge};
pub use combo::{disjoint_union, DiagramCombo};
pub use hermitian::HermitianMatrixClass;
pub use leg::{make_wheel, LegDiagram};
pub use relations::{
    as_flip, holonomy_pull, holonomy_push, ihx_triple, linearity_split, orientation_reverse,
};

use std::fmt::Debug;

/// Common behavior of the two diagram families.
pub trait Diagram: Clone + Ord + Debug {
    fn empty() -> Self;
    /// Grading used for the `h` power of weight systems.
    fn degree(&self) -> usize;
    fn trivalent_count(&self) -> usize;
    /// Representative invariant under rotation-preserving isomorphism.
    fn canonical(&self) -> Self;
    fn disjoint_union(&self, other: &Self) -> Self;
    /// Reverses the cyclic order at trivalent vertex `v`.
    fn flip_vertex(&self, v: usize) -> Self;
    /// Darts whose edges are reassigned by `perm` (old dart -> new dart).
    fn permute_darts(&self, perm: &[usize]) -> Self;
    fn dart_partner(&self, dart: usize) -> usize;
    fn edge_count(&self) -> usize;
    /// The two darts of edge `e`, tail first for oriented edges.
    fn edge_darts(&self, e: usize) -> [usize; 2];
    fn edge_is_plain(&self, e: usize) -> bool;
}

pub(crate) fn rotate(dart: usize) -> usize {
    3 * (dart / 3) + (dart % 3 + 1) % 3
}
