//! Shellability and sequential Cohen-Macaulayness of independence complexes
//! of graphs and Stanley-Reisner complexes of clutters.
//!
//! The crate pairs constructive shelling recursions (disjoint unions,
//! bipartite graphs, chordal graphs, clutters with the free vertex property)
//! with independent oracles: a brute-force shelling search and exact
//! simplicial homology for the Reisner and Duval criteria.
//!
//! All vertex labels are kept in lexicographic order and every choice the
//! algorithms make is broken by that order, so certificates are reproducible.
//! Vertex sets are `u64` masks internally, which caps universes at 64 labels.

pub mod bits;
pub mod cli;
pub mod clutter;
pub mod complex;
pub mod digraph;
pub mod error;
pub mod families;
pub mod graph;
pub mod homology;
pub mod ideal;
pub mod shelling;

pub use clutter::Clutter;
pub use complex::{disjoint_join, from_minimal_covers, independence_complex, SimplicialComplex};
pub use digraph::{Digraph, MatchedBipartite};
pub use error::{Error, Result};
pub use graph::Graph;
pub use homology::{FieldSpec, HomologyProfile};
pub use ideal::SquarefreeMonomialIdeal;
pub use shelling::ShellingCertificate;

/// Outcome of a yes/no check that carries a witness when the answer is no.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check<W> {
    Holds,
    Fails(W),
}

impl<W> Check<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Check::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Check::Holds => None,
            Check::Fails(w) => Some(w),
        }
    }
}
