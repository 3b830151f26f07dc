//! Nonrepetitive graph colourings and the structures used to build them.
//!
//! The crate is `no_std` (it needs `alloc`) and does no IO. It covers:
//!
//! - [`graph`]: simple graphs, degree profiles and vertex identification
//! - [`nonrep`]: verification of nonrepetitive colourings, Thue sequences and
//!   exhaustive colouring search
//! - [`decomp`]: tree decompositions and T-partitions, their adhesion and torsos
//! - [`transform`]: turning a T-partition into a tree decomposition with
//!   bounded adhesion and degree-bounded torsos
//! - [`strategies`]: colouring constructions (resampling, bounded degree,
//!   composition over a decomposition, the full pipeline)
//! - [`containment`]: brute-force immersion and topological minor oracles

#![no_std]

extern crate alloc;

pub mod containment;
pub mod decomp;
pub mod graph;
pub mod nonrep;
pub mod strategies;
pub mod transform;

pub use graph::{DegreeProfile, Graph, GraphError, Vertex};

/// Default node limit for the exhaustive searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Outcome of a budgeted exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The whole search space was explored without success.
    Exhausted,
    /// The node budget ran out before the search could decide.
    BudgetExhausted,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

/// Counts search nodes against a fixed limit.
#[derive(Debug, Clone)]
pub(crate) struct Budget {
    left: u64,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Budget { left: limit }
    }

    /// Charges one node; `false` once the budget is spent.
    pub(crate) fn tick(&mut self) -> bool {
        if self.left == 0 {
            return false;
        }
        self.left -= 1;
        true
    }
}
