//! Nonrepetitive colourings: the verifier, Thue sequences and exact search.
//!
//! A path `(v1, ..., v2t)` is repetitively coloured when the colour sequence
//! of its first half equals that of its second half. A colouring with no
//! such path is nonrepetitive, and in particular proper.

mod search;
mod thue;
mod verify;

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub use search::{colour_with_palette, exact_pi, PiOutcome};
pub use thue::{colour_path, is_square_free, thue_sequence, ThueSequence};
pub use verify::{find_repetition, is_nonrepetitive, Verifier};

pub type Colour = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColouringError {
    #[error("vertex {vertex} has colour {colour}, outside the palette of size {palette_size}")]
    ColourOutOfRange {
        vertex: Vertex,
        colour: Colour,
        palette_size: usize,
    },
    #[error("colouring covers {got} vertices but the graph has {expected}")]
    NotTotal { expected: usize, got: usize },
}

/// A total colouring `vertex -> 0..palette_size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Colouring {
    colours: Vec<Colour>,
    palette_size: usize,
}

impl Colouring {
    pub fn new(colours: Vec<Colour>, palette_size: usize) -> Result<Self, ColouringError> {
        if let Some((vertex, &colour)) = colours.iter().enumerate().find(|(_, &c)| c >= palette_size) {
            return Err(ColouringError::ColourOutOfRange {
                vertex,
                colour,
                palette_size,
            });
        }
        Ok(Colouring {
            colours,
            palette_size,
        })
    }

    /// Uses the smallest palette that fits the given colours.
    pub fn from_colours(colours: Vec<Colour>) -> Self {
        let palette_size = colours.iter().max().map_or(0, |&c| c + 1);
        Colouring {
            colours,
            palette_size,
        }
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn colour(&self, v: Vertex) -> Colour {
        self.colours[v]
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    /// Number of distinct colours actually used.
    pub fn colours_used(&self) -> usize {
        let mut used = self.colours.clone();
        used.sort_unstable();
        used.dedup();
        used.len()
    }

    /// Renames colours to `0..colours_used()` in order of first appearance.
    pub fn compacted(&self) -> Colouring {
        let span = self.colours.iter().max().map_or(0, |&c| c + 1);
        let mut rename = vec![usize::MAX; span];
        let mut next = 0;
        let colours = self
            .colours
            .iter()
            .map(|&c| {
                if rename[c] == usize::MAX {
                    rename[c] = next;
                    next += 1;
                }
                rename[c]
            })
            .collect();
        Colouring {
            colours,
            palette_size: next,
        }
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().all(|(u, v)| self.colours[u] != self.colours[v])
    }

    pub(crate) fn check_total(&self, g: &Graph) -> Result<(), ColouringError> {
        if self.colours.len() != g.n() {
            return Err(ColouringError::NotTotal {
                expected: g.n(),
                got: self.colours.len(),
            });
        }
        Ok(())
    }
}

/// How thoroughly a colouring was checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum VerifyMode {
    /// Every even-order path was considered.
    #[default]
    Exact,
    /// Only paths of half-length at most `t_max`.
    Bounded { t_max: usize },
}

impl VerifyMode {
    pub fn t_max(self) -> Option<usize> {
        match self {
            VerifyMode::Exact => None,
            VerifyMode::Bounded { t_max } => Some(t_max),
        }
    }
}

/// An even-order path whose two halves carry the same colour sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepetitionWitness {
    path: Vec<Vertex>,
}

impl RepetitionWitness {
    /// Wraps a path without checking it; use [`RepetitionWitness::is_valid`].
    pub fn new(path: Vec<Vertex>) -> Self {
        RepetitionWitness { path }
    }

    pub fn path(&self) -> &[Vertex] {
        &self.path
    }

    pub fn half_length(&self) -> usize {
        self.path.len() / 2
    }

    /// Checks the witness from scratch: even nonzero order, distinct
    /// vertices, consecutive vertices adjacent, equal halves.
    pub fn is_valid(&self, g: &Graph, col: &Colouring) -> bool {
        let p = &self.path;
        if p.is_empty() || !p.len().is_multiple_of(2) || p.iter().any(|&v| v >= g.n() || v >= col.len()) {
            return false;
        }
        let mut seen = vec![false; g.n()];
        for &v in p {
            if core::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        let t = p.len() / 2;
        p.windows(2).all(|w| g.has_edge(w[0], w[1]))
            && (0..t).all(|i| col.colour(p[i]) == col.colour(p[t + i]))
    }
}
