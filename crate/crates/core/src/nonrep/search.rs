use alloc::vec;
use alloc::vec::Vec;

use super::verify::{Verifier, UNCOLOURED};
use super::{Colour, Colouring};
use crate::graph::{Graph, Vertex};
use crate::{Budget, SearchOutcome};

/// Backtracking search for a nonrepetitive colouring with at most `k` colours.
///
/// Vertices are coloured by descending degree (ties by id). After each
/// assignment the partial colouring is checked for a repetitive path through
/// the new vertex. A vertex may only open one new colour beyond those already
/// in use, since renaming colours preserves nonrepetitiveness.
///
/// `budget` counts search-tree nodes. [`SearchOutcome::Exhausted`] certifies
/// that no nonrepetitive `k`-colouring exists.
pub fn colour_with_palette(g: &Graph, k: usize, budget: u64) -> SearchOutcome<Colouring> {
    colour_with_budget(g, k, &mut Budget::new(budget))
}

pub(crate) fn colour_with_budget(g: &Graph, k: usize, budget: &mut Budget) -> SearchOutcome<Colouring> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(g.degree(v)), v));
    let mut search = Backtrack {
        g,
        verifier: Verifier::new(g),
        k,
        order,
        colours: vec![UNCOLOURED; g.n()],
        budget,
    };
    match search.assign(0, 0) {
        Some(true) => {
            let col = Colouring::new(search.colours, k).expect("search stays inside the palette");
            debug_assert!(super::is_nonrepetitive(g, &col).unwrap_or(false));
            SearchOutcome::Found(col)
        }
        Some(false) => SearchOutcome::Exhausted,
        None => SearchOutcome::BudgetExhausted,
    }
}

struct Backtrack<'a, 'b> {
    g: &'a Graph,
    verifier: Verifier<'a>,
    k: usize,
    order: Vec<Vertex>,
    colours: Vec<Colour>,
    budget: &'b mut Budget,
}

impl Backtrack<'_, '_> {
    /// `Some(true)` on success, `Some(false)` when this subtree has no
    /// solution, `None` when the budget ran out.
    fn assign(&mut self, idx: usize, opened: usize) -> Option<bool> {
        let Some(&v) = self.order.get(idx) else {
            return Some(true);
        };
        for c in 0..self.k.min(opened + 1) {
            if !self.budget.tick() {
                return None;
            }
            if self.g.neighbours(v).iter().any(|&w| self.colours[w] == c) {
                continue;
            }
            self.colours[v] = c;
            if self.verifier.find_partial(&self.colours, None, Some(v), true).is_none() {
                match self.assign(idx + 1, opened.max(c + 1)) {
                    Some(false) => {}
                    other => return other,
                }
            }
            self.colours[v] = UNCOLOURED;
        }
        Some(false)
    }
}

/// Result of computing the nonrepetitive chromatic number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PiOutcome {
    Exact { pi: usize, colouring: Colouring },
    /// No nonrepetitive colouring with at most `bound` colours exists.
    AboveBound { bound: usize },
    /// The budget ran out; every palette below `lower_bound` was refuted.
    Indeterminate { lower_bound: usize },
}

/// Smallest `k` admitting a nonrepetitive `k`-colouring, trying
/// `k = 1, 2, ...` up to `upper_bound` (default `n`). The budget is shared
/// across all palette sizes.
pub fn exact_pi(g: &Graph, upper_bound: Option<usize>, budget: u64) -> PiOutcome {
    if g.n() == 0 {
        return PiOutcome::Exact {
            pi: 0,
            colouring: Colouring::from_colours(Vec::new()),
        };
    }
    let upper = upper_bound.unwrap_or(g.n());
    let mut budget = Budget::new(budget);
    for k in 1..=upper {
        match colour_with_budget(g, k, &mut budget) {
            SearchOutcome::Found(colouring) => return PiOutcome::Exact { pi: k, colouring },
            SearchOutcome::Exhausted => {}
            SearchOutcome::BudgetExhausted => return PiOutcome::Indeterminate { lower_bound: k },
        }
    }
    PiOutcome::AboveBound { bound: upper }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonrep::is_nonrepetitive;
    use crate::DEFAULT_BUDGET;

    fn pi(g: &Graph) -> usize {
        match exact_pi(g, None, DEFAULT_BUDGET) {
            PiOutcome::Exact { pi, colouring } => {
                assert!(is_nonrepetitive(g, &colouring).unwrap());
                pi
            }
            other => panic!("undecided: {other:?}"),
        }
    }

    #[test]
    fn p4_has_no_two_colouring() {
        assert_eq!(colour_with_palette(&Graph::path(4), 2, DEFAULT_BUDGET), SearchOutcome::Exhausted);
    }

    #[test]
    fn triangle_takes_three_colours() {
        let col = colour_with_palette(&Graph::complete(3), 3, DEFAULT_BUDGET).found().unwrap();
        assert_eq!(col.colours_used(), 3);
    }

    #[test]
    fn p7_is_three_colourable() {
        let g = Graph::path(7);
        let col = colour_with_palette(&g, 3, DEFAULT_BUDGET).found().unwrap();
        assert!(is_nonrepetitive(&g, &col).unwrap());
    }

    #[test]
    fn small_pi_values() {
        assert_eq!(pi(&Graph::complete(4)), 4);
        assert_eq!(pi(&Graph::empty(1)), 1);
        assert_eq!(pi(&Graph::path(4)), 3);
        assert_eq!(pi(&Graph::empty(0)), 0);
    }

    #[test]
    fn tiny_budget_is_indeterminate() {
        assert_eq!(exact_pi(&Graph::path(6), None, 3), PiOutcome::Indeterminate { lower_bound: 2 });
        assert_eq!(colour_with_palette(&Graph::path(6), 3, 2), SearchOutcome::BudgetExhausted);
    }

    #[test]
    fn upper_bound_is_respected() {
        assert_eq!(exact_pi(&Graph::complete(4), Some(3), DEFAULT_BUDGET), PiOutcome::AboveBound { bound: 3 });
    }
}
