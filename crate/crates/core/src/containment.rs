//! Brute-force containment oracles for small patterns.
//!
//! `G` contains `H` as an immersion when the vertices of `H` map injectively
//! to branch vertices of `G` and the edges of `H` map to pairwise
//! edge-disjoint paths between the corresponding branch vertices. In a strong
//! immersion no path passes through a branch vertex. A topological minor
//! further requires the paths to be internally vertex-disjoint.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::{Budget, SearchOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ContainmentMode {
    Immersion,
    StrongImmersion,
    TopologicalMinor,
}

impl ContainmentMode {
    pub fn name(self) -> &'static str {
        match self {
            ContainmentMode::Immersion => "immersion",
            ContainmentMode::StrongImmersion => "strong-immersion",
            ContainmentMode::TopologicalMinor => "topological-minor",
        }
    }
}

/// Branch vertices and routed paths certifying that `G` contains `H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContainmentWitness {
    pub mode: ContainmentMode,
    /// `branch_map[h]` is the image of pattern vertex `h`.
    pub branch_map: Vec<Vertex>,
    /// One entry per edge `(u, v)`, `u < v`, of `H` in [`Graph::edges`]
    /// order; the path runs from `branch_map[u]` to `branch_map[v]`.
    pub paths: Vec<((Vertex, Vertex), Vec<Vertex>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessViolation {
    #[error("branch map has {got} entries but the pattern has {expected} vertices")]
    BranchMapSize { expected: usize, got: usize },
    #[error("branch vertex {0} is not a vertex of the host")]
    UnknownVertex(Vertex),
    #[error("host vertex {0} is the image of two pattern vertices")]
    NotInjective(Vertex),
    #[error("the paths do not match the pattern edges")]
    EdgeSetMismatch,
    #[error("path for pattern edge {0:?} has the wrong endpoints")]
    WrongEndpoints((Vertex, Vertex)),
    #[error("path for pattern edge {0:?} is not a path of the host")]
    NotAPath((Vertex, Vertex)),
    #[error("host edge {0:?} is used by two paths")]
    SharedEdge((Vertex, Vertex)),
    #[error("path for pattern edge {0:?} passes through a branch vertex")]
    ThroughBranchVertex((Vertex, Vertex)),
    #[error("host vertex {0} is internal to two paths")]
    SharedInternalVertex(Vertex),
}

/// Checks a witness against its mode from scratch.
pub fn check_witness(g: &Graph, h: &Graph, w: &ContainmentWitness) -> Result<(), WitnessViolation> {
    if w.branch_map.len() != h.n() {
        return Err(WitnessViolation::BranchMapSize {
            expected: h.n(),
            got: w.branch_map.len(),
        });
    }
    let mut is_branch = vec![false; g.n()];
    for &b in &w.branch_map {
        if b >= g.n() {
            return Err(WitnessViolation::UnknownVertex(b));
        }
        if core::mem::replace(&mut is_branch[b], true) {
            return Err(WitnessViolation::NotInjective(b));
        }
    }
    let mut listed: Vec<(Vertex, Vertex)> = w.paths.iter().map(|(e, _)| *e).collect();
    listed.sort_unstable();
    if listed != h.edges().collect::<Vec<_>>() {
        return Err(WitnessViolation::EdgeSetMismatch);
    }

    let mut used_edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut internal = vec![false; g.n()];
    for &((u, v), ref path) in &w.paths {
        let e = (u, v);
        if path.first() != Some(&w.branch_map[u]) || path.last() != Some(&w.branch_map[v]) {
            return Err(WitnessViolation::WrongEndpoints(e));
        }
        let mut seen = Vec::with_capacity(path.len());
        for &x in path {
            if x >= g.n() || seen.contains(&x) {
                return Err(WitnessViolation::NotAPath(e));
            }
            seen.push(x);
        }
        if !path.windows(2).all(|p| g.has_edge(p[0], p[1])) {
            return Err(WitnessViolation::NotAPath(e));
        }
        for p in path.windows(2) {
            used_edges.push((p[0].min(p[1]), p[0].max(p[1])));
        }
        let inner = &path[1..path.len() - 1];
        if w.mode != ContainmentMode::Immersion && inner.iter().any(|&x| is_branch[x]) {
            return Err(WitnessViolation::ThroughBranchVertex(e));
        }
        if w.mode == ContainmentMode::TopologicalMinor {
            for &x in inner {
                if core::mem::replace(&mut internal[x], true) {
                    return Err(WitnessViolation::SharedInternalVertex(x));
                }
            }
        }
    }
    used_edges.sort_unstable();
    if let Some(p) = used_edges.windows(2).find(|p| p[0] == p[1]) {
        return Err(WitnessViolation::SharedEdge(p[0]));
    }
    Ok(())
}

/// Searches for `H` as an immersion (strong when `strong` is set).
///
/// [`SearchOutcome::Exhausted`] certifies non-containment. The budget counts
/// branch-map and routing nodes.
pub fn find_immersion(g: &Graph, h: &Graph, strong: bool, budget: u64) -> SearchOutcome<ContainmentWitness> {
    let mode = if strong {
        ContainmentMode::StrongImmersion
    } else {
        ContainmentMode::Immersion
    };
    find_containment(g, h, mode, budget)
}

/// Searches for a subdivision of `H` in `G`.
pub fn find_topological_minor(g: &Graph, h: &Graph, budget: u64) -> SearchOutcome<ContainmentWitness> {
    find_containment(g, h, ContainmentMode::TopologicalMinor, budget)
}

pub fn find_containment(g: &Graph, h: &Graph, mode: ContainmentMode, budget: u64) -> SearchOutcome<ContainmentWitness> {
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return SearchOutcome::Exhausted;
    }
    let mut order: Vec<Vertex> = h.vertices().collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(h.degree(v)), v));
    let h_edges: Vec<(Vertex, Vertex)> = h.edges().collect();
    let mut search = Search {
        g,
        h,
        mode,
        order,
        h_edges,
        branch: vec![usize::MAX; h.n()],
        is_branch: vec![false; g.n()],
        edge_used: vec![Vec::new(); g.n()],
        vertex_used: vec![false; g.n()],
        routed: Vec::new(),
        budget: Budget::new(budget),
    };
    for v in g.vertices() {
        search.edge_used[v] = vec![false; g.degree(v)];
    }
    match search.map(0) {
        Some(true) => {
            let mut paths = core::mem::take(&mut search.routed);
            paths.sort_unstable_by_key(|(e, _)| *e);
            let w = ContainmentWitness {
                mode,
                branch_map: search.branch,
                paths,
            };
            debug_assert_eq!(check_witness(g, h, &w), Ok(()));
            SearchOutcome::Found(w)
        }
        Some(false) => SearchOutcome::Exhausted,
        None => SearchOutcome::BudgetExhausted,
    }
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    mode: ContainmentMode,
    order: Vec<Vertex>,
    h_edges: Vec<(Vertex, Vertex)>,
    branch: Vec<Vertex>,
    is_branch: Vec<bool>,
    // edge_used[v][i] mirrors the edge to g.neighbours(v)[i]
    edge_used: Vec<Vec<bool>>,
    vertex_used: Vec<bool>,
    routed: Vec<((Vertex, Vertex), Vec<Vertex>)>,
    budget: Budget,
}

impl Search<'_> {
    /// Outcomes as in the colouring search: `None` means out of budget.
    fn map(&mut self, idx: usize) -> Option<bool> {
        let Some(&hv) = self.order.get(idx) else {
            let mut remaining = self.h_edges.clone();
            return self.route(&mut remaining);
        };
        for gv in self.g.vertices() {
            if !self.budget.tick() {
                return None;
            }
            if self.is_branch[gv] || self.g.degree(gv) < self.h.degree(hv) {
                continue;
            }
            self.branch[hv] = gv;
            self.is_branch[gv] = true;
            match self.map(idx + 1) {
                Some(false) => {}
                other => return other,
            }
            self.is_branch[gv] = false;
            self.branch[hv] = usize::MAX;
        }
        Some(false)
    }

    /// Routes the remaining pattern edges, nearest pair first.
    fn route(&mut self, remaining: &mut Vec<(Vertex, Vertex)>) -> Option<bool> {
        if remaining.is_empty() {
            return Some(true);
        }
        let mut pick = None;
        for (i, &(u, v)) in remaining.iter().enumerate() {
            let d = self.residual_distance(self.branch[u], self.branch[v])?;
            match d {
                None => return Some(false),
                Some(d) if pick.is_none_or(|(_, best)| d < best) => pick = Some((i, d)),
                _ => {}
            }
        }
        let (i, _) = pick.expect("remaining is nonempty");
        let e = remaining.remove(i);
        let mut path = vec![self.branch[e.0]];
        let mut on_path = vec![false; self.g.n()];
        on_path[self.branch[e.0]] = true;
        let r = self.extend_path(e, &mut path, &mut on_path, remaining);
        remaining.insert(i, e);
        r
    }

    fn extend_path(
        &mut self,
        e: (Vertex, Vertex),
        path: &mut Vec<Vertex>,
        on_path: &mut [bool],
        remaining: &mut Vec<(Vertex, Vertex)>,
    ) -> Option<bool> {
        if !self.budget.tick() {
            return None;
        }
        let target = self.branch[e.1];
        let tail = *path.last().expect("path starts at a branch vertex");
        let g = self.g;
        for (i, &x) in g.neighbours(tail).iter().enumerate() {
            if on_path[x] || self.edge_used[tail][i] {
                continue;
            }
            if x != target && !self.may_pass(x) {
                continue;
            }
            self.set_edge(tail, x, true);
            path.push(x);
            on_path[x] = true;
            let r = if x == target {
                self.commit(e, path, true);
                let r = self.route(remaining);
                if r == Some(false) {
                    self.commit(e, path, false);
                }
                r
            } else {
                self.extend_path(e, path, on_path, remaining)
            };
            match r {
                Some(false) => {}
                other => return other,
            }
            on_path[x] = false;
            path.pop();
            self.set_edge(tail, x, false);
        }
        Some(false)
    }

    fn may_pass(&self, x: Vertex) -> bool {
        match self.mode {
            ContainmentMode::Immersion => true,
            ContainmentMode::StrongImmersion => !self.is_branch[x],
            ContainmentMode::TopologicalMinor => !self.is_branch[x] && !self.vertex_used[x],
        }
    }

    fn commit(&mut self, e: (Vertex, Vertex), path: &[Vertex], on: bool) {
        for &x in &path[1..path.len() - 1] {
            self.vertex_used[x] = on;
        }
        if on {
            self.routed.push((e, path.to_vec()));
        } else {
            self.routed.pop();
        }
    }

    fn set_edge(&mut self, a: Vertex, b: Vertex, on: bool) {
        let i = self.g.neighbours(a).binary_search(&b).expect("edge of the host");
        let j = self.g.neighbours(b).binary_search(&a).expect("edge of the host");
        self.edge_used[a][i] = on;
        self.edge_used[b][j] = on;
    }

    /// BFS distance using only free edges and passable vertices; the outer
    /// `None` means out of budget.
    fn residual_distance(&mut self, s: Vertex, t: Vertex) -> Option<Option<usize>> {
        if !self.budget.tick() {
            return None;
        }
        let mut dist = vec![usize::MAX; self.g.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                return Some(Some(dist[u]));
            }
            if u != s && !self.may_pass(u) {
                continue;
            }
            for (i, &x) in self.g.neighbours(u).iter().enumerate() {
                if !self.edge_used[u][i] && dist[x] == usize::MAX {
                    dist[x] = dist[u] + 1;
                    queue.push_back(x);
                }
            }
        }
        Some(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_BUDGET;

    fn subdivided_k4() -> Graph {
        Graph::complete(4).subdivide(1)
    }

    #[test]
    fn cycle_contains_no_claw_immersion() {
        let r = find_immersion(&Graph::cycle(4), &Graph::star(3), false, DEFAULT_BUDGET);
        assert_eq!(r, SearchOutcome::Exhausted);
    }

    #[test]
    fn k4_in_itself() {
        let k4 = Graph::complete(4);
        for r in [
            find_immersion(&k4, &k4, false, DEFAULT_BUDGET),
            find_topological_minor(&k4, &k4, DEFAULT_BUDGET),
        ] {
            let w = r.found().unwrap();
            assert_eq!(w.branch_map, vec![0, 1, 2, 3]);
            assert!(w.paths.iter().all(|(_, p)| p.len() == 2));
            assert_eq!(check_witness(&k4, &k4, &w), Ok(()));
        }
    }

    #[test]
    fn strong_path_in_path() {
        let g = Graph::path(5);
        let w = find_immersion(&g, &Graph::path(3), true, DEFAULT_BUDGET).found().unwrap();
        assert_eq!(check_witness(&g, &Graph::path(3), &w), Ok(()));
        let mut b = w.branch_map.clone();
        b.sort_unstable();
        assert!(b[2] - b[0] == 2);
    }

    #[test]
    fn tree_has_no_triangle_subdivision() {
        let tree = Graph::from_edges(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(find_topological_minor(&tree, &Graph::complete(3), DEFAULT_BUDGET), SearchOutcome::Exhausted);
    }

    #[test]
    fn subdivision_contains_k4_topologically() {
        let g = subdivided_k4();
        let w = find_topological_minor(&g, &Graph::complete(4), DEFAULT_BUDGET).found().unwrap();
        assert!(w.paths.iter().all(|(_, p)| p.len() == 3));
        assert_eq!(check_witness(&g, &Graph::complete(4), &w), Ok(()));
    }

    #[test]
    fn strong_immersion_is_stricter() {
        // two disjoint edges and an isolated vertex fill K_{1,4}; one path
        // must cross the centre, which is then a branch vertex
        let star = Graph::star(4);
        let h = Graph::from_edges(5, [(0, 1), (2, 3)]).unwrap();
        let w = find_immersion(&star, &h, false, DEFAULT_BUDGET).found().unwrap();
        assert_eq!(check_witness(&star, &h, &w), Ok(()));
        assert_eq!(find_immersion(&star, &h, true, DEFAULT_BUDGET), SearchOutcome::Exhausted);
        assert_eq!(find_immersion(&star, &Graph::star(5), false, DEFAULT_BUDGET), SearchOutcome::Exhausted);
    }

    #[test]
    fn bowtie_immerses_c4_but_not_topologically() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)]).unwrap();
        let c4 = Graph::cycle(4);
        let w = find_immersion(&g, &c4, true, DEFAULT_BUDGET).found().unwrap();
        assert_eq!(check_witness(&g, &c4, &w), Ok(()));
        assert_eq!(find_topological_minor(&g, &c4, DEFAULT_BUDGET), SearchOutcome::Exhausted);
    }

    #[test]
    fn checker_rejects_shared_edges() {
        let g = Graph::path(3);
        let h = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        let w = ContainmentWitness {
            mode: ContainmentMode::Immersion,
            branch_map: vec![0, 1, 2],
            paths: vec![((0, 1), vec![0, 1]), ((0, 2), vec![0, 1, 2])],
        };
        assert_eq!(check_witness(&g, &h, &w), Err(WitnessViolation::SharedEdge((0, 1))));
        let strong = ContainmentWitness {
            mode: ContainmentMode::StrongImmersion,
            ..w
        };
        assert_eq!(check_witness(&g, &h, &strong), Err(WitnessViolation::ThroughBranchVertex((0, 2))));
    }

    #[test]
    fn tiny_budget_is_reported() {
        assert_eq!(
            find_topological_minor(&subdivided_k4(), &Graph::complete(4), 3),
            SearchOutcome::BudgetExhausted
        );
    }
}
