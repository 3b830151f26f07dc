//! From a T-partition to a tree decomposition.
//!
//! Root the tree and start from the bags of the partition. For every edge
//! `vw` of `G` with `v` in `T_x`, `w` in `T_y` and `z` the least common
//! ancestor of `x` and `y`, add `v` to every bag on the path from `x` up to
//! `z` and `w` to every bag on the path from `y` up to `z`.
//!
//! The bags containing a vertex then form a directed path from its home node
//! towards the root, so the result is a tree decomposition. The intersection
//! of two adjacent bags injects into the cross edges of that tree edge, so
//! the adhesion never exceeds the adhesion of the partition. When the
//! partition has adhesion at most `t²` and every torso has `(t, t²)`-bounded
//! degree, every torso of the result has `(t, t⁴ + 2t²)`-bounded degree.
//! [`check_transform_guarantees`] re-measures all of this.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::decomp::{
    adhesion_td, adhesion_tp, split_view, torso_td, torso_tp, validate_tpartition,
    validate_tree_decomposition, DecompError, Node, TPartition, TdViolation, TorsoVertex, TpViolation,
    Tree, TreeDecomposition,
};
use crate::graph::{degree_profile, DegreeProfile, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("invalid T-partition: {0:?}")]
    InvalidPartition(Vec<TpViolation>),
    #[error("root {0} is not a tree node")]
    UnknownRoot(Node),
    #[error("decomposition is not built from this partition: bag {node} lacks vertex {vertex}")]
    NotDerived { node: Node, vertex: Vertex },
    #[error("decomposition and partition use different trees")]
    TreeMismatch,
    #[error(transparent)]
    Decomp(#[from] DecompError),
}

/// A tree with every edge oriented towards `root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedTree {
    root: Node,
    parent: Vec<Option<Node>>,
    depth: Vec<usize>,
}

impl OrientedTree {
    pub fn new(tree: &Tree, root: Node) -> Result<Self, TransformError> {
        if root >= tree.node_count() {
            return Err(TransformError::UnknownRoot(root));
        }
        let mut parent = vec![None; tree.node_count()];
        let mut depth = vec![0; tree.node_count()];
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &y in tree.neighbours(x) {
                if y != root && parent[y].is_none() {
                    parent[y] = Some(x);
                    depth[y] = depth[x] + 1;
                    stack.push(y);
                }
            }
        }
        Ok(OrientedTree { root, parent, depth })
    }

    pub fn root(&self) -> Node {
        self.root
    }

    pub fn parent(&self, x: Node) -> Option<Node> {
        self.parent[x]
    }

    pub fn depth(&self, x: Node) -> usize {
        self.depth[x]
    }

    /// Least common ancestor, by walking both nodes up to equal depth.
    pub fn lca(&self, mut x: Node, mut y: Node) -> Node {
        while self.depth[x] > self.depth[y] {
            x = self.parent[x].expect("non-root has a parent");
        }
        while self.depth[y] > self.depth[x] {
            y = self.parent[y].expect("non-root has a parent");
        }
        while x != y {
            x = self.parent[x].expect("non-root has a parent");
            y = self.parent[y].expect("non-root has a parent");
        }
        x
    }

    /// Nodes on the directed path from `x` up to its ancestor `z`, inclusive.
    pub fn path_up(&self, x: Node, z: Node) -> impl Iterator<Item = Node> + '_ {
        let mut next = Some(x);
        core::iter::from_fn(move || {
            let cur = next?;
            next = if cur == z { None } else { self.parent[cur] };
            Some(cur)
        })
    }

    /// Whether `a` is an ancestor of `x` (every node is its own ancestor).
    pub fn is_ancestor(&self, a: Node, mut x: Node) -> bool {
        while self.depth[x] > self.depth[a] {
            x = self.parent[x].expect("non-root has a parent");
        }
        x == a
    }

    /// The child of `a` on the path from its proper descendant `x`.
    fn child_towards(&self, a: Node, mut x: Node) -> Node {
        while self.parent[x] != Some(a) {
            x = self.parent[x].expect("x is a proper descendant of a");
        }
        x
    }
}

fn checked_homes(g: &Graph, tp: &TPartition) -> Result<Vec<Node>, TransformError> {
    validate_tpartition(g, tp).map_err(TransformError::InvalidPartition)?;
    Ok(tp.homes(g.n()).into_iter().map(|h| h.expect("partition covers V(G)")).collect())
}

/// Builds the tree decomposition `(T*_x)` from a T-partition. The root
/// defaults to node 0.
pub fn build_tree_decomposition(
    g: &Graph,
    tp: &TPartition,
    root: Option<Node>,
) -> Result<TreeDecomposition, TransformError> {
    let home = checked_homes(g, tp)?;
    let oriented = OrientedTree::new(tp.tree(), root.unwrap_or(0))?;
    let mut bags: Vec<Vec<Vertex>> = tp.bags().to_vec();
    for (v, w) in g.edges() {
        let (x, y) = (home[v], home[w]);
        if x == y {
            continue;
        }
        let z = oriented.lca(x, y);
        for a in oriented.path_up(x, z) {
            bags[a].push(v);
        }
        for a in oriented.path_up(y, z) {
            bags[a].push(w);
        }
    }
    Ok(TreeDecomposition::new(tp.tree().clone(), bags)?)
}

/// Measured quantities for one tree edge `xy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeCheck {
    pub x: Node,
    pub y: Node,
    /// `|T*_x ∩ T*_y|`
    pub intersection: usize,
    /// `|E(T, xy)|`
    pub cross_edges: usize,
}

/// A guarantee of the construction that failed on this instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GuaranteeViolation {
    NotATreeDecomposition(Vec<TdViolation>),
    /// `|T*_x ∩ T*_y| > |E(T, xy)|`
    EdgeAdhesion(EdgeCheck),
    /// The bags holding the vertex are not a directed path up from its home.
    BagShape(Vertex),
    /// The lifted vertex `vertex` in bag `node` has more neighbours there
    /// than the charging argument allows.
    LiftedNeighbours { node: Node, vertex: Vertex },
    /// Torso degree exceeds bag degree plus twice the output adhesion.
    DegreeAccounting {
        node: Node,
        vertex: Vertex,
        torso_degree: usize,
        bag_degree: usize,
    },
    /// Under the hypothesis, the torso has more than `t` vertices of degree
    /// above `t⁴ + 2t²`.
    TorsoBound { node: Node, profile: DegreeProfile },
}

/// Certificate for one run of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformReport {
    pub t: Option<usize>,
    pub root: Node,
    pub input_adhesion: usize,
    pub output_adhesion: usize,
    /// The partition has adhesion at most `t²` and `(t, t²)`-bounded torsos.
    pub hypothesis_met: bool,
    /// Degree threshold used for `torso_profiles`: `t⁴ + 2t²` when `t` is
    /// given, otherwise each torso's maximum degree.
    pub torso_profiles: Vec<DegreeProfile>,
    pub edge_checks: Vec<EdgeCheck>,
    pub violations: Vec<GuaranteeViolation>,
}

impl TransformReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `t⁴ + 2t²`
pub fn torso_degree_bound(t: usize) -> usize {
    let sq = t * t;
    sq * sq + 2 * sq
}

/// Whether the partition has adhesion at most `t²` and every torso has
/// `(t, t²)`-bounded degree.
pub fn partition_hypothesis(g: &Graph, tp: &TPartition, t: usize) -> Result<bool, TransformError> {
    if adhesion_tp(g, tp)? > t * t {
        return Ok(false);
    }
    for x in tp.tree().nodes() {
        if degree_profile(&torso_tp(g, tp, x)?.graph, t * t).c > t {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Re-measures every property of `td` that the construction promises,
/// given the partition it was built from and the root used.
pub fn check_transform_guarantees(
    g: &Graph,
    tp: &TPartition,
    td: &TreeDecomposition,
    t: Option<usize>,
    root: Option<Node>,
) -> Result<TransformReport, TransformError> {
    let home = checked_homes(g, tp)?;
    if td.tree() != tp.tree() {
        return Err(TransformError::TreeMismatch);
    }
    for (node, bag) in tp.bags().iter().enumerate() {
        if let Some(&vertex) = bag.iter().find(|v| td.bag(node).binary_search(v).is_err()) {
            return Err(TransformError::NotDerived { node, vertex });
        }
    }
    let oriented = OrientedTree::new(tp.tree(), root.unwrap_or(0))?;
    let mut violations = Vec::new();

    if let Err(v) = validate_tree_decomposition(g, td) {
        violations.push(GuaranteeViolation::NotATreeDecomposition(v));
    }

    let mut edge_checks = Vec::new();
    for (x, y) in tp.tree().edges() {
        let cross = split_view(g, tp, x, y)?.cross_edges.len();
        let shared = td.bag(x).iter().filter(|v| td.bag(y).binary_search(v).is_ok()).count();
        let check = EdgeCheck {
            x,
            y,
            intersection: shared,
            cross_edges: cross,
        };
        if shared > cross {
            violations.push(GuaranteeViolation::EdgeAdhesion(check));
        }
        edge_checks.push(check);
    }

    let occ = td.occurrences(g.n());
    for v in g.vertices() {
        if !is_upward_path(&oriented, home[v], &occ[v]) {
            violations.push(GuaranteeViolation::BagShape(v));
        }
    }

    for x in tp.tree().nodes() {
        for &v in td.bag(x) {
            if home[v] != x && !lifted_neighbours_inject(g, td, &oriented, &home, x, v) {
                violations.push(GuaranteeViolation::LiftedNeighbours { node: x, vertex: v });
            }
        }
    }

    let output_adhesion = adhesion_td(td);
    let mut torsos = Vec::with_capacity(tp.tree().node_count());
    for x in tp.tree().nodes() {
        let torso = torso_td(g, td, x)?;
        let bag_graph = g.induced_subgraph(td.bag(x));
        for (i, label) in torso.labels.iter().enumerate() {
            let TorsoVertex::Vertex(v) = *label else { continue };
            let (torso_degree, bag_degree) = (torso.graph.degree(i), bag_graph.degree(i));
            if torso_degree > bag_degree + 2 * output_adhesion {
                violations.push(GuaranteeViolation::DegreeAccounting {
                    node: x,
                    vertex: v,
                    torso_degree,
                    bag_degree,
                });
            }
        }
        torsos.push(torso.graph);
    }

    let hypothesis_met = match t {
        Some(t) => partition_hypothesis(g, tp, t)?,
        None => false,
    };
    let torso_profiles: Vec<DegreeProfile> = torsos
        .iter()
        .map(|torso| degree_profile(torso, t.map_or(torso.max_degree(), torso_degree_bound)))
        .collect();
    if let (true, Some(t)) = (hypothesis_met, t) {
        for (node, profile) in torso_profiles.iter().enumerate() {
            if profile.c > t {
                violations.push(GuaranteeViolation::TorsoBound { node, profile: *profile });
            }
        }
    }

    Ok(TransformReport {
        t,
        root: oriented.root(),
        input_adhesion: adhesion_tp(g, tp)?,
        output_adhesion,
        hypothesis_met,
        torso_profiles,
        edge_checks,
        violations,
    })
}

/// The nodes `occ` form the directed path from `home` up to some ancestor.
fn is_upward_path(oriented: &OrientedTree, home: Node, occ: &[Node]) -> bool {
    let mut nodes = occ.to_vec();
    nodes.sort_by_key(|&x| core::cmp::Reverse(oriented.depth(x)));
    nodes.first() == Some(&home) && nodes.windows(2).all(|w| oriented.parent(w[0]) == Some(w[1]))
}

/// For a vertex `v` lifted into `T*_x` from below through the child `y`,
/// charge every neighbour `w` of `v` in `T*_x` to a distinct edge of
/// `E(T, xy)`: the edge `vw` when `w` lies outside the subtree of `y`,
/// otherwise an edge from `w` to a vertex outside that subtree.
fn lifted_neighbours_inject(
    g: &Graph,
    td: &TreeDecomposition,
    oriented: &OrientedTree,
    home: &[Node],
    x: Node,
    v: Vertex,
) -> bool {
    if !oriented.is_ancestor(x, home[v]) || home[v] == x {
        return false;
    }
    let y = oriented.child_towards(x, home[v]);
    let below = |u: Vertex| oriented.is_ancestor(y, home[u]);
    let mut charged: Vec<(Vertex, Vertex)> = Vec::new();
    for &w in g.neighbours(v) {
        if td.bag(x).binary_search(&w).is_err() {
            continue;
        }
        let edge = if !below(w) {
            (v, w)
        } else {
            match g.neighbours(w).iter().find(|&&u| !below(u)) {
                Some(&u) => (w, u),
                None => return false,
            }
        };
        let edge = (edge.0.min(edge.1), edge.0.max(edge.1));
        // both endpoints on opposite sides of xy, and never charged twice
        if below(edge.0) == below(edge.1) || charged.contains(&edge) {
            return false;
        }
        charged.push(edge);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(tree: Tree, bags: &[&[Vertex]]) -> TPartition {
        TPartition::new(tree, bags.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn cycle_example() {
        let g = Graph::cycle(4);
        let p = tp(Tree::path(2).unwrap(), &[&[0, 1], &[2, 3]]);
        let td = build_tree_decomposition(&g, &p, Some(1)).unwrap();
        assert_eq!(td.bags(), &[vec![0, 1], vec![0, 1, 2, 3]]);

        let report = check_transform_guarantees(&g, &p, &td, Some(2), Some(1)).unwrap();
        assert!(report.holds(), "{:?}", report.violations);
        assert_eq!((report.input_adhesion, report.output_adhesion), (2, 2));
        assert!(report.hypothesis_met);
        assert!(report.torso_profiles.iter().all(|p| p.max_degree <= 3 && p.c == 0));
    }

    #[test]
    fn single_edge_lifts_towards_root() {
        let g = Graph::path(2);
        let p = tp(Tree::path(2).unwrap(), &[&[0], &[1]]);
        let td = build_tree_decomposition(&g, &p, Some(1)).unwrap();
        assert_eq!(td.bags(), &[vec![0], vec![0, 1]]);
        let td = build_tree_decomposition(&g, &p, None).unwrap();
        assert_eq!(td.bags(), &[vec![0, 1], vec![1]]);
    }

    #[test]
    fn inner_edges_trigger_nothing() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let p = tp(Tree::path(3).unwrap(), &[&[0, 1], &[], &[2, 3]]);
        let td = build_tree_decomposition(&g, &p, None).unwrap();
        assert_eq!(td.bags(), p.bags());
    }

    #[test]
    fn lifting_passes_through_empty_bags() {
        // 0 in node 2, 1 in node 0, root 1: both lift to the middle node
        let g = Graph::path(2);
        let p = tp(Tree::path(3).unwrap(), &[&[1], &[], &[0]]);
        let td = build_tree_decomposition(&g, &p, Some(1)).unwrap();
        assert_eq!(td.bags(), &[vec![1], vec![0, 1], vec![0]]);
        assert!(check_transform_guarantees(&g, &p, &td, None, Some(1)).unwrap().holds());
    }

    #[test]
    fn edgeless_report_is_zero() {
        let g = Graph::empty(3);
        let p = tp(Tree::path(2).unwrap(), &[&[0, 2], &[1]]);
        let td = build_tree_decomposition(&g, &p, None).unwrap();
        let r = check_transform_guarantees(&g, &p, &td, Some(1), None).unwrap();
        assert_eq!((r.input_adhesion, r.output_adhesion), (0, 0));
        assert!(r.torso_profiles.iter().all(|p| p.c == 0 && p.max_degree == 0));
        assert!(r.hypothesis_met && r.holds());
    }

    #[test]
    fn hypothesis_failure_is_flagged() {
        let g = Graph::complete(4);
        let p = tp(Tree::path(2).unwrap(), &[&[0, 1], &[2, 3]]);
        let td = build_tree_decomposition(&g, &p, None).unwrap();
        let r = check_transform_guarantees(&g, &p, &td, Some(1), None).unwrap();
        assert!(!r.hypothesis_met);
        assert!(r.holds());
    }

    #[test]
    fn foreign_decomposition_is_rejected() {
        let g = Graph::cycle(4);
        let p = tp(Tree::path(2).unwrap(), &[&[0, 1], &[2, 3]]);
        let other = TreeDecomposition::new(Tree::path(2).unwrap(), vec![vec![0, 2], vec![1, 2, 3]]).unwrap();
        assert_eq!(
            check_transform_guarantees(&g, &p, &other, None, None),
            Err(TransformError::NotDerived { node: 0, vertex: 1 })
        );
    }

    #[test]
    fn invalid_input_errors() {
        let g = Graph::cycle(4);
        let bad = tp(Tree::path(2).unwrap(), &[&[0, 1], &[1, 2, 3]]);
        assert!(matches!(build_tree_decomposition(&g, &bad, None), Err(TransformError::InvalidPartition(_))));
        let good = tp(Tree::path(2).unwrap(), &[&[0, 1], &[2, 3]]);
        assert_eq!(build_tree_decomposition(&g, &good, Some(5)), Err(TransformError::UnknownRoot(5)));
    }

    #[test]
    fn lca_and_paths() {
        // 0 - 1 - 2, 1 - 3, 3 - 4
        let tree = Tree::new(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let o = OrientedTree::new(&tree, 0).unwrap();
        assert_eq!(o.lca(2, 4), 1);
        assert_eq!(o.lca(4, 3), 3);
        assert_eq!(o.path_up(4, 1).collect::<Vec<_>>(), vec![4, 3, 1]);
        assert_eq!(o.path_up(2, 2).collect::<Vec<_>>(), vec![2]);
        assert!(o.is_ancestor(1, 4) && !o.is_ancestor(2, 4));
        assert_eq!(o.child_towards(1, 4), 3);
    }
}
