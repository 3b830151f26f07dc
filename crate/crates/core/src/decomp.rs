//! Tree decompositions and T-partitions.
//!
//! Both are families of vertex sets (bags) indexed by the nodes of a tree.
//! A tree decomposition covers every vertex and edge with bags such that the
//! bags containing a vertex form a subtree. A T-partition is a partition of
//! the vertex set; bags may be empty. The two structures come with different
//! notions of adhesion and torso.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Tree node id. A tree on `k` nodes has nodes `0..k`.
pub type Node = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a tree needs at least one node")]
    Empty,
    #[error("tree node {node} out of range for a tree on {nodes} nodes")]
    NodeOutOfRange { node: Node, nodes: usize },
    #[error("loop at tree node {0}")]
    Loop(Node),
    #[error("duplicate tree edge {0}-{1}")]
    DuplicateEdge(Node, Node),
    #[error("a tree on {nodes} nodes has {expected} edges, found {edges}")]
    EdgeCount { nodes: usize, edges: usize, expected: usize },
    #[error("tree is disconnected: node {0} is unreachable from node 0")]
    Disconnected(Node),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("tree has {nodes} nodes but {bags} bags were given")]
    BagCount { nodes: usize, bags: usize },
    #[error("unknown tree node {0}")]
    UnknownNode(Node),
    #[error("{0}-{1} is not a tree edge")]
    NotATreeEdge(Node, Node),
    #[error("bag of node {node} holds vertex {vertex}, which is not in the graph")]
    UnknownVertex { node: Node, vertex: Vertex },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<Node>>,
}

impl Tree {
    pub fn new<I>(nodes: usize, edges: I) -> Result<Self, TreeError>
    where
        I: IntoIterator<Item = (Node, Node)>,
    {
        if nodes == 0 {
            return Err(TreeError::Empty);
        }
        let mut adj = vec![Vec::new(); nodes];
        let mut count = 0;
        for (x, y) in edges {
            for z in [x, y] {
                if z >= nodes {
                    return Err(TreeError::NodeOutOfRange { node: z, nodes });
                }
            }
            if x == y {
                return Err(TreeError::Loop(x));
            }
            if adj[x].contains(&y) {
                return Err(TreeError::DuplicateEdge(x.min(y), x.max(y)));
            }
            adj[x].push(y);
            adj[y].push(x);
            count += 1;
        }
        if count != nodes - 1 {
            return Err(TreeError::EdgeCount {
                nodes,
                edges: count,
                expected: nodes - 1,
            });
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let tree = Tree { adj };
        let reach = tree.reachable_avoiding(0, None);
        if let Some(z) = reach.iter().position(|&r| !r) {
            return Err(TreeError::Disconnected(z));
        }
        Ok(tree)
    }

    /// The tree with a single node.
    pub fn single() -> Self {
        Tree { adj: vec![Vec::new()] }
    }

    /// The path `0 - 1 - ... - (nodes-1)`.
    pub fn path(nodes: usize) -> Result<Self, TreeError> {
        Self::new(nodes, (1..nodes).map(|i| (i - 1, i)))
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn nodes(&self) -> core::ops::Range<Node> {
        0..self.adj.len()
    }

    pub fn neighbours(&self, x: Node) -> &[Node] {
        &self.adj[x]
    }

    pub fn has_edge(&self, x: Node, y: Node) -> bool {
        x < self.adj.len() && self.adj[x].binary_search(&y).is_ok()
    }

    /// Tree edges as `(x, y)` with `x < y`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Node, Node)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(x, list)| list.iter().filter(move |&&y| x < y).map(move |&y| (x, y)))
    }

    /// Nodes reachable from `from` without crossing the edge `blocked`.
    /// With `blocked = Some((x, y))` and `from = x` this is the component
    /// `T(xy)` of `T - xy` containing `x`.
    pub fn reachable_avoiding(&self, from: Node, blocked: Option<(Node, Node)>) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(z) = stack.pop() {
            for &w in &self.adj[z] {
                let crosses = blocked.is_some_and(|(x, y)| (z, w) == (x, y) || (z, w) == (y, x));
                if !crosses && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Contracts the edge `xy`. Returns the new tree and, for every old
    /// node, its new id. The merged node takes the smaller of the two ids
    /// and the other nodes keep their relative order.
    pub fn contract(&self, x: Node, y: Node) -> Result<(Tree, Vec<Node>), DecompError> {
        if !self.has_edge(x, y) {
            return Err(DecompError::NotATreeEdge(x, y));
        }
        let (keep, gone) = (x.min(y), x.max(y));
        let map: Vec<Node> = self
            .nodes()
            .map(|z| match z {
                z if z == gone => keep,
                z if z > gone => z - 1,
                z => z,
            })
            .collect();
        let edges: Vec<(Node, Node)> = self
            .edges()
            .filter(|&(a, b)| (a, b) != (keep, gone))
            .map(|(a, b)| (map[a], map[b]))
            .collect();
        Ok((Tree::new(self.node_count() - 1, edges)?, map))
    }
}

fn normalise_bags(tree: &Tree, bags: Vec<Vec<Vertex>>) -> Result<Vec<Vec<Vertex>>, DecompError> {
    if bags.len() != tree.node_count() {
        return Err(DecompError::BagCount {
            nodes: tree.node_count(),
            bags: bags.len(),
        });
    }
    Ok(bags
        .into_iter()
        .map(|mut bag| {
            bag.sort_unstable();
            bag.dedup();
            bag
        })
        .collect())
}

fn sorted_intersection_len(a: &[Vertex], b: &[Vertex]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

fn check_bag_vertices(g: &Graph, bags: &[Vec<Vertex>]) -> Result<(), DecompError> {
    for (node, bag) in bags.iter().enumerate() {
        if let Some(&vertex) = bag.iter().find(|&&v| v >= g.n()) {
            return Err(DecompError::UnknownVertex { node, vertex });
        }
    }
    Ok(())
}

/// A vertex of a torso: either an original graph vertex or, for T-partition
/// torsos, the vertex a whole far side `G(T, yx)` was collapsed into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TorsoVertex {
    Vertex(Vertex),
    /// The far side behind the tree neighbour `y`.
    Side(Node),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Torso {
    pub graph: Graph,
    /// What each torso vertex stands for.
    pub labels: Vec<TorsoVertex>,
}

// ---------------------------------------------------------------------------
// tree decompositions

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeDecomposition {
    tree: Tree,
    bags: Vec<Vec<Vertex>>,
}

/// A violated tree-decomposition condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TdViolation {
    UnknownVertex { node: Node, vertex: Vertex },
    VertexUncovered(Vertex),
    /// The bags containing the vertex do not induce a subtree.
    VertexDisconnected(Vertex),
    EdgeUncovered(Vertex, Vertex),
}

impl TreeDecomposition {
    /// Bags are sorted and deduplicated; one bag per tree node.
    pub fn new(tree: Tree, bags: Vec<Vec<Vertex>>) -> Result<Self, DecompError> {
        let bags = normalise_bags(&tree, bags)?;
        Ok(TreeDecomposition { tree, bags })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn bag(&self, x: Node) -> &[Vertex] {
        &self.bags[x]
    }

    /// For each vertex `0..n`, the nodes whose bags contain it.
    pub fn occurrences(&self, n: usize) -> Vec<Vec<Node>> {
        let mut occ = vec![Vec::new(); n];
        for (x, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v < n {
                    occ[v].push(x);
                }
            }
        }
        occ
    }
}

/// Checks every tree-decomposition condition and reports all violations.
pub fn validate_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<(), Vec<TdViolation>> {
    let mut violations = Vec::new();
    for (node, bag) in td.bags.iter().enumerate() {
        for &vertex in bag.iter().filter(|&&v| v >= g.n()) {
            violations.push(TdViolation::UnknownVertex { node, vertex });
        }
    }
    let occ = td.occurrences(g.n());
    let mut holds = vec![false; td.tree.node_count()];
    for v in g.vertices() {
        if occ[v].is_empty() {
            violations.push(TdViolation::VertexUncovered(v));
            continue;
        }
        // a subgraph of a tree is connected iff it has one edge fewer than nodes
        occ[v].iter().for_each(|&x| holds[x] = true);
        let inner_edges = td.tree.edges().filter(|&(x, y)| holds[x] && holds[y]).count();
        occ[v].iter().for_each(|&x| holds[x] = false);
        if inner_edges + 1 != occ[v].len() {
            violations.push(TdViolation::VertexDisconnected(v));
        }
    }
    for (u, v) in g.edges() {
        let covered = occ[u].iter().any(|x| td.bags[*x].binary_search(&v).is_ok());
        if !covered {
            violations.push(TdViolation::EdgeUncovered(u, v));
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Largest bag size minus one; `-1` when every bag is empty.
pub fn width(td: &TreeDecomposition) -> isize {
    td.bags.iter().map(|b| b.len() as isize).max().unwrap_or(0) - 1
}

/// Largest `|T_x ∩ T_y|` over tree edges `xy`; 0 for a single node.
pub fn adhesion_td(td: &TreeDecomposition) -> usize {
    td.tree
        .edges()
        .map(|(x, y)| sorted_intersection_len(&td.bags[x], &td.bags[y]))
        .max()
        .unwrap_or(0)
}

/// The graph induced by `T_x` plus a clique on `T_x ∩ T_y` for every tree
/// neighbour `y`. Torso vertex `i` is the `i`-th smallest vertex of `T_x`.
pub fn torso_td(g: &Graph, td: &TreeDecomposition, x: Node) -> Result<Torso, DecompError> {
    if x >= td.tree.node_count() {
        return Err(DecompError::UnknownNode(x));
    }
    check_bag_vertices(g, &td.bags)?;
    let bag = &td.bags[x];
    let index = |v: Vertex| bag.binary_search(&v).ok();
    let mut edges: Vec<(Vertex, Vertex)> = g.induced_subgraph(bag).edges().collect();
    for &y in td.tree.neighbours(x) {
        let shared: Vec<usize> = td.bags[y].iter().filter_map(|&v| index(v)).collect();
        for (i, &a) in shared.iter().enumerate() {
            edges.extend(shared[i + 1..].iter().map(|&b| (a, b)));
        }
    }
    Ok(Torso {
        graph: Graph::from_edges_simplified(bag.len(), edges).expect("torso endpoints are bag indices"),
        labels: bag.iter().map(|&v| TorsoVertex::Vertex(v)).collect(),
    })
}

// ---------------------------------------------------------------------------
// T-partitions

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TPartition {
    tree: Tree,
    bags: Vec<Vec<Vertex>>,
}

/// A violated T-partition condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TpViolation {
    UnknownVertex { node: Node, vertex: Vertex },
    /// The vertex lies in more than one bag.
    Duplicated { vertex: Vertex, nodes: Vec<Node> },
    Missing(Vertex),
}

impl TPartition {
    pub fn new(tree: Tree, bags: Vec<Vec<Vertex>>) -> Result<Self, DecompError> {
        let bags = normalise_bags(&tree, bags)?;
        Ok(TPartition { tree, bags })
    }

    /// Builds the partition from each vertex's bag.
    pub fn from_homes(tree: Tree, home: &[Node]) -> Result<Self, DecompError> {
        let mut bags = vec![Vec::new(); tree.node_count()];
        for (v, &x) in home.iter().enumerate() {
            bags.get_mut(x).ok_or(DecompError::UnknownNode(x))?.push(v);
        }
        Self::new(tree, bags)
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn bag(&self, x: Node) -> &[Vertex] {
        &self.bags[x]
    }

    /// The bag holding each vertex `0..n` (the first one if it is duplicated).
    pub fn homes(&self, n: usize) -> Vec<Option<Node>> {
        let mut home = vec![None; n];
        for (x, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v < n && home[v].is_none() {
                    home[v] = Some(x);
                }
            }
        }
        home
    }

    /// `side[z]` is true iff node `z` is in `T(xy)`, the component of
    /// `T - xy` containing `x`.
    fn side(&self, x: Node, y: Node) -> Result<Vec<bool>, DecompError> {
        if x >= self.tree.node_count() {
            return Err(DecompError::UnknownNode(x));
        }
        if !self.tree.has_edge(x, y) {
            return Err(DecompError::NotATreeEdge(x, y));
        }
        Ok(self.tree.reachable_avoiding(x, Some((x, y))))
    }
}

/// Checks that the bags partition `V(G)`. Empty bags are allowed.
pub fn validate_tpartition(g: &Graph, tp: &TPartition) -> Result<(), Vec<TpViolation>> {
    let mut violations = Vec::new();
    let mut holders = vec![Vec::new(); g.n()];
    for (node, bag) in tp.bags.iter().enumerate() {
        for &vertex in bag {
            match holders.get_mut(vertex) {
                Some(list) => list.push(node),
                None => violations.push(TpViolation::UnknownVertex { node, vertex }),
            }
        }
    }
    for (vertex, nodes) in holders.into_iter().enumerate() {
        match nodes.len() {
            0 => violations.push(TpViolation::Missing(vertex)),
            1 => {}
            _ => violations.push(TpViolation::Duplicated { vertex, nodes }),
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// The two vertex sides of a tree edge `xy` and the edges between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitView {
    /// `G(T, xy)`: vertices in bags on `x`'s side.
    pub near: Vec<Vertex>,
    /// `G(T, yx)`: vertices in bags on `y`'s side.
    pub far: Vec<Vertex>,
    /// `E(T, xy)` as `(u, v)` with `u < v`, sorted.
    pub cross_edges: Vec<(Vertex, Vertex)>,
}

pub fn split_view(g: &Graph, tp: &TPartition, x: Node, y: Node) -> Result<SplitView, DecompError> {
    check_bag_vertices(g, &tp.bags)?;
    let side = tp.side(x, y)?;
    let mut on_near = vec![false; g.n()];
    let (mut near, mut far) = (Vec::new(), Vec::new());
    for (z, bag) in tp.bags.iter().enumerate() {
        for &v in bag {
            if side[z] {
                on_near[v] = true;
                near.push(v);
            } else {
                far.push(v);
            }
        }
    }
    near.sort_unstable();
    far.sort_unstable();
    let cross_edges = g.edges().filter(|&(u, v)| on_near[u] != on_near[v]).collect();
    Ok(SplitView { near, far, cross_edges })
}

/// Largest `|E(T, xy)|` over tree edges; 0 for a single node.
pub fn adhesion_tp(g: &Graph, tp: &TPartition) -> Result<usize, DecompError> {
    let mut best = 0;
    for (x, y) in tp.tree.edges() {
        best = best.max(split_view(g, tp, x, y)?.cross_edges.len());
    }
    Ok(best)
}

/// The graph obtained from `G` by collapsing, for every tree neighbour `y`
/// of `x`, the far side `G(T, yx)` into a single vertex. Torso vertices are
/// the vertices of `T_x` in increasing order, then one vertex per nonempty
/// far side in increasing order of `y`.
pub fn torso_tp(g: &Graph, tp: &TPartition, x: Node) -> Result<Torso, DecompError> {
    if x >= tp.tree.node_count() {
        return Err(DecompError::UnknownNode(x));
    }
    check_bag_vertices(g, &tp.bags)?;
    let mut class: Vec<Option<Vertex>> = vec![None; g.n()];
    let mut labels: Vec<TorsoVertex> = Vec::new();
    for &v in &tp.bags[x] {
        class[v] = Some(labels.len());
        labels.push(TorsoVertex::Vertex(v));
    }
    for &y in tp.tree.neighbours(x) {
        let far = tp.tree.reachable_avoiding(y, Some((x, y)));
        let members: Vec<Vertex> = tp
            .tree
            .nodes()
            .filter(|&z| far[z])
            .flat_map(|z| tp.bags[z].iter().copied())
            .collect();
        if members.is_empty() {
            continue;
        }
        for v in members {
            class[v] = Some(labels.len());
        }
        labels.push(TorsoVertex::Side(y));
    }
    let graph = g.quotient(&class, labels.len()).expect("classes are torso indices");
    Ok(Torso { graph, labels })
}
