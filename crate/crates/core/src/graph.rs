//! Simple undirected graphs over dense vertex ids `0..n`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

/// Vertex id. Vertices of a graph on `n` vertices are `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("loop edge at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex set to identify is empty")]
    EmptyIdentification,
    #[error("label {label} out of range for the identified graph on {n} vertices")]
    LabelOutOfRange { label: Vertex, n: usize },
}

/// An immutable simple graph. Neighbour lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints. `(u, v)` and `(v, u)` count as duplicates.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            adj,
            edge_count: seen.len(),
        })
    }

    /// Like [`Graph::from_edges`] but silently drops loops and parallel edges.
    /// Endpoints must still be in range.
    pub fn from_edges_simplified<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u != v {
                set.insert((u.min(v), u.max(v)));
            }
        }
        Self::from_edges(n, set)
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are simple")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).expect("complete graph edges are simple")
    }

    /// The star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges are simple")
    }

    /// Replaces every edge by a path with `k` new internal vertices.
    /// New vertices are numbered after the originals, edge by edge in
    /// [`Graph::edges`] order.
    pub fn subdivide(&self, k: usize) -> Self {
        let mut next = self.n();
        let mut edges = Vec::new();
        for (u, v) in self.edges() {
            let mut prev = u;
            for _ in 0..k {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            edges.push((prev, v));
        }
        Self::from_edges(next, edges).expect("subdivision is simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> core::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// The subgraph induced by `keep`, relabelled so that `keep[i]` becomes `i`.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = keep.iter().enumerate().flat_map(|(i, &v)| {
            let index = &index;
            self.adj[v]
                .iter()
                .filter(move |&&w| index[w] != usize::MAX && i < index[w])
                .map(move |&w| (i, index[w]))
        });
        Graph::from_edges(keep.len(), edges.collect::<Vec<_>>()).expect("induced subgraph is simple")
    }

    /// The simple quotient graph under `class`: vertex `v` maps to
    /// `class[v]` (or is dropped when `None`). Loops and parallel edges
    /// created by merging are removed.
    pub fn quotient(&self, class: &[Option<Vertex>], n_out: usize) -> Result<Graph, GraphError> {
        let edges = self
            .edges()
            .filter_map(|(u, v)| Some((class[u]?, class[v]?)));
        Graph::from_edges_simplified(n_out, edges.collect::<Vec<_>>())
    }
}

/// How many vertices exceed a degree threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DegreeProfile {
    /// Number of vertices with degree strictly greater than `d`.
    pub c: usize,
    pub d: usize,
    pub max_degree: usize,
}

impl DegreeProfile {
    /// Whether the graph has `(c, d)`-bounded degree.
    pub fn is_bounded(&self, c: usize) -> bool {
        self.c <= c
    }
}

pub fn degree_profile(g: &Graph, d: usize) -> DegreeProfile {
    DegreeProfile {
        c: g.vertices().filter(|&v| g.degree(v) > d).count(),
        d,
        max_degree: g.max_degree(),
    }
}

/// Result of collapsing a vertex set into one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identification {
    pub graph: Graph,
    /// New id of every original vertex; members of the set all map to `merged`.
    pub relabel: Vec<Vertex>,
    pub merged: Vertex,
}

/// Collapses `set` into a single vertex.
///
/// Without a label the merged vertex takes the place of the smallest member
/// of `set` and the remaining vertices keep their relative order. With a
/// label the merged vertex gets exactly that id and the other vertices fill
/// the remaining ids in ascending order.
pub fn identify_vertices(
    g: &Graph,
    set: &[Vertex],
    label: Option<Vertex>,
) -> Result<Identification, GraphError> {
    let n = g.n();
    let mut member = vec![false; n];
    for &v in set {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        member[v] = true;
    }
    let Some(&smallest) = set.iter().min() else {
        return Err(GraphError::EmptyIdentification);
    };
    let n_out = n - member.iter().filter(|&&m| m).count() + 1;

    // order of the output vertices, with `None` standing for the merged one
    let mut order: Vec<Option<Vertex>> = (0..n)
        .filter(|&v| !member[v] || v == smallest)
        .map(|v| (v != smallest).then_some(v))
        .collect();
    if let Some(label) = label {
        if label >= n_out {
            return Err(GraphError::LabelOutOfRange { label, n: n_out });
        }
        order.retain(Option::is_some);
        order.insert(label, None);
    }

    let merged = order.iter().position(Option::is_none).expect("merged vertex present");
    let mut relabel = vec![merged; n];
    for (i, v) in order.iter().enumerate() {
        if let Some(v) = v {
            relabel[*v] = i;
        }
    }
    let class: Vec<Option<Vertex>> = relabel.iter().copied().map(Some).collect();
    Ok(Identification {
        graph: g.quotient(&class, n_out)?,
        relabel,
        merged,
    })
}
