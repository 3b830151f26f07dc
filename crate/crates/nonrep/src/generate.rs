//! Random instances for tests and experiments. All generators are driven by
//! a caller-supplied RNG, so a fixed seed gives a fixed instance.

use nonrep_core::decomp::{TPartition, Tree};
use nonrep_core::transform::partition_hypothesis;
use nonrep_core::{Graph, Vertex};
use rand::seq::SliceRandom;
use rand::Rng;

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("distinct pairs")
}

/// Random recursive tree: node `i > 0` attaches to a uniform earlier node.
pub fn random_tree<R: Rng + ?Sized>(nodes: usize, rng: &mut R) -> Tree {
    let nodes = nodes.max(1);
    let edges: Vec<_> = (1..nodes).map(|i| (rng.gen_range(0..i), i)).collect();
    Tree::new(nodes, edges).expect("attachment gives a tree")
}

/// A random tree as a graph on `n` vertices.
pub fn random_tree_graph<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    Graph::from_edges(n, edges).expect("attachment gives a tree")
}

/// A T-partition of `g` over a random tree, each vertex in a uniform bag.
pub fn random_partition<R: Rng + ?Sized>(g: &Graph, nodes: usize, rng: &mut R) -> TPartition {
    let tree = random_tree(nodes, rng);
    let homes: Vec<_> = g.vertices().map(|_| rng.gen_range(0..tree.node_count())).collect();
    TPartition::from_homes(tree, &homes).expect("homes are tree nodes")
}

/// Random `d`-regular graph by the pairing model, retrying until simple.
/// Returns `None` if `n * d` is odd or no simple pairing turned up.
pub fn random_regular<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Option<Graph> {
    if (n * d) % 2 == 1 || d >= n.max(1) {
        return None;
    }
    let mut points: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    for _ in 0..10_000 {
        points.shuffle(rng);
        let edges: Vec<_> = points.chunks(2).map(|p| (p[0], p[1])).collect();
        if let Ok(g) = Graph::from_edges(n, edges) {
            return Some(g);
        }
    }
    None
}

/// A graph whose non-hub vertices have degree at most `d`, plus `hubs`
/// vertices joined to many of them. Hubs are the last `hubs` vertices.
pub fn planted_high_degree<R: Rng + ?Sized>(n: usize, d: usize, hubs: usize, rng: &mut R) -> Graph {
    let hubs = hubs.min(n);
    let low = n - hubs;
    let mut degree = vec![0usize; n];
    let mut edges = Vec::new();
    for h in low..n {
        for v in 0..low {
            if degree[v] < d && rng.gen_bool(0.5) {
                edges.push((v, h));
                degree[v] += 1;
                degree[h] += 1;
            }
        }
    }
    let mut pairs: Vec<(Vertex, Vertex)> = (0..low).flat_map(|u| (u + 1..low).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    for (u, v) in pairs {
        if degree[u] < d && degree[v] < d && rng.gen_bool(0.5) {
            edges.push((u, v));
            degree[u] += 1;
            degree[v] += 1;
        }
    }
    for h in low..n {
        for h2 in h + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((h, h2));
            }
        }
    }
    Graph::from_edges(n, edges).expect("each pair added once")
}

/// A graph with a T-partition meeting the transform hypothesis: adhesion at
/// most `t²` and every torso `(t, t²)`-bounded. Cross edges only join bags
/// that are adjacent in the tree, at most `t²` per tree edge, and each bag
/// may contain one hub adjacent to the rest of its bag. At most `max_n`
/// vertices.
pub fn hypothesis_instance<R: Rng + ?Sized>(t: usize, max_n: usize, rng: &mut R) -> (Graph, TPartition) {
    let t2 = t * t;
    loop {
        let nodes = rng.gen_range(1..=6);
        let tree = random_tree(nodes, rng);
        let mut homes = Vec::new();
        let mut bags: Vec<Vec<Vertex>> = Vec::new();
        for x in tree.nodes() {
            let size = rng.gen_range(0..=t2.min(4) + 1);
            let bag: Vec<Vertex> = (homes.len()..homes.len() + size).collect();
            homes.extend(std::iter::repeat_n(x, size));
            bags.push(bag);
        }
        let n = homes.len();
        if n > max_n {
            continue;
        }
        let mut edges = Vec::new();
        for bag in &bags {
            let hub = rng.gen_bool(0.5);
            for (i, &u) in bag.iter().enumerate() {
                for &v in &bag[i + 1..] {
                    if (hub && i == 0) || rng.gen_bool(0.3) {
                        edges.push((u, v));
                    }
                }
            }
        }
        for (x, y) in tree.edges() {
            if bags[x].is_empty() || bags[y].is_empty() {
                continue;
            }
            let mut cross = Vec::new();
            for _ in 0..rng.gen_range(0..=t2) {
                let u = *bags[x].choose(rng).expect("nonempty");
                let v = *bags[y].choose(rng).expect("nonempty");
                cross.push((u.min(v), u.max(v)));
            }
            cross.sort_unstable();
            cross.dedup();
            edges.extend(cross);
        }
        let g = Graph::from_edges(n, edges).expect("pairs are distinct");
        let tp = TPartition::from_homes(tree, &homes).expect("homes are tree nodes");
        if partition_hypothesis(&g, &tp, t).expect("generated partition is valid") {
            return (g, tp);
        }
    }
}
