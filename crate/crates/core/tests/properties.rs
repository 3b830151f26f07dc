use nonrep_core::containment::{check_witness, find_immersion, find_topological_minor};
use nonrep_core::decomp::{
    adhesion_td, split_view, torso_tp, validate_tree_decomposition, TPartition, Tree,
};
use nonrep_core::graph::{degree_profile, identify_vertices};
use nonrep_core::nonrep::{
    colour_path, exact_pi, find_repetition, is_nonrepetitive, thue_sequence, Colouring, PiOutcome,
};
use nonrep_core::strategies::{
    colour_bounded_degree, compose_colourings, resample_colouring, CompositionInput, StrategyOptions,
};
use nonrep_core::transform::{build_tree_decomposition, check_transform_guarantees};
use nonrep_core::{Graph, SearchOutcome, DEFAULT_BUDGET};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |mask| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if mask[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn coloured_graph(max_n: usize, k: usize) -> impl Strategy<Value = (Graph, Colouring)> {
    graph(max_n).prop_flat_map(move |g| {
        let n = g.n();
        proptest::collection::vec(0..k, n).prop_map(move |c| (g.clone(), Colouring::new(c, k).unwrap()))
    })
}

/// Tree on `nodes` nodes from parent choices, plus a home node per vertex.
fn partitioned(max_n: usize, max_nodes: usize) -> impl Strategy<Value = (Graph, TPartition)> {
    (graph(max_n), 1..=max_nodes).prop_flat_map(|(g, nodes)| {
        let parents: Vec<_> = (1..nodes).map(|x| 0..x).collect();
        let homes = proptest::collection::vec(0..nodes, g.n());
        (Just(g), parents, homes).prop_map(move |(g, parents, homes)| {
            let edges: Vec<_> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            let tree = Tree::new(nodes, edges).unwrap();
            (g.clone(), TPartition::from_homes(tree, &homes).unwrap())
        })
    })
}

/// Half-length of the shortest repetitively coloured path, by enumerating
/// every path.
fn naive_shortest_repetition(g: &Graph, col: &Colouring) -> Option<usize> {
    fn walk(g: &Graph, col: &Colouring, path: &mut Vec<usize>, best: &mut Option<usize>) {
        let len = path.len();
        if len.is_multiple_of(2) {
            let t = len / 2;
            if (0..t).all(|i| col.colour(path[i]) == col.colour(path[t + i])) {
                *best = Some(best.map_or(t, |b: usize| b.min(t)));
            }
        }
        let last = *path.last().unwrap();
        for &w in g.neighbours(last) {
            if !path.contains(&w) {
                path.push(w);
                walk(g, col, path, best);
                path.pop();
            }
        }
    }
    let mut best = None;
    for v in g.vertices() {
        walk(g, col, &mut vec![v], &mut best);
    }
    best
}

fn has_square(s: &[u8]) -> bool {
    (0..s.len()).any(|i| (1..=(s.len() - i) / 2).any(|l| s[i..i + l] == s[i + l..i + 2 * l]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn verifier_matches_path_enumeration((g, col) in coloured_graph(7, 3)) {
        let found = find_repetition(&g, &col, None).unwrap();
        prop_assert_eq!(found.as_ref().map(|w| w.half_length()), naive_shortest_repetition(&g, &col));
        if let Some(w) = found {
            prop_assert!(w.is_valid(&g, &col));
        }
    }

    #[test]
    fn bounded_verification_is_a_relaxation((g, col) in coloured_graph(7, 2), t in 1usize..4) {
        let bounded = find_repetition(&g, &col, Some(t)).unwrap();
        let exact = find_repetition(&g, &col, None).unwrap();
        match bounded {
            Some(w) => prop_assert_eq!(Some(w), exact),
            None => prop_assert!(exact.is_none_or(|w| w.half_length() > t)),
        }
    }

    #[test]
    fn identification_stays_simple(g in graph(8), mask in any::<u8>()) {
        let set: Vec<usize> = g.vertices().filter(|&v| mask >> v & 1 == 1).collect();
        prop_assume!(!set.is_empty());
        let id = identify_vertices(&g, &set, None).unwrap();
        prop_assert_eq!(id.graph.n(), g.n() - set.len() + 1);
        let rebuilt = Graph::from_edges(id.graph.n(), id.graph.edges().collect::<Vec<_>>());
        prop_assert!(rebuilt.is_ok());
        for (u, v) in g.edges() {
            let (a, b) = (id.relabel[u], id.relabel[v]);
            prop_assert!(a == b || id.graph.has_edge(a, b));
        }
        for (a, b) in id.graph.edges() {
            let has_preimage = g.edges().any(|(u, v)| {
                let (x, y) = (id.relabel[u], id.relabel[v]);
                (x, y) == (a, b) || (y, x) == (a, b)
            });
            prop_assert!(has_preimage);
        }
    }

    #[test]
    fn degree_profile_shrinks_with_threshold(g in graph(10), d in 0usize..6) {
        prop_assert!(degree_profile(&g, d + 1).c <= degree_profile(&g, d).c);
    }

    #[test]
    fn split_view_matches_brute_force((g, tp) in partitioned(9, 5)) {
        let homes = tp.homes(g.n());
        for (x, y) in tp.tree().edges() {
            let view = split_view(&g, &tp, x, y).unwrap();
            let near_nodes = tp.tree().reachable_avoiding(x, Some((x, y)));
            let near: Vec<usize> = g.vertices().filter(|&v| near_nodes[homes[v].unwrap()]).collect();
            let far: Vec<usize> = g.vertices().filter(|&v| !near_nodes[homes[v].unwrap()]).collect();
            let cross: Vec<(usize, usize)> =
                g.edges().filter(|&(u, v)| near.contains(&u) != near.contains(&v)).collect();
            prop_assert_eq!(&view.near, &near);
            prop_assert_eq!(&view.far, &far);
            prop_assert_eq!(&view.cross_edges, &cross);
        }
    }

    #[test]
    fn torso_keeps_bag_edges((g, tp) in partitioned(9, 5)) {
        for x in tp.tree().nodes() {
            let torso = torso_tp(&g, &tp, x).unwrap();
            let bag = tp.bag(x);
            prop_assert!(torso.graph.n() <= bag.len() + tp.tree().neighbours(x).len());
            for (i, &u) in bag.iter().enumerate() {
                for (j, &v) in bag.iter().enumerate() {
                    prop_assert_eq!(g.has_edge(u, v), torso.graph.has_edge(i, j));
                }
            }
        }
    }

    #[test]
    fn transform_guarantees_hold((g, tp) in partitioned(12, 6), root_pick in any::<usize>()) {
        let root = root_pick % tp.tree().node_count();
        let td = build_tree_decomposition(&g, &tp, Some(root)).unwrap();
        prop_assert!(validate_tree_decomposition(&g, &td).is_ok());
        let report = check_transform_guarantees(&g, &tp, &td, None, Some(root)).unwrap();
        prop_assert!(report.holds(), "{:?}", report.violations);
        prop_assert!(adhesion_td(&td) <= report.input_adhesion);
    }

    #[test]
    fn containment_hierarchy(g in graph(6), h in graph(4)) {
        let budget = 200_000;
        let tm = find_topological_minor(&g, &h, budget);
        let strong = find_immersion(&g, &h, true, budget);
        let weak = find_immersion(&g, &h, false, budget);
        for w in [&tm, &strong, &weak].into_iter().filter_map(|r| match r {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }) {
            prop_assert_eq!(check_witness(&g, &h, w), Ok(()));
        }
        if tm.is_found() {
            prop_assert!(!matches!(strong, SearchOutcome::Exhausted));
        }
        if strong.is_found() {
            prop_assert!(!matches!(weak, SearchOutcome::Exhausted));
        }
    }

    #[test]
    fn adding_edges_keeps_containment(g in graph(6), h in graph(4), pick in any::<usize>()) {
        let budget = 200_000;
        let non_edges: Vec<(usize, usize)> = g
            .vertices()
            .flat_map(|u| (u + 1..g.n()).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        prop_assume!(!non_edges.is_empty());
        let mut edges: Vec<_> = g.edges().collect();
        edges.push(non_edges[pick % non_edges.len()]);
        let bigger = Graph::from_edges(g.n(), edges).unwrap();
        if find_immersion(&g, &h, false, budget).is_found() {
            prop_assert!(!matches!(find_immersion(&bigger, &h, false, budget), SearchOutcome::Exhausted));
        }
        if find_topological_minor(&g, &h, budget).is_found() {
            prop_assert!(!matches!(find_topological_minor(&bigger, &h, budget), SearchOutcome::Exhausted));
        }
    }

    #[test]
    fn subgraphs_are_contained(g in graph(6), keep in any::<u8>()) {
        let edges: Vec<_> = g.edges().enumerate().filter(|(i, _)| keep >> (i % 8) & 1 == 1).map(|(_, e)| e).collect();
        let h = Graph::from_edges(g.n(), edges).unwrap();
        prop_assume!(h.n() <= 5);
        prop_assert!(find_topological_minor(&g, &h, DEFAULT_BUDGET).is_found());
        prop_assert!(find_immersion(&g, &h, true, DEFAULT_BUDGET).is_found());
        prop_assert!(find_immersion(&g, &h, false, DEFAULT_BUDGET).is_found());
    }

    #[test]
    fn pi_is_monotone_under_induced_subgraphs(g in graph(6), drop in 0usize..6) {
        prop_assume!(drop < g.n());
        let keep: Vec<usize> = g.vertices().filter(|&v| v != drop).collect();
        let sub = g.induced_subgraph(&keep);
        let pi = |g: &Graph| match exact_pi(g, None, DEFAULT_BUDGET) {
            PiOutcome::Exact { pi, .. } => pi,
            other => panic!("{other:?}"),
        };
        prop_assert!(pi(&sub) <= pi(&g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graphs_are_well_formed(n in 0usize..12, pairs in proptest::collection::vec((0usize..12, 0usize..12), 0..40)) {
        let edges: Vec<_> = pairs.into_iter().filter(|&(u, v)| u < n && v < n && u != v).collect();
        let g = Graph::from_edges_simplified(n, edges).unwrap();
        let degree_sum: usize = g.vertices().map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
        for v in g.vertices() {
            prop_assert!(g.neighbours(v).windows(2).all(|w| w[0] < w[1]));
            prop_assert!(!g.has_edge(v, v));
            for &w in g.neighbours(v) {
                prop_assert!(g.neighbours(w).contains(&v));
            }
        }
    }

    #[test]
    fn nonrepetitive_implies_proper((g, col) in coloured_graph(7, 4)) {
        if is_nonrepetitive(&g, &col).unwrap() {
            prop_assert!(col.is_proper(&g));
        }
    }

    #[test]
    fn witnesses_are_canonically_oriented((g, col) in coloured_graph(7, 2)) {
        if let Some(w) = find_repetition(&g, &col, None).unwrap() {
            let p = w.path();
            prop_assert!(p[0] < p[p.len() - 1]);
        }
    }

    #[test]
    fn pi_is_monotone_under_edge_deletion(g in graph(6), drop in any::<usize>()) {
        prop_assume!(g.edge_count() > 0);
        let edges: Vec<_> = g.edges().collect();
        let kept: Vec<_> = edges.iter().enumerate().filter(|&(i, _)| i != drop % edges.len()).map(|(_, &e)| e).collect();
        let sub = Graph::from_edges(g.n(), kept).unwrap();
        let pi = |g: &Graph| match exact_pi(g, None, DEFAULT_BUDGET) {
            PiOutcome::Exact { pi, .. } => pi,
            other => panic!("{other:?}"),
        };
        prop_assert!(pi(&sub) <= pi(&g));
    }

    #[test]
    fn bounded_degree_colouring_invariants(g in graph(10), d in 0usize..4, seed in any::<u64>()) {
        let opts = StrategyOptions { seed, ..StrategyOptions::default() };
        let out = colour_bounded_degree(&g, d, &opts).unwrap();
        let col = out.colouring.colours();
        prop_assert!(out.colouring.palette_size() <= out.palette_bound);
        for (i, &v) in out.private.iter().enumerate() {
            prop_assert!(g.degree(v) > d);
            prop_assert_eq!(col[v], i);
            prop_assert_eq!(col.iter().filter(|&&c| c == i).count(), 1);
        }
        prop_assert!(is_nonrepetitive(&g, &out.colouring).unwrap());
    }

    #[test]
    fn resampling_is_reproducible(g in graph(8), seed in any::<u64>()) {
        let opts = StrategyOptions { seed, ..StrategyOptions::default() };
        let k = 4 * g.max_degree().max(1).pow(2);
        prop_assert_eq!(resample_colouring(&g, k, &opts).unwrap(), resample_colouring(&g, k, &opts).unwrap());
    }

    #[test]
    fn composition_respects_bound((g, tp) in partitioned(10, 5)) {
        let td = build_tree_decomposition(&g, &tp, None).unwrap();
        let torso_cols: Vec<Colouring> = td
            .tree()
            .nodes()
            .map(|x| Colouring::from_colours((0..td.bag(x).len()).collect()))
            .collect();
        let input = CompositionInput::new(&g, td, torso_cols, None).unwrap();
        let out = compose_colourings(&g, &input, &StrategyOptions::default()).unwrap();
        prop_assert!(out.colouring.palette_size() <= input.palette_bound());
        prop_assert!(is_nonrepetitive(&g, &out.colouring).unwrap());
    }
}

#[test]
fn thue_prefixes_are_square_free() {
    for n in [0, 1, 2, 7, 50, 301] {
        let s = thue_sequence(n);
        assert_eq!(s.len(), n);
        assert!(!has_square(s.symbols()), "square in prefix of length {n}");
    }
}

#[test]
fn thue_colours_paths() {
    for n in 0..=40 {
        assert!(is_nonrepetitive(&Graph::path(n), &colour_path(n)).unwrap());
    }
}
