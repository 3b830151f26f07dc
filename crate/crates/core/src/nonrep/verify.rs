use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{Colour, Colouring, ColouringError, RepetitionWitness};
use crate::graph::{Graph, Vertex};

/// Marks a vertex that is not coloured yet; such vertices lie on no path.
pub(crate) const UNCOLOURED: Colour = Colour::MAX;

/// Graphs up to this order get an all-pairs distance table for pruning.
const DISTANCE_TABLE_LIMIT: usize = 2048;

/// Finds the canonical repetitively coloured path, if any.
///
/// With `max_half = None` every half-length is considered and `None`
/// certifies the colouring nonrepetitive. Otherwise only paths of order at
/// most `2 * max_half` are examined.
///
/// The returned witness is the least one by half-length, then by vertex
/// sequence, where each path is read from whichever endpoint has the smaller id.
pub fn find_repetition(
    g: &Graph,
    col: &Colouring,
    max_half: Option<usize>,
) -> Result<Option<RepetitionWitness>, ColouringError> {
    Verifier::new(g).find_repetition(col, max_half)
}

pub fn is_nonrepetitive(g: &Graph, col: &Colouring) -> Result<bool, ColouringError> {
    Ok(find_repetition(g, col, None)?.is_none())
}

/// Repetition finder bound to one graph, for checking many colourings.
///
/// A repetitive path `(v1..vt, v(t+1)..v2t)` is grown as two walks in
/// lockstep, `v1, v2, ..` and `v(t+1), v(t+2), ..`, whose i-th vertices share
/// a colour; it closes when `vt` is adjacent to `v(t+1)`. Half-lengths are
/// tried in increasing order. For a fixed `t`, the first walk must stay
/// within distance `t - i + 1` of `v(t+1)` at step `i`, which the distance
/// table checks.
#[derive(Debug, Clone)]
pub struct Verifier<'g> {
    g: &'g Graph,
    table: Option<Table>,
    used: Vec<bool>,
    first: Vec<Vertex>,
    second: Vec<Vertex>,
}

impl<'g> Verifier<'g> {
    pub fn new(g: &'g Graph) -> Self {
        let n = g.n();
        let table = (n <= DISTANCE_TABLE_LIMIT).then(|| Table::new(g));
        Verifier {
            g,
            table,
            used: vec![false; n],
            first: Vec::new(),
            second: Vec::new(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    /// Same contract as the free function [`find_repetition`].
    pub fn find_repetition(
        &mut self,
        col: &Colouring,
        max_half: Option<usize>,
    ) -> Result<Option<RepetitionWitness>, ColouringError> {
        col.check_total(self.g)?;
        Ok(self.find_partial(col.colours(), max_half, None, false).map(RepetitionWitness::new))
    }

    /// Search over a possibly partial colouring (`UNCOLOURED` entries).
    ///
    /// When `through` is set only paths containing that vertex are reported.
    /// With `any` the first repetition of the least half-length is returned
    /// instead of the canonical one.
    pub(crate) fn find_partial(
        &mut self,
        colours: &[Colour],
        max_half: Option<usize>,
        through: Option<Vertex>,
        any: bool,
    ) -> Option<Vec<Vertex>> {
        let n = self.g.n();
        let limit = max_half.unwrap_or(n / 2).min(n / 2);

        let table = self.table.as_ref();
        // without a table, fall back to all same-coloured ordered pairs
        let mut pairs: Vec<(Vertex, Vertex)> = Vec::new();
        if table.is_none() {
            let mut by_colour: Vec<(Colour, Vertex)> = (0..n)
                .filter(|&v| colours[v] != UNCOLOURED)
                .map(|v| (colours[v], v))
                .collect();
            by_colour.sort_unstable();
            for class in by_colour.chunk_by(|a, b| a.0 == b.0) {
                for &(_, a) in class {
                    pairs.extend(class.iter().filter(|&&(_, b)| b != a).map(|&(_, b)| (a, b)));
                }
            }
        }

        for t in 1..=limit {
            let mut walk = PairWalk {
                g: self.g,
                table,
                colours,
                through,
                any,
                t,
                used: &mut self.used,
                first: &mut self.first,
                second: &mut self.second,
                best: None,
            };
            match table {
                Some(tab) => 'outer: for a in 0..n {
                    let c = colours[a];
                    if c == UNCOLOURED {
                        continue;
                    }
                    for &b in tab.ball(a, t) {
                        let b = b as Vertex;
                        if colours[b] != c {
                            continue;
                        }
                        walk.start(a, b);
                        if any && walk.best.is_some() {
                            break 'outer;
                        }
                    }
                },
                None => {
                    for &(a, b) in &pairs {
                        walk.start(a, b);
                        if any && walk.best.is_some() {
                            break;
                        }
                    }
                }
            }
            if let Some(best) = walk.best {
                return Some(best);
            }
        }
        None
    }
}

/// All-pairs distances plus, for each vertex, the other vertices sorted by
/// distance so that a ball of any radius is a prefix.
#[derive(Debug, Clone)]
struct Table {
    n: usize,
    dist: Vec<u32>,
    order: Vec<u32>,
    // ball_end[a][r] = number of vertices at distance 1..=r from a
    ball_end: Vec<Vec<u32>>,
}

impl Table {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut dist = vec![u32::MAX; n * n];
        let mut order = Vec::with_capacity(n * n);
        let mut ball_end = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            row[s] = 0;
            queue.push_back(s);
            let base = order.len();
            let mut ends = vec![0u32];
            while let Some(u) = queue.pop_front() {
                if u != s {
                    let d = row[u] as usize;
                    while ends.len() <= d {
                        ends.push(*ends.last().expect("nonempty"));
                    }
                    ends[d] += 1;
                    order.push(u as u32);
                }
                for &w in g.neighbours(u) {
                    if row[w] == u32::MAX {
                        row[w] = row[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            order.resize(base + n, u32::MAX);
            ball_end.push(ends);
        }
        Table { n, dist, order, ball_end }
    }

    fn dist(&self, a: Vertex, b: Vertex) -> usize {
        self.dist[a * self.n + b] as usize
    }

    fn ball(&self, a: Vertex, r: usize) -> &[u32] {
        let ends = &self.ball_end[a];
        let len = ends[r.min(ends.len() - 1)] as usize;
        &self.order[a * self.n..a * self.n + len]
    }
}

struct PairWalk<'a> {
    g: &'a Graph,
    table: Option<&'a Table>,
    colours: &'a [Colour],
    through: Option<Vertex>,
    any: bool,
    t: usize,
    used: &'a mut Vec<bool>,
    first: &'a mut Vec<Vertex>,
    second: &'a mut Vec<Vertex>,
    best: Option<Vec<Vertex>>,
}

impl PairWalk<'_> {
    fn distance(&self, a: Vertex, b: Vertex) -> usize {
        self.table.map_or(0, |tab| tab.dist(a, b))
    }

    fn start(&mut self, a: Vertex, b: Vertex) {
        self.push(a, b);
        self.extend();
        self.pop();
    }

    fn push(&mut self, a: Vertex, b: Vertex) {
        self.used[a] = true;
        self.used[b] = true;
        self.first.push(a);
        self.second.push(b);
    }

    fn pop(&mut self) {
        let a = self.first.pop().expect("nonempty walk");
        let b = self.second.pop().expect("nonempty walk");
        self.used[a] = false;
        self.used[b] = false;
    }

    fn extend(&mut self) {
        let depth = self.first.len();
        let tail = *self.first.last().expect("nonempty walk");
        let target = self.second[0];
        if depth == self.t {
            if self.g.has_edge(tail, target) {
                self.record();
            }
            return;
        }
        let head = *self.second.last().expect("nonempty walk");
        let g = self.g;
        for &a in g.neighbours(tail) {
            if self.used[a] || self.colours[a] == UNCOLOURED || self.distance(a, target) > self.t - depth {
                continue;
            }
            for &b in g.neighbours(head) {
                if b == a || self.used[b] || self.colours[b] != self.colours[a] {
                    continue;
                }
                self.push(a, b);
                self.extend();
                self.pop();
                if self.any && self.best.is_some() {
                    return;
                }
            }
        }
    }

    fn record(&mut self) {
        if let Some(v) = self.through {
            if !self.used[v] {
                return;
            }
        }
        let mut path: Vec<Vertex> = self.first.iter().chain(self.second.iter()).copied().collect();
        if path[0] > path[path.len() - 1] {
            path.reverse();
        }
        if self.best.as_ref().is_none_or(|best| path < *best) {
            self.best = Some(path);
        }
    }
}
