//! Colouring constructions.
//!
//! - [`resample_colouring`]: colour at random, then repeatedly recolour the
//!   vertices of a repetitively coloured path until none is left
//! - [`colour_bounded_degree`]: private colours for the few high-degree
//!   vertices, resampling for the rest
//! - [`compose_colourings`]: combine torso colourings over a tree
//!   decomposition into a colouring of the whole graph
//! - [`immersion_pipeline`]: T-partition → tree decomposition → torso
//!   colourings → composition
//!
//! Every colouring returned here has been checked by the verifier in the
//! requested [`VerifyMode`].

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::decomp::{
    adhesion_td, torso_td, validate_tree_decomposition, DecompError, Node, TPartition, TdViolation,
    TreeDecomposition,
};
use crate::graph::{Graph, Vertex};
use crate::nonrep::{
    colour_with_palette, find_repetition, thue_sequence, Colour, Colouring, ColouringError,
    RepetitionWitness, Verifier, VerifyMode,
};
use crate::transform::{
    build_tree_decomposition, check_transform_guarantees, torso_degree_bound, OrientedTree,
    TransformError, TransformReport,
};
use crate::{SearchOutcome, DEFAULT_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("invalid options: {0}")]
    InvalidOptions(&'static str),
    #[error("a palette of size {palette} cannot colour a graph with {n} vertices")]
    EmptyPalette { palette: usize, n: usize },
    #[error("no nonrepetitive colouring with {palette} colours exists")]
    Unsatisfiable { palette: usize },
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("produced colouring failed verification")]
    Verification(RepetitionWitness),
    #[error("invalid tree decomposition: {0:?}")]
    InvalidDecomposition(Vec<TdViolation>),
    #[error("colouring of the torso at node {node} is not nonrepetitive on it")]
    InvalidTorsoColouring { node: Node },
    #[error(transparent)]
    Colouring(#[from] ColouringError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrategyOptions {
    pub seed: u64,
    /// Maximum number of resampling rounds.
    pub resample_cap: u64,
    /// The degree-based palette is `palette_factor * d²`.
    pub palette_factor: usize,
    pub verify: VerifyMode,
    /// Node budget for fallback exhaustive searches.
    pub budget: u64,
}

impl Default for StrategyOptions {
    fn default() -> Self {
        StrategyOptions {
            seed: 0,
            resample_cap: 100_000,
            palette_factor: 4,
            verify: VerifyMode::Exact,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl StrategyOptions {
    fn validate(&self) -> Result<(), StrategyError> {
        if self.resample_cap == 0 {
            return Err(StrategyError::InvalidOptions("resample_cap must be at least 1"));
        }
        if self.palette_factor == 0 {
            return Err(StrategyError::InvalidOptions("palette_factor must be at least 1"));
        }
        Ok(())
    }

    fn with_seed(&self, seed: u64) -> Self {
        StrategyOptions { seed, ..*self }
    }
}

/// Independent seed for a sub-problem keyed by `key`.
pub fn derive_seed(seed: u64, key: u64) -> u64 {
    fn splitmix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    splitmix(seed ^ splitmix(key))
}

/// Checks a colouring in the given mode.
pub fn verify(g: &Graph, col: &Colouring, mode: VerifyMode) -> Result<(), StrategyError> {
    match find_repetition(g, col, mode.t_max())? {
        None => Ok(()),
        Some(w) => Err(StrategyError::Verification(w)),
    }
}

/// How a strategy arrived at its colouring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Nothing needed colouring beyond forced choices.
    Trivial,
    Resampled { rounds: u64 },
    /// Resampling gave up and the exhaustive search found the colouring.
    Exhaustive,
    /// The composition's product colouring verified directly.
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResampleOutcome {
    Success { colouring: Colouring, rounds: u64 },
    /// The cap was reached with a repetition still present. Certifies nothing.
    Failure { rounds: u64 },
}

/// Colours every vertex uniformly from `k` colours, then while the verifier
/// finds a repetitively coloured path, recolours all vertices of that path.
/// Stops on success or after `resample_cap` recolourings.
pub fn resample_colouring(g: &Graph, k: usize, opts: &StrategyOptions) -> Result<ResampleOutcome, StrategyError> {
    opts.validate()?;
    if k == 0 {
        return Err(StrategyError::InvalidOptions("palette must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let draw = |rng: &mut ChaCha8Rng| rng.gen_range(0..k as u64) as Colour;
    let colours: Vec<Colour> = g.vertices().map(|_| draw(&mut rng)).collect();
    let mut col = Colouring::new(colours, k)?;
    let mut verifier = Verifier::new(g);
    let mut rounds = 0;
    loop {
        let Some(witness) = verifier.find_repetition(&col, opts.verify.t_max())? else {
            return Ok(ResampleOutcome::Success { colouring: col, rounds });
        };
        if rounds == opts.resample_cap {
            return Ok(ResampleOutcome::Failure { rounds });
        }
        rounds += 1;
        let mut colours = col.colours().to_vec();
        for &v in witness.path() {
            colours[v] = draw(&mut rng);
        }
        col = Colouring::new(colours, k)?;
    }
}

/// Colouring from [`colour_bounded_degree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedDegreeColouring {
    pub colouring: Colouring,
    /// The vertices of degree greater than `d`; `private[i]` has colour `i`.
    pub private: Vec<Vertex>,
    /// `|private| + palette_factor·d²`, or `|private| + 1` when `d = 0` and
    /// some low-degree vertex remains.
    pub palette_bound: usize,
    pub route: Route,
}

/// Gives each vertex of degree greater than `d` its own colour and colours
/// the rest, which has maximum degree at most `d`, from `palette_factor·d²`
/// further colours. Resampling is tried first, then exhaustive search.
///
/// A private colour appears once, so no repetitively coloured path can use
/// a high-degree vertex; every repetition would lie in the low-degree part.
/// Vertices left isolated there share one colour.
pub fn colour_bounded_degree(
    g: &Graph,
    d: usize,
    opts: &StrategyOptions,
) -> Result<BoundedDegreeColouring, StrategyError> {
    opts.validate()?;
    let private: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) > d).collect();
    let rest: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) <= d).collect();
    let low = g.induced_subgraph(&rest);
    let active: Vec<usize> = low.vertices().filter(|&i| low.degree(i) > 0).collect();
    let palette = opts.palette_factor.saturating_mul(d.saturating_mul(d));

    let mut rest_colours = vec![0; rest.len()];
    let mut route = Route::Trivial;
    if !active.is_empty() {
        let core = low.induced_subgraph(&active);
        let (col, r) = match resample_colouring(&core, palette, opts)? {
            ResampleOutcome::Success { colouring, rounds } => (colouring, Route::Resampled { rounds }),
            ResampleOutcome::Failure { .. } => match colour_with_palette(&core, palette.min(core.n()), opts.budget) {
                SearchOutcome::Found(c) => (c, Route::Exhaustive),
                SearchOutcome::Exhausted => return Err(StrategyError::Unsatisfiable { palette }),
                SearchOutcome::BudgetExhausted => return Err(StrategyError::BudgetExhausted),
            },
        };
        let col = col.compacted();
        for (j, &i) in active.iter().enumerate() {
            rest_colours[i] = col.colour(j);
        }
        route = r;
    }

    let mut colours = vec![0; g.n()];
    for (i, &v) in private.iter().enumerate() {
        colours[v] = i;
    }
    for (i, &v) in rest.iter().enumerate() {
        colours[v] = private.len() + rest_colours[i];
    }
    let palette_size = private.len() + if rest.is_empty() { 0 } else { rest_colours.iter().max().map_or(0, |&c| c + 1) };
    let colouring = Colouring::new(colours, palette_size)?;
    verify(g, &colouring, opts.verify)?;
    let palette_bound = private.len() + if rest.is_empty() { 0 } else { palette.max(1) };
    Ok(BoundedDegreeColouring {
        colouring,
        private,
        palette_bound,
        route,
    })
}

/// A tree decomposition with a verified nonrepetitive colouring of each torso.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionInput {
    td: TreeDecomposition,
    torso_colourings: Vec<Colouring>,
    root: Node,
    k: usize,
    c: usize,
}

impl CompositionInput {
    /// `torso_colourings[x]` colours `torso_td(g, td, x)`, whose vertex `i`
    /// is the `i`-th smallest vertex of bag `x`. Each colouring is verified
    /// exactly on its torso.
    pub fn new(
        g: &Graph,
        td: TreeDecomposition,
        torso_colourings: Vec<Colouring>,
        root: Option<Node>,
    ) -> Result<Self, StrategyError> {
        validate_tree_decomposition(g, &td).map_err(StrategyError::InvalidDecomposition)?;
        if torso_colourings.len() != td.tree().node_count() {
            return Err(StrategyError::Decomp(DecompError::BagCount {
                nodes: td.tree().node_count(),
                bags: torso_colourings.len(),
            }));
        }
        for (x, col) in torso_colourings.iter().enumerate() {
            let torso = torso_td(g, &td, x)?;
            if find_repetition(&torso.graph, col, None)?.is_some() {
                return Err(StrategyError::InvalidTorsoColouring { node: x });
            }
        }
        let root = root.unwrap_or(0);
        OrientedTree::new(td.tree(), root)?;
        Ok(CompositionInput {
            k: adhesion_td(&td),
            c: torso_colourings.iter().map(Colouring::palette_size).max().unwrap_or(0),
            td,
            torso_colourings,
            root,
        })
    }

    pub fn decomposition(&self) -> &TreeDecomposition {
        &self.td
    }

    pub fn torso_colourings(&self) -> &[Colouring] {
        &self.torso_colourings
    }

    /// Adhesion of the decomposition.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Largest torso palette.
    pub fn c(&self) -> usize {
        self.c
    }

    /// `c · 4^k`, saturating.
    pub fn palette_bound(&self) -> usize {
        let pow = u32::try_from(self.k).ok().and_then(|k| 4usize.checked_pow(k));
        pow.and_then(|p| p.checked_mul(self.c)).unwrap_or(usize::MAX)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    pub colouring: Colouring,
    pub palette_bound: usize,
    pub route: Route,
}

/// Colours `G` with at most `c · 4^k` colours from the torso colourings.
///
/// First tries the product colouring: each vertex takes its colour in the
/// torso of its shallowest bag, paired (when `k > 0`) with a Thue symbol
/// indexed by that bag's depth. If that fails verification, falls back to an
/// exhaustive search with the full palette.
pub fn compose_colourings(
    g: &Graph,
    input: &CompositionInput,
    opts: &StrategyOptions,
) -> Result<Composition, StrategyError> {
    opts.validate()?;
    let bound = input.palette_bound();
    if g.n() == 0 {
        return Ok(Composition {
            colouring: Colouring::new(Vec::new(), bound)?,
            palette_bound: bound,
            route: Route::Trivial,
        });
    }
    if bound == 0 {
        return Err(StrategyError::EmptyPalette { palette: 0, n: g.n() });
    }

    let oriented = OrientedTree::new(input.td.tree(), input.root)?;
    let occ = input.td.occurrences(g.n());
    let max_depth = input.td.tree().nodes().map(|x| oriented.depth(x)).max().unwrap_or(0);
    let pattern = thue_sequence(max_depth + 1);
    let colours: Vec<Colour> = g
        .vertices()
        .map(|v| {
            let home = *occ[v].iter().min_by_key(|&&x| oriented.depth(x)).expect("decomposition covers v");
            let index = input.td.bag(home).binary_search(&v).expect("v is in its bag");
            let aux = if input.k == 0 {
                0
            } else {
                usize::from(pattern.symbols()[oriented.depth(home)])
            };
            input.torso_colourings[home].colour(index) + input.c * aux
        })
        .collect();
    let product = Colouring::new(colours, bound)?;
    if verify(g, &product, opts.verify).is_ok() {
        return Ok(Composition {
            colouring: product,
            palette_bound: bound,
            route: Route::Heuristic,
        });
    }

    let found = match colour_with_palette(g, bound.min(g.n()), opts.budget) {
        SearchOutcome::Found(col) => col,
        SearchOutcome::Exhausted => return Err(StrategyError::Unsatisfiable { palette: bound }),
        SearchOutcome::BudgetExhausted => return Err(StrategyError::BudgetExhausted),
    };
    let colouring = Colouring::new(found.colours().to_vec(), bound)?;
    verify(g, &colouring, opts.verify)?;
    Ok(Composition {
        colouring,
        palette_bound: bound,
        route: Route::Exhaustive,
    })
}

/// The pipeline's palette arithmetic: torsos get at most
/// `c = t + palette_factor·d²` colours with `d = t⁴ + 2t²`, adhesion is at
/// most `k = t²`, so the composition needs at most `c · 4^k` colours.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PaletteArithmetic {
    pub t: usize,
    pub d: usize,
    pub palette_factor: usize,
    pub torso_palette: usize,
    pub adhesion: usize,
    /// `None` on overflow.
    pub total: Option<usize>,
}

impl PaletteArithmetic {
    pub fn new(t: usize, palette_factor: usize) -> Self {
        let d = torso_degree_bound(t);
        let torso_palette = t.saturating_add(palette_factor.saturating_mul(d.saturating_mul(d)));
        let adhesion = t * t;
        let total = u32::try_from(adhesion)
            .ok()
            .and_then(|k| 4usize.checked_pow(k))
            .and_then(|p| p.checked_mul(torso_palette));
        PaletteArithmetic {
            t,
            d,
            palette_factor,
            torso_palette,
            adhesion,
            total,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineResult {
    pub decomposition: TreeDecomposition,
    pub report: TransformReport,
    pub torso_colourings: Vec<BoundedDegreeColouring>,
    pub composition: Composition,
    pub arithmetic: PaletteArithmetic,
}

impl PipelineResult {
    /// The palette bound is claimed only when the hypothesis holds.
    pub fn claimed_bound(&self) -> Option<usize> {
        if self.report.hypothesis_met {
            self.arithmetic.total
        } else {
            None
        }
    }
}

/// Builds the tree decomposition, colours each torso with
/// [`colour_bounded_degree`] at `d = t⁴ + 2t²`, and composes.
/// Each torso uses a seed derived from the global seed and its node.
pub fn immersion_pipeline(
    g: &Graph,
    tp: &TPartition,
    t: usize,
    opts: &StrategyOptions,
    root: Option<Node>,
) -> Result<PipelineResult, StrategyError> {
    opts.validate()?;
    let td = build_tree_decomposition(g, tp, root)?;
    let report = check_transform_guarantees(g, tp, &td, Some(t), root)?;
    let d = torso_degree_bound(t);
    let mut torso_colourings = Vec::with_capacity(td.tree().node_count());
    for x in td.tree().nodes() {
        let torso = torso_td(g, &td, x)?;
        let sub = opts.with_seed(derive_seed(opts.seed, x as u64));
        // torso colourings feed the composition input, which insists on exact checks
        let sub = StrategyOptions { verify: VerifyMode::Exact, ..sub };
        torso_colourings.push(colour_bounded_degree(&torso.graph, d, &sub)?);
    }
    let input = CompositionInput::new(
        g,
        td.clone(),
        torso_colourings.iter().map(|c| c.colouring.clone()).collect(),
        root,
    )?;
    let composition = compose_colourings(g, &input, opts)?;
    Ok(PipelineResult {
        decomposition: td,
        report,
        torso_colourings,
        composition,
        arithmetic: PaletteArithmetic::new(t, opts.palette_factor),
    })
}
