//! The `nonrep` command line. Each run prints one JSON document on stdout
//! and exits with [`EXIT_OK`], [`EXIT_FAILS`], [`EXIT_INVALID`] or
//! [`EXIT_UNDECIDED`].

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nonrep_core::containment::{find_containment, ContainmentMode};
use nonrep_core::decomp::{
    adhesion_td, adhesion_tp, torso_td, torso_tp, validate_tpartition, validate_tree_decomposition, width,
    Node, Torso, TorsoVertex,
};
use nonrep_core::graph::degree_profile;
use nonrep_core::nonrep::{colour_path, exact_pi, find_repetition, Colouring, PiOutcome, VerifyMode};
use nonrep_core::strategies::{
    colour_bounded_degree, compose_colourings, immersion_pipeline, resample_colouring, CompositionInput,
    ResampleOutcome, StrategyError, StrategyOptions,
};
use nonrep_core::transform::{build_tree_decomposition, check_transform_guarantees};
use nonrep_core::{Graph, SearchOutcome, DEFAULT_BUDGET};
use serde_json::{json, Value};

use crate::certificate::{
    arithmetic_json, bounded_degree_json, colouring_certificate, colouring_from_value, envelope,
    parse_colouring, profile_json, route_name, transform_report_json, witness_json,
};
use crate::decomp_io::{DecompKind, DecompositionFile};
use crate::graph_io::{graph_to_json, parse_graph};
use crate::{read_file, Error};

/// Success, property holds, witness found.
pub const EXIT_OK: i32 = 0;
/// Property fails, no witness, or no colouring with the palette.
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
/// A budget or cap ran out before the question was decided.
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nonrep", version, about = "Nonrepetitive colourings, decompositions and containment oracles")]
struct Cli {
    /// Output format; JSON is the only one.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a colouring for repetitively coloured paths.
    Verify {
        graph: PathBuf,
        colouring: PathBuf,
        /// Only check paths with at most this half-length.
        #[arg(long)]
        t_max: Option<usize>,
    },
    /// Compute the nonrepetitive chromatic number exactly.
    Pi {
        graph: PathBuf,
        /// Largest palette to try (default: the number of vertices).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Thue colouring of the path on `n` vertices.
    ColourPath { n: usize },
    /// Private colours above degree `d`, a degree-based palette below.
    ColourDegree {
        graph: PathBuf,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        strategy: StrategyArgs,
    },
    /// Uniform colouring repaired by resampling repetitive paths.
    ColourResample {
        graph: PathBuf,
        #[arg(long)]
        palette: usize,
        #[command(flatten)]
        strategy: StrategyArgs,
    },
    /// Combine torso colourings of a tree decomposition.
    Compose {
        graph: PathBuf,
        decomposition: PathBuf,
        /// `{"torso_colourings": {node: colouring}}`; torsos are coloured
        /// optimally when omitted.
        torso_colourings: Option<PathBuf>,
        #[arg(long)]
        root: Option<String>,
        #[command(flatten)]
        strategy: StrategyArgs,
    },
    /// Adhesion (and width, for tree decompositions).
    Adhesion { graph: PathBuf, decomposition: PathBuf },
    /// Torso of one node.
    Torso {
        graph: PathBuf,
        decomposition: PathBuf,
        #[arg(long)]
        node: String,
        /// Also report the degree profile at this threshold.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Check a tree decomposition or T-partition against the graph.
    Validate { graph: PathBuf, decomposition: PathBuf },
    /// Build the tree decomposition from a T-partition and check it.
    Transform {
        graph: PathBuf,
        partition: PathBuf,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        root: Option<String>,
    },
    /// Transform, colour every torso, compose.
    Pipeline {
        graph: PathBuf,
        partition: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        root: Option<String>,
        #[command(flatten)]
        strategy: StrategyArgs,
    },
    /// Search for a pattern as an immersion or topological minor.
    Contains {
        graph: PathBuf,
        pattern: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Immersion)]
        mode: Mode,
        /// Shorthand for `--mode strong-immersion`.
        #[arg(long)]
        strong: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Immersion,
    StrongImmersion,
    TopologicalMinor,
}

#[derive(Debug, Args)]
struct StrategyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum number of resampling rounds.
    #[arg(long, default_value_t = 100_000)]
    cap: u64,
    #[arg(long, default_value_t = 4)]
    palette_factor: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    t_max: Option<usize>,
}

impl StrategyArgs {
    fn options(&self) -> StrategyOptions {
        StrategyOptions {
            seed: self.seed,
            resample_cap: self.cap,
            palette_factor: self.palette_factor,
            verify: verify_mode(self.t_max),
            budget: self.budget,
        }
    }
}

fn verify_mode(t_max: Option<usize>) -> VerifyMode {
    t_max.map_or(VerifyMode::Exact, |t_max| VerifyMode::Bounded { t_max })
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    /// The JSON document for stdout; absent only for `--help` and `--version`.
    pub document: Option<Value>,
    /// Plain text for stdout (help and version).
    pub text: Option<String>,
    /// Diagnostics for stderr.
    pub diagnostics: Option<String>,
}

impl Outcome {
    fn json(code: i32, document: Value) -> Self {
        Outcome {
            code,
            document: Some(document),
            text: None,
            diagnostics: None,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            return Outcome {
                code: EXIT_OK,
                document: None,
                text: Some(e.render().to_string()),
                diagnostics: None,
            };
        }
        Err(e) => {
            return Outcome {
                diagnostics: Some(e.render().to_string()),
                ..Outcome::json(EXIT_INVALID, error_document("usage", &e.kind().to_string()))
            };
        }
    };
    let name = command_name(&cli.command);
    match dispatch(cli.command) {
        Ok((code, doc)) => Outcome::json(code, envelope(name, doc)),
        Err(Error::Strategy(StrategyError::Unsatisfiable { palette })) => Outcome::json(
            EXIT_FAILS,
            envelope(name, json!({"status": "unsatisfiable", "palette": palette})),
        ),
        Err(Error::Strategy(StrategyError::BudgetExhausted)) => {
            Outcome::json(EXIT_UNDECIDED, envelope(name, json!({"status": "budget-exhausted"})))
        }
        Err(e) => {
            let message = e.to_string();
            Outcome {
                diagnostics: Some(format!("error: {message}")),
                ..Outcome::json(EXIT_INVALID, error_document(name, &message))
            }
        }
    }
}

fn error_document(command: &str, message: &str) -> Value {
    envelope("error", json!({"command": command, "error": message}))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify { .. } => "verify",
        Command::Pi { .. } => "pi",
        Command::ColourPath { .. } => "colour-path",
        Command::ColourDegree { .. } => "colour-degree",
        Command::ColourResample { .. } => "colour-resample",
        Command::Compose { .. } => "compose",
        Command::Adhesion { .. } => "adhesion",
        Command::Torso { .. } => "torso",
        Command::Validate { .. } => "validate",
        Command::Transform { .. } => "transform",
        Command::Pipeline { .. } => "pipeline",
        Command::Contains { .. } => "contains",
    }
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    Ok(parse_graph(&read_file(path)?)?)
}

fn load_decomposition(path: &Path) -> Result<DecompositionFile, Error> {
    Ok(DecompositionFile::parse(&read_file(path)?)?)
}

fn pick_root(file: &DecompositionFile, root: Option<&str>) -> Result<Node, Error> {
    match root {
        Some(name) => Ok(file.node(name)?),
        None => Ok(file.root_or_default()),
    }
}

fn dispatch(command: Command) -> Result<(i32, Value), Error> {
    match command {
        Command::Verify { graph, colouring, t_max } => {
            let g = load_graph(&graph)?;
            let col = parse_colouring(&read_file(&colouring)?)?;
            let witness = find_repetition(&g, &col, t_max)?;
            let mut doc = colouring_certificate(&col, verify_mode(t_max), witness.as_ref());
            doc["nonrepetitive"] = json!(witness.is_none());
            let code = if witness.is_none() { EXIT_OK } else { EXIT_FAILS };
            Ok((code, doc))
        }
        Command::Pi { graph, k, budget } => {
            let g = load_graph(&graph)?;
            Ok(match exact_pi(&g, k, budget) {
                PiOutcome::Exact { pi, colouring } => (
                    EXIT_OK,
                    json!({
                        "status": "exact",
                        "pi": pi,
                        "colouring": colouring_certificate(&colouring, VerifyMode::Exact, None),
                    }),
                ),
                PiOutcome::AboveBound { bound } => {
                    (EXIT_FAILS, json!({"status": "above-bound", "pi": null, "lower_bound": bound + 1}))
                }
                PiOutcome::Indeterminate { lower_bound } => {
                    (EXIT_UNDECIDED, json!({"status": "budget-exhausted", "pi": null, "lower_bound": lower_bound}))
                }
            })
        }
        Command::ColourPath { n } => {
            let col = colour_path(n);
            let g = Graph::path(n);
            let witness = find_repetition(&g, &col, None)?;
            let mut doc = colouring_certificate(&col, VerifyMode::Exact, witness.as_ref());
            doc["n"] = json!(n);
            Ok((if witness.is_none() { EXIT_OK } else { EXIT_FAILS }, doc))
        }
        Command::ColourDegree { graph, d, strategy } => {
            let g = load_graph(&graph)?;
            let opts = strategy.options();
            let result = colour_bounded_degree(&g, d, &opts)?;
            let mut doc = bounded_degree_json(&result, opts.verify);
            doc["d"] = json!(d);
            Ok((EXIT_OK, doc))
        }
        Command::ColourResample { graph, palette, strategy } => {
            let g = load_graph(&graph)?;
            let opts = strategy.options();
            Ok(match resample_colouring(&g, palette, &opts)? {
                ResampleOutcome::Success { colouring, rounds } => {
                    let mut doc = colouring_certificate(&colouring, opts.verify, None);
                    doc["status"] = json!("success");
                    doc["rounds"] = json!(rounds);
                    doc["seed"] = json!(opts.seed);
                    (EXIT_OK, doc)
                }
                ResampleOutcome::Failure { rounds } => (
                    EXIT_UNDECIDED,
                    json!({"status": "cap-reached", "rounds": rounds, "seed": opts.seed}),
                ),
            })
        }
        Command::Compose {
            graph,
            decomposition,
            torso_colourings,
            root,
            strategy,
        } => {
            let g = load_graph(&graph)?;
            let file = load_decomposition(&decomposition)?;
            let td = file.tree_decomposition()?;
            let root = pick_root(&file, root.as_deref())?;
            if let Err(v) = validate_tree_decomposition(&g, &td) {
                return Err(Error::Invalid(format!("invalid tree decomposition: {v:?}")));
            }
            let colourings = match torso_colourings {
                Some(path) => read_torso_colourings(&file, &read_file(&path)?)?,
                None => {
                    let mut cols = Vec::new();
                    for x in td.tree().nodes() {
                        let torso = torso_td(&g, &td, x)?;
                        match exact_pi(&torso.graph, None, strategy.budget) {
                            PiOutcome::Exact { colouring, .. } => cols.push(colouring),
                            _ => return Err(Error::Strategy(StrategyError::BudgetExhausted)),
                        }
                    }
                    cols
                }
            };
            let torso_docs: BTreeMap<&str, Value> = file
                .names
                .iter()
                .map(String::as_str)
                .zip(colourings.iter().map(|c| colouring_certificate(c, VerifyMode::Exact, None)))
                .collect();
            let input = CompositionInput::new(&g, td, colourings, Some(root))?;
            let opts = strategy.options();
            let comp = compose_colourings(&g, &input, &opts)?;
            let mut doc = colouring_certificate(&comp.colouring, opts.verify, None);
            doc["palette_bound"] = json!(comp.palette_bound);
            doc["palette_bound_formula"] = json!("c * 4^k");
            doc["c"] = json!(input.c());
            doc["k"] = json!(input.k());
            doc["colours_used"] = json!(comp.colouring.colours_used());
            doc["route"] = route_name(comp.route);
            doc["torso_colourings"] = json!(torso_docs);
            Ok((EXIT_OK, doc))
        }
        Command::Adhesion { graph, decomposition } => {
            let g = load_graph(&graph)?;
            let file = load_decomposition(&decomposition)?;
            Ok(match file.kind {
                DecompKind::TreeDecomposition => {
                    let td = file.tree_decomposition()?;
                    let valid = validate_tree_decomposition(&g, &td).is_ok();
                    (
                        EXIT_OK,
                        json!({"decomposition": file.kind.name(), "adhesion": adhesion_td(&td), "width": width(&td), "valid": valid}),
                    )
                }
                DecompKind::TPartition => {
                    let tp = file.t_partition()?;
                    let valid = validate_tpartition(&g, &tp).is_ok();
                    (
                        EXIT_OK,
                        json!({"decomposition": file.kind.name(), "adhesion": adhesion_tp(&g, &tp)?, "valid": valid}),
                    )
                }
            })
        }
        Command::Torso {
            graph,
            decomposition,
            node,
            d,
        } => {
            let g = load_graph(&graph)?;
            let file = load_decomposition(&decomposition)?;
            let x = file.node(&node)?;
            let torso = match file.kind {
                DecompKind::TreeDecomposition => torso_td(&g, &file.tree_decomposition()?, x)?,
                DecompKind::TPartition => torso_tp(&g, &file.t_partition()?, x)?,
            };
            let mut doc = json!({
                "node": node,
                "graph": graph_to_json(&torso.graph),
                "labels": torso_labels(&torso, &file),
            });
            if let Some(d) = d {
                doc["degree_profile"] = profile_json(&degree_profile(&torso.graph, d));
            }
            Ok((EXIT_OK, doc))
        }
        Command::Validate { graph, decomposition } => {
            let g = load_graph(&graph)?;
            let file = load_decomposition(&decomposition)?;
            let violations: Vec<String> = match file.kind {
                DecompKind::TreeDecomposition => validate_tree_decomposition(&g, &file.tree_decomposition()?)
                    .err()
                    .unwrap_or_default()
                    .iter()
                    .map(|v| format!("{v:?}"))
                    .collect(),
                DecompKind::TPartition => validate_tpartition(&g, &file.t_partition()?)
                    .err()
                    .unwrap_or_default()
                    .iter()
                    .map(|v| format!("{v:?}"))
                    .collect(),
            };
            let valid = violations.is_empty();
            Ok((
                if valid { EXIT_OK } else { EXIT_FAILS },
                json!({"decomposition": file.kind.name(), "valid": valid, "violations": violations}),
            ))
        }
        Command::Transform {
            graph,
            partition,
            t,
            root,
        } => {
            let g = load_graph(&graph)?;
            let file = load_decomposition(&partition)?;
            let tp = file.t_partition()?;
            let root = pick_root(&file, root.as_deref())?;
            let td = build_tree_decomposition(&g, &tp, Some(root))?;
            let report = check_transform_guarantees(&g, &tp, &td, t, Some(root))?;
            let out = file.with_bags(DecompKind::TreeDecomposition, td.bags().to_vec());
            let out = DecompositionFile { root: Some(root), ..out };
            let mut doc = transform_report_json(&report, &file.names);
            doc["decomposition"] = out.to_json();
            Ok((if report.holds() { EXIT_OK } else { EXIT_FAILS }, doc))
        }
        Command::Pipeline {
            graph,
            partition,
            t,
            root,
            strategy,
        } => {
            let g = load_graph(&graph)?;
            let file = load_decomposition(&partition)?;
            let tp = file.t_partition()?;
            let root = pick_root(&file, root.as_deref())?;
            let opts = strategy.options();
            let result = immersion_pipeline(&g, &tp, t, &opts, Some(root))?;
            let out = DecompositionFile {
                root: Some(root),
                ..file.with_bags(DecompKind::TreeDecomposition, result.decomposition.bags().to_vec())
            };
            let torsos: BTreeMap<&str, Value> = file
                .names
                .iter()
                .map(String::as_str)
                .zip(result.torso_colourings.iter().map(|b| bounded_degree_json(b, VerifyMode::Exact)))
                .collect();
            let mut colouring = colouring_certificate(&result.composition.colouring, opts.verify, None);
            colouring["colours_used"] = json!(result.composition.colouring.colours_used());
            colouring["route"] = route_name(result.composition.route);
            let claimed = result.claimed_bound();
            let within = claimed.is_none_or(|b| result.composition.colouring.palette_size() <= b);
            Ok((
                if within { EXIT_OK } else { EXIT_FAILS },
                json!({
                    "transform_report": transform_report_json(&result.report, &file.names),
                    "decomposition": out.to_json(),
                    "torso_colourings": torsos,
                    "composition_bound": result.composition.palette_bound,
                    "colouring": colouring,
                    "arithmetic": arithmetic_json(&result.arithmetic, claimed),
                    "within_claimed_bound": within,
                }),
            ))
        }
        Command::Contains {
            graph,
            pattern,
            mode,
            strong,
            budget,
        } => {
            let g = load_graph(&graph)?;
            let h = load_graph(&pattern)?;
            let mode = match (mode, strong) {
                (Mode::Immersion, true) | (Mode::StrongImmersion, _) => ContainmentMode::StrongImmersion,
                (Mode::Immersion, false) => ContainmentMode::Immersion,
                (Mode::TopologicalMinor, _) => ContainmentMode::TopologicalMinor,
            };
            Ok(match find_containment(&g, &h, mode, budget) {
                SearchOutcome::Found(w) => {
                    let mut doc = witness_json(&w);
                    doc["status"] = json!("found");
                    (EXIT_OK, doc)
                }
                SearchOutcome::Exhausted => (EXIT_FAILS, json!({"status": "none", "mode": mode.name()})),
                SearchOutcome::BudgetExhausted => {
                    (EXIT_UNDECIDED, json!({"status": "budget-exhausted", "mode": mode.name()}))
                }
            })
        }
    }
}

fn torso_labels(torso: &Torso, file: &DecompositionFile) -> Vec<Value> {
    torso
        .labels
        .iter()
        .map(|l| match *l {
            TorsoVertex::Vertex(v) => json!({"vertex": v}),
            TorsoVertex::Side(y) => json!({"side": file.names[y]}),
        })
        .collect()
}

fn read_torso_colourings(file: &DecompositionFile, text: &str) -> Result<Vec<Colouring>, Error> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::ColouringFile(e.to_string()))?;
    let Some(Value::Object(map)) = v.get("torso_colourings") else {
        return Err(Error::ColouringFile("expected {\"torso_colourings\": {node: colouring}}".into()));
    };
    let mut cols: Vec<Option<Colouring>> = vec![None; file.names.len()];
    for (name, c) in map {
        cols[file.node(name)?] = Some(colouring_from_value(c.clone())?);
    }
    cols.into_iter()
        .enumerate()
        .map(|(x, c)| c.ok_or_else(|| Error::ColouringFile(format!("no colouring for node {:?}", file.names[x]))))
        .collect()
}
