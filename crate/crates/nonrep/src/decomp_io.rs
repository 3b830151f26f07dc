//! Decomposition JSON, shared by tree decompositions and T-partitions:
//!
//! ```json
//! {"kind": "t-partition",
//!  "tree": {"nodes": ["x", "y"], "edges": [["x", "y"]], "root": "y"},
//!  "bags": {"x": [0, 1], "y": [2, 3]}}
//! ```
//!
//! Node ids may be strings or integers and are kept as strings. Vertices are
//! 0-indexed. A node missing from `bags` has an empty bag.

use std::collections::{BTreeMap, HashMap};

use nonrep_core::decomp::{Node, TPartition, Tree, TreeDecomposition, TreeError};
use nonrep_core::Vertex;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompKind {
    TreeDecomposition,
    TPartition,
}

impl DecompKind {
    pub fn name(self) -> &'static str {
        match self {
            DecompKind::TreeDecomposition => "tree-decomposition",
            DecompKind::TPartition => "t-partition",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompParseError {
    #[error("invalid decomposition JSON: {0}")]
    Json(String),
    #[error("unknown kind {0:?}")]
    UnknownKind(String),
    #[error("expected a {expected} but the file holds a {found}")]
    KindMismatch { expected: &'static str, found: &'static str },
    #[error("node id {0} is neither a string nor a non-negative integer")]
    BadNodeId(String),
    #[error("node {0:?} is listed twice")]
    DuplicateNode(String),
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("invalid tree: {0}")]
    Tree(#[from] TreeError),
}

#[derive(Deserialize)]
struct RawFile {
    kind: String,
    tree: RawTree,
    #[serde(default)]
    bags: BTreeMap<String, Vec<Vertex>>,
}

#[derive(Deserialize)]
struct RawTree {
    nodes: Vec<Value>,
    #[serde(default)]
    edges: Vec<(Value, Value)>,
    #[serde(default)]
    root: Option<Value>,
}

/// A parsed decomposition file; nodes are indexed in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionFile {
    pub kind: DecompKind,
    pub names: Vec<String>,
    pub tree: Tree,
    pub root: Option<Node>,
    pub bags: Vec<Vec<Vertex>>,
}

fn node_id(v: &Value) -> Result<String, DecompParseError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_u64() => Ok(n.to_string()),
        other => Err(DecompParseError::BadNodeId(other.to_string())),
    }
}

impl DecompositionFile {
    pub fn parse(text: &str) -> Result<Self, DecompParseError> {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| DecompParseError::Json(e.to_string()))?;
        let kind = match raw.kind.as_str() {
            "tree-decomposition" => DecompKind::TreeDecomposition,
            "t-partition" => DecompKind::TPartition,
            other => return Err(DecompParseError::UnknownKind(other.to_string())),
        };
        let names = raw.tree.nodes.iter().map(node_id).collect::<Result<Vec<_>, _>>()?;
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(DecompParseError::DuplicateNode(name.clone()));
            }
        }
        let lookup = |v: &Value| -> Result<Node, DecompParseError> {
            let name = node_id(v)?;
            index.get(&name).copied().ok_or(DecompParseError::UnknownNode(name))
        };
        let edges = raw
            .tree
            .edges
            .iter()
            .map(|(x, y)| Ok((lookup(x)?, lookup(y)?)))
            .collect::<Result<Vec<_>, DecompParseError>>()?;
        let root = raw.tree.root.as_ref().map(lookup).transpose()?;
        let mut bags = vec![Vec::new(); names.len()];
        for (name, bag) in raw.bags {
            let x = *index.get(&name).ok_or(DecompParseError::UnknownNode(name))?;
            bags[x] = bag;
        }
        let tree = Tree::new(names.len(), edges)?;
        Ok(DecompositionFile {
            kind,
            names,
            tree,
            root,
            bags,
        })
    }

    /// Nodes named `0..nodes` after their indices.
    pub fn from_parts(kind: DecompKind, tree: Tree, root: Option<Node>, bags: Vec<Vec<Vertex>>) -> Self {
        DecompositionFile {
            kind,
            names: tree.nodes().map(|x| x.to_string()).collect(),
            tree,
            root,
            bags,
        }
    }

    pub fn expect_kind(&self, kind: DecompKind) -> Result<(), DecompParseError> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(DecompParseError::KindMismatch {
                expected: kind.name(),
                found: self.kind.name(),
            })
        }
    }

    pub fn node(&self, name: &str) -> Result<Node, DecompParseError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| DecompParseError::UnknownNode(name.to_string()))
    }

    /// The declared root, else the smallest node id (numerically when every
    /// id is an integer).
    pub fn root_or_default(&self) -> Node {
        if let Some(root) = self.root {
            return root;
        }
        let numeric: Option<Vec<u64>> = self.names.iter().map(|n| n.parse().ok()).collect();
        match numeric {
            Some(ids) => (0..ids.len()).min_by_key(|&i| ids[i]).unwrap_or(0),
            None => (0..self.names.len()).min_by_key(|&i| &self.names[i]).unwrap_or(0),
        }
    }

    pub fn tree_decomposition(&self) -> Result<TreeDecomposition, crate::Error> {
        self.expect_kind(DecompKind::TreeDecomposition)?;
        Ok(TreeDecomposition::new(self.tree.clone(), self.bags.clone())?)
    }

    pub fn t_partition(&self) -> Result<TPartition, crate::Error> {
        self.expect_kind(DecompKind::TPartition)?;
        Ok(TPartition::new(self.tree.clone(), self.bags.clone())?)
    }

    /// The same nodes and root with other bags, for example the output of
    /// the transform.
    pub fn with_bags(&self, kind: DecompKind, bags: Vec<Vec<Vertex>>) -> Self {
        DecompositionFile {
            kind,
            bags,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<(&str, &str)> = self
            .tree
            .edges()
            .map(|(x, y)| (self.names[x].as_str(), self.names[y].as_str()))
            .collect();
        let bags: BTreeMap<&str, &[Vertex]> =
            self.names.iter().map(String::as_str).zip(self.bags.iter().map(Vec::as_slice)).collect();
        json!({
            "kind": self.kind.name(),
            "tree": {
                "nodes": self.names,
                "edges": edges,
                "root": self.root.map(|r| self.names[r].clone()),
            },
            "bags": bags,
        })
    }
}
