use serde_json::{json, Value};

use crate::depth::{read_forest, write_forest, EliminationForest};
use crate::error::{Error, Result};
use crate::graph::{read_graph, write_graph, Graph};
use crate::lincw::{read_lincw, write_lincw, LinCwExpression};
use crate::sc_model::{read_sc_tree, write_sc_tree, ScTree};
use crate::tree_model::{read_tree_model, write_tree_model, TreeModel};

/// Line separating the members of a graph list in text form.
pub const LIST_SEPARATOR: &str = "---";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArtifactKind {
    Graph,
    TreeModel,
    ScTree,
    Forest,
    LinCw,
    GraphList,
}

impl ArtifactKind {
    pub fn name(self) -> &'static str {
        match self {
            ArtifactKind::Graph => "graph",
            ArtifactKind::TreeModel => "tree-model",
            ArtifactKind::ScTree => "sc-tree",
            ArtifactKind::Forest => "forest",
            ArtifactKind::LinCw => "lincw",
            ArtifactKind::GraphList => "graph-list",
        }
    }
}

/// A value that strategies consume or produce, with its file format.
#[derive(Debug, Clone, PartialEq)]
pub enum Artifact {
    Graph(Graph),
    TreeModel(TreeModel),
    ScTree(ScTree),
    Forest(EliminationForest),
    LinCw(LinCwExpression),
    GraphList(Vec<Graph>),
}

impl Artifact {
    pub fn kind(&self) -> ArtifactKind {
        match self {
            Artifact::Graph(_) => ArtifactKind::Graph,
            Artifact::TreeModel(_) => ArtifactKind::TreeModel,
            Artifact::ScTree(_) => ArtifactKind::ScTree,
            Artifact::Forest(_) => ArtifactKind::Forest,
            Artifact::LinCw(_) => ArtifactKind::LinCw,
            Artifact::GraphList(_) => ArtifactKind::GraphList,
        }
    }

    /// The file format of the owning module.
    pub fn to_text(&self) -> String {
        match self {
            Artifact::Graph(g) => write_graph(g),
            Artifact::TreeModel(m) => write_tree_model(m),
            Artifact::ScTree(t) => write_sc_tree(t),
            Artifact::Forest(f) => write_forest(f),
            Artifact::LinCw(e) => write_lincw(e),
            Artifact::GraphList(gs) => gs
                .iter()
                .map(write_graph)
                .collect::<Vec<_>>()
                .join(&format!("{LIST_SEPARATOR}\n")),
        }
    }

    pub fn read(kind: ArtifactKind, text: &str) -> Result<Artifact> {
        Ok(match kind {
            ArtifactKind::Graph => Artifact::Graph(read_graph(text)?),
            ArtifactKind::TreeModel => Artifact::TreeModel(read_tree_model(text)?),
            ArtifactKind::ScTree => Artifact::ScTree(read_sc_tree(text)?),
            ArtifactKind::Forest => Artifact::Forest(read_forest(text)?),
            ArtifactKind::LinCw => Artifact::LinCw(read_lincw(text)?),
            ArtifactKind::GraphList => {
                let mut graphs = Vec::new();
                let mut chunk = String::new();
                for line in text.lines().chain([LIST_SEPARATOR]) {
                    if line.trim() == LIST_SEPARATOR {
                        if !chunk.trim().is_empty() {
                            graphs.push(read_graph(&chunk)?);
                        }
                        chunk.clear();
                    } else {
                        chunk.push_str(line);
                        chunk.push('\n');
                    }
                }
                Artifact::GraphList(graphs)
            }
        })
    }

    /// JSON rendering for structured output.
    pub fn to_json(&self) -> Value {
        let parsed = |text: String| serde_json::from_str(&text).expect("writer emits JSON");
        match self {
            Artifact::Graph(g) => graph_json(g),
            Artifact::TreeModel(m) => parsed(write_tree_model(m)),
            Artifact::ScTree(t) => parsed(write_sc_tree(t)),
            Artifact::Forest(f) => {
                let parent: Vec<i64> = (0..f.len())
                    .map(|v| f.parent(v).map_or(-1, |p| p as i64))
                    .collect();
                json!({ "parent": parent })
            }
            Artifact::LinCw(e) => {
                json!({ "ops": e.ops().iter().map(|op| op.to_string()).collect::<Vec<_>>() })
            }
            Artifact::GraphList(gs) => Value::Array(gs.iter().map(graph_json).collect()),
        }
    }

    pub fn into_graph(self) -> Result<Graph> {
        match self {
            Artifact::Graph(g) => Ok(g),
            other => Err(mismatch(ArtifactKind::Graph, other.kind())),
        }
    }

    pub fn into_tree_model(self) -> Result<TreeModel> {
        match self {
            Artifact::TreeModel(m) => Ok(m),
            other => Err(mismatch(ArtifactKind::TreeModel, other.kind())),
        }
    }

    pub fn into_sc_tree(self) -> Result<ScTree> {
        match self {
            Artifact::ScTree(t) => Ok(t),
            other => Err(mismatch(ArtifactKind::ScTree, other.kind())),
        }
    }

    pub fn into_forest(self) -> Result<EliminationForest> {
        match self {
            Artifact::Forest(f) => Ok(f),
            other => Err(mismatch(ArtifactKind::Forest, other.kind())),
        }
    }

    pub fn into_lincw(self) -> Result<LinCwExpression> {
        match self {
            Artifact::LinCw(e) => Ok(e),
            other => Err(mismatch(ArtifactKind::LinCw, other.kind())),
        }
    }
}

fn mismatch(want: ArtifactKind, got: ArtifactKind) -> Error {
    Error::domain(format!("expected a {}, got a {}", want.name(), got.name()))
}

pub fn graph_json(g: &Graph) -> Value {
    let edges: Vec<[usize; 2]> = g.edges().map(|(u, v)| [u, v]).collect();
    let labels: serde_json::Map<String, Value> = g
        .label_map()
        .iter()
        .map(|(v, names)| (v.to_string(), json!(names)))
        .collect();
    json!({ "n": g.n(), "edges": edges, "labels": labels })
}
