//! SC-trees: leaves are single vertices; every internal node takes the
//! disjoint union of its children's graphs and complements the edges inside
//! its set `X`. A tree of height `n` builds a graph of SC-depth at most `n`.

mod convert;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use convert::{complement_schedule, sc_to_tm, tm_to_sc};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScNode {
    Leaf {
        vertex: usize,
    },
    Internal {
        #[serde(rename = "X")]
        x: Vec<usize>,
        children: Vec<ScNode>,
    },
}

impl ScNode {
    pub fn leaf(vertex: usize) -> ScNode {
        ScNode::Leaf { vertex }
    }

    pub fn internal(x: impl IntoIterator<Item = usize>, children: Vec<ScNode>) -> ScNode {
        let x: BTreeSet<usize> = x.into_iter().collect();
        ScNode::Internal {
            x: x.into_iter().collect(),
            children,
        }
    }

    pub fn height(&self) -> usize {
        match self {
            ScNode::Leaf { .. } => 0,
            ScNode::Internal { children, .. } => {
                1 + children.iter().map(ScNode::height).max().unwrap_or(0)
            }
        }
    }

    /// Vertex ids of the descendant leaves, in tree order.
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_vertices(&mut out);
        out
    }

    fn collect_vertices(&self, out: &mut Vec<usize>) {
        match self {
            ScNode::Leaf { vertex } => out.push(*vertex),
            ScNode::Internal { children, .. } => {
                children.iter().for_each(|c| c.collect_vertices(out))
            }
        }
    }

    fn validate(&self) -> Result<BTreeSet<usize>> {
        match self {
            ScNode::Leaf { vertex } => Ok(BTreeSet::from([*vertex])),
            ScNode::Internal { x, children } => {
                if children.is_empty() {
                    return Err(Error::validation("internal SC node without children"));
                }
                let mut below = BTreeSet::new();
                for c in children {
                    let sub = c.validate()?;
                    let before = below.len() + sub.len();
                    below.extend(sub);
                    if below.len() != before {
                        return Err(Error::validation("duplicate vertex id among SC leaves"));
                    }
                }
                let xs: BTreeSet<usize> = x.iter().copied().collect();
                if xs.len() != x.len() {
                    return Err(Error::validation("complement set lists a vertex twice"));
                }
                if let Some(v) = xs.difference(&below).next() {
                    return Err(Error::validation(format!(
                        "complement set contains {v}, which is not a descendant leaf"
                    )));
                }
                Ok(below)
            }
        }
    }

    /// Writes this node's graph into `g`, which must already hold every
    /// descendant id and no edges among them.
    fn build_into(&self, g: &mut Graph) {
        if let ScNode::Internal { x, children } = self {
            for c in children {
                c.build_into(g);
            }
            *g = g.complement_on_subset(x).expect("validated ids");
        }
    }

    fn canonicalize(&mut self) {
        if let ScNode::Internal { x, children } = self {
            x.sort_unstable();
            for c in children.iter_mut() {
                c.canonicalize();
            }
            children.sort_by_cached_key(|c| c.vertices().into_iter().min());
        }
    }
}

/// A validated SC-tree whose leaves carry the ids `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScTree {
    root: ScNode,
}

impl ScTree {
    pub fn new(root: ScNode) -> Result<Self> {
        let ids = root.validate()?;
        if ids.iter().copied().ne(0..ids.len()) {
            return Err(Error::validation("SC leaves must carry the ids 0..n"));
        }
        Ok(ScTree { root })
    }

    pub fn root(&self) -> &ScNode {
        &self.root
    }

    pub fn height(&self) -> usize {
        self.root.height()
    }

    pub fn vertex_count(&self) -> usize {
        self.root.vertices().len()
    }

    /// Children-sorted copy (by smallest descendant id), `X` sets sorted.
    pub fn canonical(&self) -> ScTree {
        let mut root = self.root.clone();
        root.canonicalize();
        ScTree { root }
    }
}

/// Graph built by the tree, bottom-up.
pub fn evaluate_sc(t: &ScTree) -> Graph {
    let mut g = Graph::new(t.vertex_count());
    t.root.build_into(&mut g);
    g
}

/// Pads every leaf with a chain of `X = ∅` nodes so that all leaves sit at
/// depth `target`. The graph is unchanged.
pub fn pad_sc(t: &ScTree, target: usize) -> Result<ScTree> {
    fn pad(node: &ScNode, remaining: usize) -> ScNode {
        match node {
            ScNode::Leaf { .. } if remaining == 0 => node.clone(),
            ScNode::Leaf { .. } => ScNode::internal([], vec![pad(node, remaining - 1)]),
            ScNode::Internal { x, children } => ScNode::Internal {
                x: x.clone(),
                children: children.iter().map(|c| pad(c, remaining - 1)).collect(),
            },
        }
    }
    if target < t.height() {
        return Err(Error::domain(format!(
            "cannot pad a tree of height {} to {target}",
            t.height()
        )));
    }
    ScTree::new(pad(&t.root, target))
}

pub fn write_sc_tree(t: &ScTree) -> String {
    let mut s = serde_json::to_string_pretty(&t.canonical().root).expect("serializable");
    s.push('\n');
    s
}

pub fn read_sc_tree(text: &str) -> Result<ScTree> {
    let root: ScNode =
        serde_json::from_str(text).map_err(|e| Error::format(format!("SC-tree: {e}")))?;
    ScTree::new(root)
}
