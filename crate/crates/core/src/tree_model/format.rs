//! Structured (JSON) tree-model format.
//!
//! ```json
//! {
//!   "depth": 1,
//!   "colors": 1,
//!   "signature": [[1, 1, 1]],
//!   "tree": { "children": [ { "vertex": 0, "color": 1 }, { "vertex": 1, "color": 1 } ] }
//! }
//! ```
//!
//! Internal nodes are `{"children": [...]}`, leaves are `{"vertex": v, "color": c}`.
//! `signature` lists every triple of the (symmetric) set, both orientations,
//! in increasing order. Children are written sorted by their canonical shape
//! code (colours and nesting, no vertex ids) and then by smallest vertex id.
//! Writing the parsed canonical output reproduces it byte for byte.

use serde::{Deserialize, Serialize};

use super::{Leaf, RootedTree, Signature, TreeModel};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelNode {
    Leaf { vertex: usize, color: usize },
    Internal { children: Vec<ModelNode> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub depth: usize,
    pub colors: usize,
    pub signature: Vec<[usize; 3]>,
    pub tree: ModelNode,
}

impl ModelNode {
    fn min_vertex(&self) -> usize {
        match self {
            ModelNode::Leaf { vertex, .. } => *vertex,
            ModelNode::Internal { children } => children
                .iter()
                .map(ModelNode::min_vertex)
                .min()
                .unwrap_or(usize::MAX),
        }
    }

    /// Shape code: colours and nesting only.
    fn shape_code(&self) -> String {
        match self {
            ModelNode::Leaf { color, .. } => format!("c{color}"),
            ModelNode::Internal { children } => {
                let mut codes: Vec<String> = children.iter().map(ModelNode::shape_code).collect();
                codes.sort();
                format!("({})", codes.join(","))
            }
        }
    }

    /// Recursively sorts children into canonical order.
    pub fn canonicalize(&mut self) {
        if let ModelNode::Internal { children } = self {
            for c in children.iter_mut() {
                c.canonicalize();
            }
            children.sort_by_cached_key(|c| (c.shape_code(), c.min_vertex()));
        }
    }
}

impl ModelFile {
    /// Canonical file representation of a model.
    pub fn from_model(model: &TreeModel) -> ModelFile {
        fn build(model: &TreeModel, v: usize) -> ModelNode {
            match model.leaf(v) {
                Some(Leaf { vertex, color }) => ModelNode::Leaf { vertex, color },
                None => ModelNode::Internal {
                    children: model
                        .tree()
                        .children(v)
                        .iter()
                        .map(|&c| build(model, c))
                        .collect(),
                },
            }
        }
        let mut tree = build(model, 0);
        tree.canonicalize();
        ModelFile {
            depth: model.depth(),
            colors: model.colors(),
            signature: model
                .signature()
                .iter()
                .map(|(i, j, l)| [i, j, l])
                .collect(),
            tree,
        }
    }

    /// Builds the model; node ids follow the file's preorder.
    pub fn to_model(&self) -> Result<TreeModel> {
        fn build(
            node: &ModelNode,
            at: usize,
            tree: &mut RootedTree,
            leaves: &mut Vec<Option<Leaf>>,
        ) {
            match node {
                ModelNode::Leaf { vertex, color } => {
                    leaves[at] = Some(Leaf {
                        vertex: *vertex,
                        color: *color,
                    })
                }
                ModelNode::Internal { children } => {
                    for c in children {
                        let id = tree.add_child(at);
                        leaves.push(None);
                        build(c, id, tree, leaves);
                    }
                }
            }
        }
        let mut tree = RootedTree::new();
        let mut leaves = vec![None];
        build(&self.tree, 0, &mut tree, &mut leaves);
        let signature = Signature::from_triples(self.signature.iter().map(|t| (t[0], t[1], t[2])))?;
        TreeModel::new(tree, self.depth, self.colors, leaves, signature)
    }
}

impl TreeModel {
    /// The same model with its arena renumbered in canonical preorder.
    pub fn normalized(&self) -> TreeModel {
        ModelFile::from_model(self)
            .to_model()
            .expect("a valid model stays valid")
    }
}

pub fn write_tree_model(model: &TreeModel) -> String {
    let mut s = serde_json::to_string_pretty(&ModelFile::from_model(model)).expect("serializable");
    s.push('\n');
    s
}

pub fn read_tree_model(text: &str) -> Result<TreeModel> {
    let file: ModelFile =
        serde_json::from_str(text).map_err(|e| Error::format(format!("tree-model: {e}")))?;
    file.to_model()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{clique_model, path_model, subdivided_matching_biclique_model};

    #[test]
    fn round_trip_is_bit_exact() {
        for model in [
            clique_model(3),
            path_model(2).unwrap(),
            subdivided_matching_biclique_model().1,
            TreeModel::single_vertex(1),
        ] {
            let text = write_tree_model(&model);
            let back = read_tree_model(&text).unwrap();
            assert_eq!(back, model);
            assert_eq!(write_tree_model(&back), text);
        }
    }

    #[test]
    fn reader_rejects_garbage() {
        assert!(read_tree_model("{}").is_err());
        let asym = r#"{"depth":1,"colors":2,"signature":[[1,2,1]],"tree":{"children":[{"vertex":0,"color":1},{"vertex":1,"color":2}]}}"#;
        assert!(matches!(read_tree_model(asym), Err(Error::Validation(_))));
        let ragged = r#"{"depth":2,"colors":1,"signature":[],"tree":{"children":[{"vertex":0,"color":1},{"children":[{"vertex":1,"color":1}]}]}}"#;
        assert!(read_tree_model(ragged).is_err());
    }

    #[test]
    fn compact_input_is_accepted() {
        let text = r#"{"depth":1,"colors":1,"signature":[[1,1,1]],"tree":{"children":[{"vertex":1,"color":1},{"vertex":0,"color":1}]}}"#;
        let m = read_tree_model(text).unwrap();
        assert_eq!(m, clique_model(2));
    }
}
