//! k-copied tree-models: ordinary tree-models of depth `d + 1` in which every
//! node at depth `d` has at most `k` leaf children.

use super::{Signature, TreeModel};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopiedTreeModel {
    model: TreeModel,
    depth: usize,
    colors: usize,
    copies: usize,
}

impl CopiedTreeModel {
    pub fn new(model: TreeModel, depth: usize, colors: usize, copies: usize) -> Result<Self> {
        if !verify_k_copied(&model, depth, colors, copies) {
            return Err(Error::validation(format!(
                "model is not a {copies}-copied tree-model of {colors} colours and depth {depth}"
            )));
        }
        Ok(CopiedTreeModel {
            model,
            depth,
            colors,
            copies,
        })
    }

    pub fn model(&self) -> &TreeModel {
        &self.model
    }

    pub fn into_model(self) -> TreeModel {
        self.model
    }

    /// `(d, m, k)`.
    pub fn parameters(&self) -> (usize, usize, usize) {
        (self.depth, self.colors, self.copies)
    }
}

/// Pushes every leaf one level down so that it hangs alone under its old
/// position; levels shift by one, so the realized graph is unchanged.
pub fn hang_leaves(model: &TreeModel) -> TreeModel {
    let mut tree = model.tree().clone();
    let mut leaves = model.leaf_table().to_vec();
    for v in model.leaf_nodes() {
        let child = tree.add_child(v);
        let leaf = leaves[v].take();
        leaves.push(leaf);
        debug_assert_eq!(leaves.len(), child + 1);
    }
    let sig = Signature::from_triples(model.signature().iter().map(|(i, j, l)| (i, j, l + 1)))
        .expect("shift keeps symmetry");
    TreeModel::new(tree, model.depth() + 1, model.colors(), leaves, sig)
        .expect("hanging leaves keeps a valid model")
}

/// True iff `model` has depth `d + 1`, uses at most `m` colours and every
/// depth-`d` node has at most `k` leaf children.
pub fn verify_k_copied(model: &TreeModel, d: usize, m: usize, k: usize) -> bool {
    if model.depth() != d + 1 || model.validate().is_err() {
        return false;
    }
    let within_colors = model.leaf_table().iter().flatten().all(|l| l.color <= m);
    let t = model.tree();
    within_colors
        && (0..t.node_count())
            .filter(|&v| t.depth(v) == d)
            .all(|v| t.children(v).len() <= k)
}
