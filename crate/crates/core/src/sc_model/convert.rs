//! Conversions between tree-models and SC-trees.

use std::collections::{BTreeMap, BTreeSet};

use super::{pad_sc, ScNode, ScTree};
use crate::error::{Error, Result};
use crate::tree_model::{Leaf, RootedTree, Signature, TreeModel};

/// Colour sets to complement so that exactly the colour pairs `(i, j)` with
/// `(i, j, level) ∈ S` get flipped.
///
/// Complementing on `X^i ∪ X^j` flips the `i`–`j` pairs together with the
/// `i`–`i` and `j`–`j` pairs; the latter are repaired by single-colour
/// complements. Complements commute, so each single-colour set is needed only
/// when its total count is odd, leaving at most `m + C(m, 2)` sets.
pub fn complement_schedule(signature: &Signature, colors: usize, level: usize) -> Vec<Vec<usize>> {
    let mut ops = Vec::new();
    for i in 1..=colors {
        let mut parity = signature.contains(i, i, level);
        for j in (1..=colors).filter(|&j| j != i) {
            parity ^= signature.contains(i, j, level);
        }
        if parity {
            ops.push(vec![i]);
        }
        for j in i + 1..=colors {
            if signature.contains(i, j, level) {
                ops.push(vec![i, j]);
            }
        }
    }
    ops
}

/// SC-tree of height at most `d·m(m+1)` building the same graph as `model`.
pub fn tm_to_sc(model: &TreeModel) -> Result<ScTree> {
    if model.vertex_count() == 0 {
        return Err(Error::domain("the empty graph has no SC-tree"));
    }
    let (root, _) = build(model, model.tree().root());
    Ok(ScTree::new(root).expect("construction keeps ids and subsets valid"))
}

/// Returns the SC node for the subtree at `v` and its `(vertex, colour)` leaves.
fn build(model: &TreeModel, v: usize) -> (ScNode, Vec<(usize, usize)>) {
    if let Some(Leaf { vertex, color }) = model.leaf(v) {
        return (ScNode::leaf(vertex), vec![(vertex, color)]);
    }
    let level = model.depth() - model.tree().depth(v);
    let ops = complement_schedule(model.signature(), model.colors(), level);
    let pick = |leaves: &[(usize, usize)], colors: &[usize]| -> Vec<usize> {
        leaves
            .iter()
            .filter(|(_, c)| colors.contains(c))
            .map(|&(x, _)| x)
            .collect()
    };

    let mut all_leaves = Vec::new();
    let mut wrapped = Vec::new();
    for &c in model.tree().children(v) {
        let (mut node, leaves) = build(model, c);
        for op in &ops {
            let x = pick(&leaves, op);
            // complementing fewer than two vertices changes nothing
            if x.len() >= 2 {
                node = ScNode::internal(x, vec![node]);
            }
        }
        all_leaves.extend(leaves);
        wrapped.push(node);
    }

    let mut global: Vec<Vec<usize>> = ops
        .iter()
        .map(|op| pick(&all_leaves, op))
        .filter(|x| x.len() >= 2)
        .collect();
    let first = if global.is_empty() {
        Vec::new()
    } else {
        global.remove(0)
    };
    let mut node = ScNode::internal(first, wrapped);
    for x in global {
        node = ScNode::internal(x, vec![node]);
    }
    (node, all_leaves)
}

/// Tree-model of depth `height(t)` using at most `2^height` colours.
///
/// After padding all leaves to depth `k`, leaf `v` gets the bit vector
/// `a_1..a_k` with `a_i = 1` iff `v` lies in the complement set of its
/// ancestor at distance `i`. A pair meeting at distance `ℓ` from the leaves is
/// adjacent iff `Σ_{i≥ℓ} a_i(u)·a_i(v)` is odd. Colours are renumbered to the
/// used bit vectors in increasing order.
pub fn sc_to_tm(t: &ScTree) -> TreeModel {
    let k = t.height();
    let padded = pad_sc(t, k).expect("padding to own height");
    let mut tree = RootedTree::new();
    let mut leaf_bits: Vec<Option<(usize, u64)>> = vec![None];
    let mut path: Vec<BTreeSet<usize>> = Vec::new();
    walk(padded.root(), 0, &mut tree, &mut leaf_bits, &mut path, k);

    let used: BTreeSet<u64> = leaf_bits.iter().flatten().map(|&(_, b)| b).collect();
    let color_of: BTreeMap<u64, usize> =
        used.iter().enumerate().map(|(i, &b)| (b, i + 1)).collect();
    let leaves: Vec<Option<Leaf>> = leaf_bits
        .iter()
        .map(|lb| {
            lb.map(|(vertex, bits)| Leaf {
                vertex,
                color: color_of[&bits],
            })
        })
        .collect();

    let mut sig = Signature::new();
    for (&a, &ca) in &color_of {
        for (&b, &cb) in &color_of {
            for level in 1..=k {
                // bits i-1 for i in level..=k
                let mask = (!0u64 >> (64 - k)) & (!0u64 << (level - 1));
                if (a & b & mask).count_ones() % 2 == 1 {
                    sig.insert(ca, cb, level);
                }
            }
        }
    }
    let mut model = TreeModel::new(tree, k, used.len().max(1), leaves, sig)
        .expect("construction yields a valid model");
    model.minimize_signature();
    model
}

fn walk(
    node: &ScNode,
    at: usize,
    tree: &mut RootedTree,
    leaf_bits: &mut Vec<Option<(usize, u64)>>,
    path: &mut Vec<BTreeSet<usize>>,
    k: usize,
) {
    match node {
        ScNode::Leaf { vertex } => {
            // path[k - i] is the ancestor at distance i
            let mut bits = 0u64;
            for i in 1..=k {
                if path[k - i].contains(vertex) {
                    bits |= 1 << (i - 1);
                }
            }
            leaf_bits[at] = Some((*vertex, bits));
        }
        ScNode::Internal { x, children } => {
            path.push(x.iter().copied().collect());
            for c in children {
                let id = tree.add_child(at);
                leaf_bits.push(None);
                walk(c, id, tree, leaf_bits, path, k);
            }
            path.pop();
        }
    }
}
