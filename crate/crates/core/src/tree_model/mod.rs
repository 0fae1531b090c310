//! Tree-models: a rooted tree of uniform leaf depth `d` whose leaves are the
//! vertices of a graph, each leaf coloured from `1..=m`, together with a
//! symmetric signature `S ⊆ [m]² × [d]`. Leaves `u`, `v` at tree distance
//! `2ℓ` are adjacent iff `(colour(u), colour(v), ℓ) ∈ S`.

mod copied;
mod format;
mod reduce;
mod tree;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use copied::{hang_leaves, verify_k_copied, CopiedTreeModel};
pub use format::{read_tree_model, write_tree_model, ModelFile, ModelNode};
pub use reduce::{
    colour_code, read_colored_tree, reduce_tree, write_colored_tree, ClassCut, ColoredTree,
    Reduction,
};
pub use tree::{grow_leaf, RootedTree};

/// Vertex and colour carried by a leaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Leaf {
    pub vertex: usize,
    pub color: usize,
}

/// A symmetric set of `(i, j, ℓ)` triples.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature(BTreeSet<(usize, usize, usize)>);

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    /// Builds a signature from raw triples; fails if the set is not symmetric.
    pub fn from_triples<I: IntoIterator<Item = (usize, usize, usize)>>(triples: I) -> Result<Self> {
        let set: BTreeSet<_> = triples.into_iter().collect();
        if let Some(&(i, j, l)) = set.iter().find(|&&(i, j, l)| !set.contains(&(j, i, l))) {
            return Err(Error::validation(format!(
                "signature contains ({i},{j},{l}) but not ({j},{i},{l})"
            )));
        }
        Ok(Signature(set))
    }

    /// Inserts `(i, j, ℓ)` together with `(j, i, ℓ)`.
    pub fn insert(&mut self, i: usize, j: usize, level: usize) {
        self.0.insert((i, j, level));
        self.0.insert((j, i, level));
    }

    pub fn remove(&mut self, i: usize, j: usize, level: usize) {
        self.0.remove(&(i, j, level));
        self.0.remove(&(j, i, level));
    }

    pub fn contains(&self, i: usize, j: usize, level: usize) -> bool {
        self.0.contains(&(i, j, level))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Why no signature exists: two leaf pairs fall in the same `(i, j, ℓ)` class
/// but disagree on adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureConflict {
    pub class: (usize, usize, usize),
    pub adjacent: (usize, usize),
    pub non_adjacent: (usize, usize),
}

/// A tree-model with `m` colours and depth `d`.
///
/// Equality is structural: two models are equal when their canonical
/// serializations agree, regardless of internal node numbering.
#[derive(Debug, Clone)]
pub struct TreeModel {
    tree: RootedTree,
    depth: usize,
    colors: usize,
    /// Indexed by tree node; `Some` exactly on leaves.
    leaves: Vec<Option<Leaf>>,
    signature: Signature,
}

impl TreeModel {
    /// Assembles and validates a model.
    pub fn new(
        tree: RootedTree,
        depth: usize,
        colors: usize,
        leaves: Vec<Option<Leaf>>,
        signature: Signature,
    ) -> Result<Self> {
        let model = TreeModel {
            tree,
            depth,
            colors,
            leaves,
            signature,
        };
        model.validate()?;
        Ok(model)
    }

    /// The single-leaf model of `K₁` with depth 0.
    pub fn single_vertex(colors: usize) -> Self {
        TreeModel {
            tree: RootedTree::new(),
            depth: 0,
            colors: colors.max(1),
            leaves: vec![Some(Leaf {
                vertex: 0,
                color: 1,
            })],
            signature: Signature::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let t = &self.tree;
        if self.leaves.len() != t.node_count() {
            return Err(Error::validation("leaf table does not match the tree"));
        }
        let mut vertices = BTreeSet::new();
        for v in 0..t.node_count() {
            match (t.is_leaf(v), self.leaves[v]) {
                (true, Some(leaf)) => {
                    if t.depth(v) != self.depth {
                        return Err(Error::validation(format!(
                            "leaf at depth {} in a model of depth {}",
                            t.depth(v),
                            self.depth
                        )));
                    }
                    if leaf.color == 0 || leaf.color > self.colors {
                        return Err(Error::validation(format!(
                            "colour {} outside 1..={}",
                            leaf.color, self.colors
                        )));
                    }
                    if !vertices.insert(leaf.vertex) {
                        return Err(Error::validation(format!(
                            "vertex {} appears on two leaves",
                            leaf.vertex
                        )));
                    }
                }
                // The empty model: a bare root.
                (true, None) if v == 0 && t.node_count() == 1 => {}
                (true, None) => {
                    return Err(Error::validation(format!(
                        "leaf node {v} carries no vertex"
                    )))
                }
                (false, Some(_)) => {
                    return Err(Error::validation(format!(
                        "internal node {v} carries a vertex"
                    )))
                }
                (false, None) => {}
            }
        }
        if vertices.iter().copied().ne(0..vertices.len()) {
            return Err(Error::validation("leaf vertices are not 0..n"));
        }
        for (i, j, l) in self.signature.iter() {
            if i == 0 || j == 0 || i > self.colors || j > self.colors || l == 0 || l > self.depth {
                return Err(Error::validation(format!(
                    "signature triple ({i},{j},{l}) outside [{}]²×[{}]",
                    self.colors, self.depth
                )));
            }
        }
        Signature::from_triples(self.signature.iter())?;
        Ok(())
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn leaf(&self, node: usize) -> Option<Leaf> {
        self.leaves[node]
    }

    pub fn leaf_table(&self) -> &[Option<Leaf>] {
        &self.leaves
    }

    pub fn vertex_count(&self) -> usize {
        self.leaves.iter().flatten().count()
    }

    /// Leaf nodes in left-to-right order.
    pub fn leaf_nodes(&self) -> Vec<usize> {
        self.tree
            .leaves()
            .into_iter()
            .filter(|&v| self.leaves[v].is_some())
            .collect()
    }

    /// Number of distinct colours actually used on leaves.
    pub fn used_colors(&self) -> usize {
        self.leaves
            .iter()
            .flatten()
            .map(|l| l.color)
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Level `ℓ` of a leaf pair, i.e. half their tree distance.
    pub fn level(&self, a: usize, b: usize) -> usize {
        self.depth - self.tree.depth(self.tree.lca(a, b))
    }

    /// The graph this model describes.
    pub fn realize(&self) -> Graph {
        let nodes = self.leaf_nodes();
        let mut g = Graph::new(nodes.len());
        for (i, &a) in nodes.iter().enumerate() {
            let la = self.leaves[a].unwrap();
            for &b in &nodes[i + 1..] {
                let lb = self.leaves[b].unwrap();
                if self
                    .signature
                    .contains(la.color, lb.color, self.level(a, b))
                {
                    g.add_edge(la.vertex, lb.vertex).expect("vertices are 0..n");
                }
            }
        }
        g
    }

    /// True iff the model realizes exactly `g` (same ids, same edges).
    pub fn verify(&self, g: &Graph) -> bool {
        self.realize() == g.without_labels()
    }

    /// Drops signature triples with no witnessing leaf pair.
    pub fn minimize_signature(&mut self) {
        let nodes = self.leaf_nodes();
        let mut witnessed = BTreeSet::new();
        for (i, &a) in nodes.iter().enumerate() {
            for &b in &nodes[i + 1..] {
                let (ca, cb) = (self.leaves[a].unwrap().color, self.leaves[b].unwrap().color);
                let l = self.level(a, b);
                witnessed.insert((ca, cb, l));
                witnessed.insert((cb, ca, l));
            }
        }
        self.signature.0.retain(|t| witnessed.contains(t));
    }

    /// Model of the subgraph induced on `keep`; vertices renumbered densely
    /// in increasing order of their old ids, branches without kept leaves pruned.
    pub fn restrict(&self, keep: &[usize]) -> Result<TreeModel> {
        let n = self.vertex_count();
        let keep: BTreeSet<usize> = keep.iter().copied().collect();
        if let Some(&v) = keep.iter().find(|&&v| v >= n) {
            return Err(Error::domain(format!("vertex {v} not in the model")));
        }
        let rename: BTreeMap<usize, usize> =
            keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut alive = vec![false; self.tree.node_count()];
        for v in self.tree.preorder().into_iter().rev() {
            alive[v] = match self.leaves[v] {
                Some(l) => keep.contains(&l.vertex),
                None => self.tree.children(v).iter().any(|&c| alive[c]),
            };
        }
        let mut tree = RootedTree::new();
        let mut leaves = vec![None];
        if alive[0] {
            self.copy_alive(0, 0, &alive, &rename, &mut tree, &mut leaves);
        }
        TreeModel::new(
            tree,
            self.depth,
            self.colors,
            leaves,
            self.signature.clone(),
        )
    }

    fn copy_alive(
        &self,
        old: usize,
        new: usize,
        alive: &[bool],
        rename: &BTreeMap<usize, usize>,
        tree: &mut RootedTree,
        leaves: &mut Vec<Option<Leaf>>,
    ) {
        if let Some(l) = self.leaves[old] {
            leaves[new] = Some(Leaf {
                vertex: rename[&l.vertex],
                color: l.color,
            });
        }
        for &c in self.tree.children(old) {
            if alive[c] {
                let id = tree.add_child(new);
                leaves.push(None);
                self.copy_alive(c, id, alive, rename, tree, leaves);
            }
        }
    }

    /// Same tree and colouring with the complementary signature; realizes the
    /// complement graph.
    pub fn complement_model(&self) -> TreeModel {
        let mut sig = Signature::new();
        for i in 1..=self.colors {
            for j in 1..=self.colors {
                for l in 1..=self.depth {
                    if !self.signature.contains(i, j, l) {
                        sig.0.insert((i, j, l));
                    }
                }
            }
        }
        TreeModel {
            signature: sig,
            ..self.clone()
        }
    }

    /// Inserts a new root above the old one; depth grows by one and every leaf
    /// pair keeps its level.
    pub fn lift_depth(&self) -> TreeModel {
        let tree = self.tree.lifted();
        let mut leaves = vec![None];
        leaves.extend(self.leaves.iter().copied());
        TreeModel {
            tree,
            depth: self.depth + 1,
            colors: self.colors,
            leaves,
            signature: self.signature.clone(),
        }
    }

    /// Same model with a larger declared colour count.
    pub fn with_colors(&self, colors: usize) -> Result<TreeModel> {
        let m = TreeModel {
            colors,
            ..self.clone()
        };
        m.validate()?;
        Ok(m)
    }
}

impl PartialEq for TreeModel {
    fn eq(&self, other: &Self) -> bool {
        ModelFile::from_model(self) == ModelFile::from_model(other)
    }
}

impl Eq for TreeModel {}

/// The unique signature making `(tree, leaves)` a model of `g`, restricted to
/// witnessed classes, or the first conflicting pair of pairs.
pub fn infer_signature(
    tree: &RootedTree,
    leaves: &[Option<Leaf>],
    depth: usize,
    g: &Graph,
) -> Result<std::result::Result<Signature, SignatureConflict>> {
    if leaves.len() != tree.node_count() {
        return Err(Error::domain("leaf table does not match the tree"));
    }
    let nodes: Vec<usize> = (0..tree.node_count())
        .filter(|&v| leaves[v].is_some())
        .collect();
    let verts: BTreeSet<usize> = nodes.iter().map(|&v| leaves[v].unwrap().vertex).collect();
    if verts.len() != nodes.len() || verts.len() != g.n() || verts.iter().copied().ne(0..g.n()) {
        return Err(Error::domain(
            "tree leaves do not biject onto the graph's vertices",
        ));
    }
    for &v in &nodes {
        if tree.depth(v) != depth {
            return Err(Error::domain(format!(
                "leaf node {v} is not at depth {depth}"
            )));
        }
    }
    // class -> (adjacent?, witnessing pair)
    type Class = (usize, usize, usize);
    let mut seen: BTreeMap<Class, (bool, (usize, usize))> = BTreeMap::new();
    for (i, &a) in nodes.iter().enumerate() {
        let la = leaves[a].unwrap();
        for &b in &nodes[i + 1..] {
            let lb = leaves[b].unwrap();
            let level = depth - tree.depth(tree.lca(a, b));
            let (ci, cj, pair) = if la.color <= lb.color {
                (la.color, lb.color, (la.vertex, lb.vertex))
            } else {
                (lb.color, la.color, (lb.vertex, la.vertex))
            };
            let class = (ci, cj, level);
            let adj = g.has_edge(la.vertex, lb.vertex);
            match seen.get(&class) {
                None => {
                    seen.insert(class, (adj, pair));
                }
                Some(&(prev, other)) if prev != adj => {
                    let (adjacent, non_adjacent) = if adj { (pair, other) } else { (other, pair) };
                    return Ok(Err(SignatureConflict {
                        class,
                        adjacent,
                        non_adjacent,
                    }));
                }
                Some(_) => {}
            }
        }
    }
    let mut sig = Signature::new();
    for (&(i, j, l), &(adj, _)) in &seen {
        if adj {
            sig.insert(i, j, l);
        }
    }
    Ok(Ok(sig))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        biclique_model, clique_model, make_biclique, make_clique, make_path, path_model,
    };

    fn star(colors: &[usize]) -> (RootedTree, Vec<Option<Leaf>>) {
        let mut t = RootedTree::new();
        let mut leaves = vec![None];
        for (v, &c) in colors.iter().enumerate() {
            t.add_child(0);
            leaves.push(Some(Leaf {
                vertex: v,
                color: c,
            }));
        }
        (t, leaves)
    }

    #[test]
    fn clique_and_biclique_models() {
        assert_eq!(clique_model(5).realize(), make_clique(5));
        assert_eq!(biclique_model(2, 3).realize(), make_biclique(2, 3));
    }

    #[test]
    fn empty_signature_gives_edgeless_graph() {
        let (t, leaves) = star(&[1, 2, 1, 2]);
        let m = TreeModel::new(t, 1, 2, leaves, Signature::new()).unwrap();
        assert_eq!(m.realize(), Graph::new(4));
    }

    #[test]
    fn verify_examples() {
        let k5 = make_clique(5);
        assert!(clique_model(5).verify(&k5));
        let mut minus = k5.clone();
        minus.remove_edge(1, 3);
        assert!(!clique_model(5).verify(&minus));
        assert!(path_model(1).unwrap().verify(&make_path(2)));
    }

    #[test]
    fn malformed_models_rejected() {
        let (t, leaves) = star(&[1, 1]);
        assert!(TreeModel::new(t.clone(), 2, 1, leaves.clone(), Signature::new()).is_err());
        let asym = Signature::from_triples([(1, 2, 1)]);
        assert!(asym.is_err());
        let mut bad = leaves.clone();
        bad[2] = Some(Leaf {
            vertex: 0,
            color: 1,
        });
        assert!(TreeModel::new(t.clone(), 1, 1, bad, Signature::new()).is_err());
        let mut s = Signature::new();
        s.insert(1, 3, 1);
        assert!(TreeModel::new(t, 1, 2, leaves, s).is_err());
    }

    #[test]
    fn infer_on_stars() {
        let (t, leaves) = star(&[1, 1, 1]);
        let sig = infer_signature(&t, &leaves, 1, &make_clique(3))
            .unwrap()
            .unwrap();
        assert_eq!(sig.iter().collect::<Vec<_>>(), vec![(1, 1, 1)]);
        let conflict = infer_signature(&t, &leaves, 1, &make_path(2))
            .unwrap()
            .unwrap_err();
        assert_eq!(conflict.class, (1, 1, 1));
        assert!(make_path(2).has_edge(conflict.adjacent.0, conflict.adjacent.1));
        assert!(!make_path(2).has_edge(conflict.non_adjacent.0, conflict.non_adjacent.1));
    }

    #[test]
    fn infer_recovers_path_model_signature() {
        let m = path_model(2).unwrap();
        let sig = infer_signature(m.tree(), m.leaf_table(), m.depth(), &make_path(8))
            .unwrap()
            .unwrap();
        assert_eq!(&sig, m.signature());
    }

    #[test]
    fn infer_rejects_mismatched_graph() {
        let (t, leaves) = star(&[1, 1, 1]);
        assert!(infer_signature(&t, &leaves, 1, &make_clique(4)).is_err());
    }

    #[test]
    fn restrict_examples() {
        let k5 = clique_model(5);
        assert_eq!(k5.restrict(&[0, 1, 2, 3, 4]).unwrap(), k5);
        assert_eq!(k5.restrict(&[1, 3, 4]).unwrap().realize(), make_clique(3));
        let p8 = path_model(2).unwrap();
        let keep = [0, 1, 2, 3, 4];
        let expected = p8.realize().induced_subgraph(&keep).unwrap();
        let r = p8.restrict(&keep).unwrap();
        assert_eq!(r.realize(), expected);
        assert_eq!(expected, make_path(4));
        assert_eq!(r.depth(), p8.depth());
    }

    #[test]
    fn restrict_to_nothing() {
        let r = clique_model(3).restrict(&[]).unwrap();
        assert_eq!(r.vertex_count(), 0);
        assert_eq!(r.realize(), Graph::new(0));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(clique_model(4).complement_model().realize(), Graph::new(4));
        let m = biclique_model(3, 3);
        assert_eq!(
            m.complement_model().complement_model().realize(),
            m.realize()
        );
        let two_triangles = make_clique(3).disjoint_union(&make_clique(3));
        assert_eq!(m.complement_model().realize(), two_triangles);
    }

    #[test]
    fn lift_examples() {
        let lifted = clique_model(4).lift_depth();
        assert_eq!(lifted.depth(), 2);
        assert_eq!(lifted.realize(), make_clique(4));
        let single = TreeModel::single_vertex(1).lift_depth();
        assert_eq!(single.depth(), 1);
        assert_eq!(single.realize(), Graph::new(1));
    }
}
