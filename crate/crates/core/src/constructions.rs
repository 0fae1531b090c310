//! Generators for standard graphs and their tree-models.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree_model::{Leaf, RootedTree, Signature, TreeModel};

/// Path of length `len`, i.e. on `len + 1` vertices numbered along the path.
pub fn make_path(len: usize) -> Graph {
    Graph::from_edges(len + 1, (0..len).map(|i| (i, i + 1))).expect("valid path")
}

/// Cycle on `n ≥ 3` vertices; smaller `n` gives the path on `n` vertices.
pub fn make_cycle(n: usize) -> Graph {
    if n < 3 {
        return if n == 0 {
            Graph::new(0)
        } else {
            make_path(n - 1)
        };
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

pub fn make_clique(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        .expect("valid clique")
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn make_biclique(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
        .expect("valid biclique")
}

/// `n` disjoint edges `{2i, 2i+1}`.
pub fn perfect_matching(n: usize) -> Graph {
    Graph::from_edges(2 * n, (0..n).map(|i| (2 * i, 2 * i + 1))).expect("valid matching")
}

/// Depth-1 model: every vertex a leaf of the root, colours given per vertex.
fn star_model(colors: &[usize], m: usize, triples: &[(usize, usize)]) -> TreeModel {
    let mut tree = RootedTree::new();
    let mut leaves = vec![None];
    for (vertex, &color) in colors.iter().enumerate() {
        tree.add_child(0);
        leaves.push(Some(Leaf { vertex, color }));
    }
    let mut sig = Signature::new();
    for &(i, j) in triples {
        sig.insert(i, j, 1);
    }
    let mut model = TreeModel::new(tree, 1, m, leaves, sig).expect("valid star model");
    model.minimize_signature();
    model
}

/// `K_n` with one colour and depth 1.
pub fn clique_model(n: usize) -> TreeModel {
    star_model(&vec![1; n], 1, &[(1, 1)])
}

/// `K_{a,b}` with two colours and depth 1, numbered as in [`make_biclique`].
pub fn biclique_model(a: usize, b: usize) -> TreeModel {
    let colors: Vec<usize> = (0..a).map(|_| 1).chain((0..b).map(|_| 2)).collect();
    star_model(&colors, 2, &[(1, 2)])
}

/// Depth-2 model of [`perfect_matching`]: one depth-1 node per matched pair,
/// its two leaves coloured 1 and 2.
pub fn perfect_matching_model(n: usize) -> TreeModel {
    let mut tree = RootedTree::new();
    let mut leaves = vec![None];
    for i in 0..n {
        let t = tree.add_child(0);
        leaves.push(None);
        for (k, color) in [1, 2].into_iter().enumerate() {
            tree.add_child(t);
            leaves.push(Some(Leaf {
                vertex: 2 * i + k,
                color,
            }));
        }
    }
    let mut sig = Signature::new();
    sig.insert(1, 2, 1);
    let mut model = TreeModel::new(tree, 2, 2, leaves, sig).expect("valid matching model");
    model.minimize_signature();
    model
}

/// `K_{3,3}` with the matching `a_i b_i` subdivided by `s_i`, and a model of
/// depth 2 with 3 colours.
///
/// Vertices: `a_i = i`, `b_i = 3 + i`, `s_i = 6 + i`. Each triple
/// `(a_i, s_i, b_i)` hangs under its own depth-1 node with colours 1, 2, 3.
/// Colours 1–2 and 2–3 are adjacent inside a node, colours 1–3 across nodes.
pub fn subdivided_matching_biclique_model() -> (Graph, TreeModel) {
    let mut g = Graph::new(9);
    for i in 0..3 {
        for j in (0..3).filter(|&j| j != i) {
            g.add_edge(i, 3 + j).unwrap();
        }
        g.add_edge(i, 6 + i).unwrap();
        g.add_edge(6 + i, 3 + i).unwrap();
    }
    let mut tree = RootedTree::new();
    let mut leaves = vec![None];
    for i in 0..3 {
        let t = tree.add_child(0);
        leaves.push(None);
        for (vertex, color) in [(i, 1), (6 + i, 2), (3 + i, 3)] {
            tree.add_child(t);
            leaves.push(Some(Leaf { vertex, color }));
        }
    }
    let mut sig = Signature::new();
    sig.insert(1, 2, 1);
    sig.insert(2, 3, 1);
    sig.insert(1, 3, 2);
    let model = TreeModel::new(tree, 2, 3, leaves, sig).expect("valid model");
    (g, model)
}

/// Working copy of a path model: a tree, a colour per leaf node, and the
/// leaves listed in path order.
struct PathDraft {
    tree: RootedTree,
    color: Vec<usize>,
    path: Vec<usize>,
    signature: Signature,
    colors: usize,
}

impl PathDraft {
    /// One colour, depth 3, path on 3 vertices. The two ends share a depth-1
    /// node (level 2, non-adjacent) and each hangs alone under its parent;
    /// the middle vertex sits in the other depth-1 subtree (level 3).
    fn base() -> PathDraft {
        let mut tree = RootedTree::new();
        let left = tree.add_child(0);
        let right = tree.add_child(0);
        let a = tree.add_child(left);
        let end1 = tree.add_child(a);
        let b = tree.add_child(left);
        let end2 = tree.add_child(b);
        let c = tree.add_child(right);
        let mid = tree.add_child(c);
        let mut color = vec![0; tree.node_count()];
        for v in [end1, end2, mid] {
            color[v] = 1;
        }
        let mut signature = Signature::new();
        signature.insert(1, 1, 3);
        PathDraft {
            tree,
            color,
            path: vec![end1, mid, end2],
            signature,
            colors: 1,
        }
    }

    fn depth(&self) -> usize {
        2 * self.colors + 1
    }

    fn add_child(&mut self, parent: usize, color: usize) -> usize {
        let id = self.tree.add_child(parent);
        self.color.push(color);
        id
    }

    /// Copies the subtree rooted at the root of `other` under `parent`;
    /// returns the old-to-new node map.
    fn graft(&mut self, other: &PathDraft, parent: usize) -> Vec<usize> {
        let mut map = vec![usize::MAX; other.tree.node_count()];
        map[0] = self.add_child(parent, other.color[0]);
        for v in other.tree.preorder().into_iter().skip(1) {
            map[v] = self.add_child(map[other.tree.parent(v).unwrap()], other.color[v]);
        }
        map
    }

    /// One more colour, depth + 2, path length `2(ℓ + 1) + 2`.
    fn double(self) -> PathDraft {
        let m = self.colors;
        let new_color = m + 1;
        // sibling u1 of the end u = last path vertex
        let mut u = self;
        let end = *u.path.last().unwrap();
        let u1 = u.add_child(u.tree.parent(end).unwrap(), new_color);
        u.path.push(u1);
        let end_color = u.color[end];
        u.signature.insert(end_color, new_color, 1);

        let mut out = PathDraft {
            tree: RootedTree::new(),
            color: vec![0],
            path: Vec::new(),
            signature: u.signature.clone(),
            colors: new_color,
        };
        let q = out.add_child(0, 0);
        let first = out.graft(&u, q);
        let second = out.graft(&u, q);
        let depth = out.depth();
        let mut w = 0;
        for _ in 0..depth {
            w = out.add_child(w, 0);
        }
        out.color[w] = new_color;
        out.signature.insert(new_color, new_color, depth);
        out.path = u.path.iter().map(|&v| first[v]).collect();
        out.path.push(w);
        out.path.extend(u.path.iter().rev().map(|&v| second[v]));
        out
    }

    fn into_model(self) -> TreeModel {
        let mut leaves = vec![None; self.tree.node_count()];
        for (vertex, &node) in self.path.iter().enumerate() {
            leaves[node] = Some(Leaf {
                vertex,
                color: self.color[node],
            });
        }
        let depth = self.depth();
        TreeModel::new(self.tree, depth, self.colors, leaves, self.signature)
            .expect("path construction yields a valid model")
    }
}

/// Model of the path of length `3·2^m − 4` with `m` colours and depth
/// `2m + 1`; vertices are numbered along the path and both end leaves are
/// only children.
pub fn path_model(m: usize) -> Result<TreeModel> {
    path_model_with_caps(m, &Caps::default())
}

pub fn path_model_with_caps(m: usize, caps: &Caps) -> Result<TreeModel> {
    if m == 0 || m > caps.path_model_colors {
        return Err(Error::resource(format!(
            "path models are available for 1 ≤ m ≤ {}, got {m}",
            caps.path_model_colors
        )));
    }
    let mut draft = PathDraft::base();
    while draft.colors < m {
        draft = draft.double();
    }
    Ok(draft.into_model())
}

/// `3·2^m − 4`.
pub fn path_model_length(m: usize) -> usize {
    3 * (1 << m) - 4
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_path_in_order(g: &Graph) -> bool {
        g.edge_count() + 1 == g.n() && (1..g.n()).all(|i| g.has_edge(i - 1, i))
    }

    #[test]
    fn small_graphs() {
        assert_eq!(make_path(0), Graph::new(1));
        assert_eq!((make_path(2).n(), make_path(2).edge_count()), (3, 2));
        assert_eq!(make_biclique(3, 3).edge_count(), 9);
        assert_eq!(make_cycle(5).edge_count(), 5);
        assert!(make_cycle(5).neighbors(0).eq([1, 4]));
        assert_eq!(make_clique(4).edge_count(), 6);
        assert_eq!(perfect_matching(3).edge_count(), 3);
    }

    #[test]
    fn simple_models() {
        assert!(clique_model(5).verify(&make_clique(5)));
        assert!(clique_model(1).verify(&Graph::new(1)));
        assert!(biclique_model(1, 1).verify(&make_clique(2)));
        assert!(biclique_model(2, 3).verify(&make_biclique(2, 3)));
        assert!(perfect_matching_model(4).verify(&perfect_matching(4)));
    }

    #[test]
    fn subdivided_biclique() {
        let (g, model) = subdivided_matching_biclique_model();
        assert_eq!(g.n(), 9);
        // 6 unsubdivided edges plus two per subdivided one
        assert_eq!(g.edge_count(), 12);
        assert!(model.verify(&g));
        assert_eq!((model.depth(), model.colors()), (2, 3));
        // degree sequence: a_i and b_i have 3 neighbours, s_i has 2
        assert!((0..6).all(|v| g.degree(v) == 3));
        assert!((6..9).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn path_models() {
        for (m, len) in [(1, 2), (2, 8), (3, 20), (4, 44)] {
            let model = path_model(m).unwrap();
            assert_eq!(path_model_length(m), len);
            assert_eq!(model.colors(), m);
            assert_eq!(model.used_colors(), m);
            assert_eq!(model.depth(), 2 * m + 1);
            assert!(model.verify(&make_path(len)), "m = {m}");
            let g = model.realize();
            assert!(is_path_in_order(&g));
            // both ends are only children
            let t = model.tree();
            for node in model.leaf_nodes() {
                let v = model.leaf(node).unwrap().vertex;
                if v == 0 || v == len {
                    assert_eq!(t.children(t.parent(node).unwrap()).len(), 1);
                }
            }
        }
    }

    #[test]
    fn path_model_range() {
        assert!(matches!(path_model(0), Err(Error::Resource(_))));
        assert!(matches!(path_model(5), Err(Error::Resource(_))));
        let caps = Caps {
            path_model_colors: 5,
            ..Caps::default()
        };
        assert!(path_model_with_caps(5, &caps)
            .unwrap()
            .verify(&make_path(92)));
    }

    #[test]
    fn deterministic() {
        assert_eq!(path_model(3).unwrap(), path_model(3).unwrap());
        assert_eq!(
            subdivided_matching_biclique_model(),
            subdivided_matching_biclique_model()
        );
    }
}
