//! Exhaustive search for tree-models and k-copied tree-models.
//!
//! Vertices are placed in increasing id order. Vertex `v` leaves the part of
//! the tree built so far at some node `x` of depth `< D` and descends along a
//! fresh path to a new leaf at depth `D`; `x` is the deepest node its leaf
//! shares with earlier leaves, so every model without leafless branches arises
//! from exactly one sequence of choices. Colours are assigned in order of first
//! occurrence, which removes colour permutations. The adjacency of every
//! `(colour, colour, level)` class is fixed by its first witnessing pair and
//! checked against all later pairs, so signatures are never enumerated.
//!
//! Choices are tried in increasing order (attachment node id, then colour);
//! the witness returned is the first complete placement in that order, which
//! does not depend on the number of worker threads.

use rayon::prelude::*;

use crate::error::Result;
use crate::graph::Graph;
use crate::tree_model::{Leaf, RootedTree, Signature, TreeModel};

#[derive(Clone)]
struct State {
    parent: Vec<usize>,
    depth: Vec<usize>,
    children: Vec<usize>,
    leaf_of: Vec<usize>,
    color: Vec<usize>,
    max_color: usize,
    /// Indexed by `class_index`; -1 unknown, 0 non-adjacent, 1 adjacent.
    class: Vec<i8>,
}

struct Search<'a> {
    g: &'a Graph,
    depth: usize,
    colors: usize,
    /// Leaf children allowed under a node at depth `depth - 1`.
    copies: Option<usize>,
}

impl Search<'_> {
    fn class_index(&self, a: usize, b: usize, level: usize) -> usize {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        (a * (self.colors + 1) + b) * (self.depth + 1) + level
    }

    fn initial(&self) -> State {
        State {
            parent: vec![usize::MAX],
            depth: vec![0],
            children: vec![0],
            leaf_of: Vec::new(),
            color: Vec::new(),
            max_color: 0,
            class: vec![-1; (self.colors + 1) * (self.colors + 1) * (self.depth + 1)],
        }
    }

    /// Nodes where the next vertex may branch off, in increasing id order.
    fn attach_points(&self, st: &State) -> Vec<usize> {
        (0..st.parent.len())
            .filter(|&x| {
                st.depth[x] < self.depth
                    && match self.copies {
                        Some(k) if st.depth[x] + 1 == self.depth => st.children[x] < k,
                        _ => true,
                    }
            })
            .collect()
    }

    /// Levels at which each earlier vertex meets a leaf branching off at `x`.
    fn levels(&self, st: &State, x: usize) -> Vec<usize> {
        let mut on_path = vec![false; st.parent.len()];
        let mut cur = x;
        loop {
            on_path[cur] = true;
            if cur == 0 {
                break;
            }
            cur = st.parent[cur];
        }
        st.leaf_of
            .iter()
            .map(|&leaf| {
                let mut a = leaf;
                while !on_path[a] {
                    a = st.parent[a];
                }
                self.depth - st.depth[a]
            })
            .collect()
    }

    /// Tries colour `c` for the next vertex; on success returns the class
    /// entries it fixed (for undo).
    fn check(&self, st: &mut State, levels: &[usize], c: usize) -> Option<Vec<usize>> {
        let v = st.leaf_of.len();
        let mut fixed = Vec::new();
        for (u, &level) in levels.iter().enumerate() {
            let idx = self.class_index(st.color[u], c, level);
            let adj = i8::from(self.g.has_edge(u, v));
            match st.class[idx] {
                -1 => {
                    st.class[idx] = adj;
                    fixed.push(idx);
                }
                known if known != adj => {
                    for &i in &fixed {
                        st.class[i] = -1;
                    }
                    return None;
                }
                _ => {}
            }
        }
        Some(fixed)
    }

    fn place(&self, st: &mut State, x: usize, c: usize) -> (usize, usize) {
        let nodes_before = st.parent.len();
        let mut at = x;
        while st.depth[at] < self.depth {
            st.children[at] += 1;
            st.parent.push(at);
            st.depth.push(st.depth[at] + 1);
            st.children.push(0);
            at = st.parent.len() - 1;
        }
        st.leaf_of.push(at);
        st.color.push(c);
        let old_max = st.max_color;
        st.max_color = st.max_color.max(c);
        (nodes_before, old_max)
    }

    fn unplace(&self, st: &mut State, x: usize, nodes_before: usize, old_max: usize) {
        st.leaf_of.pop();
        st.color.pop();
        st.max_color = old_max;
        st.parent.truncate(nodes_before);
        st.depth.truncate(nodes_before);
        st.children.truncate(nodes_before);
        st.children[x] -= 1;
    }

    /// Calls `visit` on every consistent extension by one vertex, in order,
    /// stopping early when it returns `Some`.
    fn extend<T>(
        &self,
        st: &mut State,
        visit: &mut dyn FnMut(&mut State) -> Option<T>,
    ) -> Option<T> {
        for x in self.attach_points(st) {
            let levels = self.levels(st, x);
            for c in 1..=(st.max_color + 1).min(self.colors) {
                let Some(fixed) = self.check(st, &levels, c) else {
                    continue;
                };
                let (nodes_before, old_max) = self.place(st, x, c);
                let found = visit(st);
                self.unplace(st, x, nodes_before, old_max);
                for i in fixed {
                    st.class[i] = -1;
                }
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }

    fn complete(&self, st: &mut State) -> Option<State> {
        if st.leaf_of.len() == self.g.n() {
            return Some(st.clone());
        }
        self.extend(st, &mut |s| self.complete(s))
    }

    fn prefixes(&self, st: &mut State, until: usize, out: &mut Vec<State>) {
        if st.leaf_of.len() == until {
            out.push(st.clone());
            return;
        }
        self.extend::<()>(st, &mut |s| {
            self.prefixes(s, until, out);
            None
        });
    }

    fn run(&self, jobs: usize) -> Result<Option<State>> {
        let mut start = self.initial();
        if jobs <= 1 {
            return Ok(self.complete(&mut start));
        }
        let mut prefixes = Vec::new();
        self.prefixes(&mut start, self.g.n().min(3), &mut prefixes);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| crate::error::Error::resource(format!("thread pool: {e}")))?;
        Ok(pool.install(|| {
            prefixes
                .into_par_iter()
                .find_map_first(|mut s| self.complete(&mut s))
        }))
    }

    fn to_model(&self, st: State) -> TreeModel {
        let parents: Vec<Option<usize>> = st
            .parent
            .iter()
            .map(|&p| (p != usize::MAX).then_some(p))
            .collect();
        let tree = RootedTree::from_parents(&parents).expect("search builds a tree");
        let mut leaves = vec![None; tree.node_count()];
        for (vertex, &node) in st.leaf_of.iter().enumerate() {
            leaves[node] = Some(Leaf {
                vertex,
                color: st.color[vertex],
            });
        }
        let mut sig = Signature::new();
        for a in 1..=self.colors {
            for b in a..=self.colors {
                for level in 1..=self.depth {
                    if st.class[self.class_index(a, b, level)] == 1 {
                        sig.insert(a, b, level);
                    }
                }
            }
        }
        TreeModel::new(tree, self.depth, self.colors, leaves, sig)
            .expect("search yields a valid model")
    }
}

pub(super) fn search(
    g: &Graph,
    depth: usize,
    colors: usize,
    copies: Option<usize>,
    jobs: usize,
) -> Result<Option<TreeModel>> {
    let n = g.n();
    if colors == 0 {
        return Ok((n == 0).then(|| empty_model(depth, 1)));
    }
    if n == 0 {
        return Ok(Some(empty_model(depth, colors)));
    }
    if depth == 0 {
        return Ok((n == 1).then(|| TreeModel::single_vertex(colors)));
    }
    if copies == Some(0) {
        return Ok(None);
    }
    let s = Search {
        g,
        depth,
        colors,
        copies,
    };
    Ok(s.run(jobs)?.map(|st| s.to_model(st)))
}

fn empty_model(depth: usize, colors: usize) -> TreeModel {
    TreeModel::new(
        RootedTree::new(),
        depth,
        colors,
        vec![None],
        Signature::new(),
    )
    .expect("bare root is a valid model of the empty graph")
}
