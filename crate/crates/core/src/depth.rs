//! Tree-depth: elimination forests, their closure, exact computation for
//! small graphs, and the conversion of a decomposition into a tree-model.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree_model::{Leaf, RootedTree, Signature, TreeModel};

/// A rooted forest on the vertices `0..n` given by parent links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationForest {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

impl EliminationForest {
    pub fn new(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if let Some((v, p)) = parent
            .iter()
            .enumerate()
            .find_map(|(v, p)| p.filter(|&p| p >= n || p == v).map(|p| (v, p)))
        {
            return Err(Error::validation(format!("bad parent {p} for vertex {v}")));
        }
        let mut depth = vec![usize::MAX; n];
        for v in 0..n {
            // walk up until a vertex of known depth; more than n steps means a cycle
            let mut chain = vec![v];
            let mut cur = v;
            while depth[cur] == usize::MAX {
                match parent[cur] {
                    None => {
                        depth[cur] = 0;
                        break;
                    }
                    Some(p) => {
                        if chain.len() > n {
                            return Err(Error::validation("parent links contain a cycle"));
                        }
                        chain.push(p);
                        cur = p;
                    }
                }
            }
            while let Some(u) = chain.pop() {
                if depth[u] == usize::MAX {
                    depth[u] = depth[parent[u].unwrap()] + 1;
                }
            }
        }
        Ok(EliminationForest { parent, depth })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.parent[v].is_none())
            .collect()
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&u| self.parent[u] == Some(v))
            .collect()
    }

    /// Number of edges on the longest root-to-node path.
    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Strict ancestors of `v`, nearest first.
    pub fn ancestors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.parent[v];
        while let Some(p) = cur {
            out.push(p);
            cur = self.parent[p];
        }
        out
    }

    pub fn is_ancestor(&self, a: usize, v: usize) -> bool {
        self.ancestors(v).contains(&a)
    }
}

/// Every vertex joined to all of its ancestors.
pub fn closure(f: &EliminationForest) -> Graph {
    let mut g = Graph::new(f.len());
    for v in 0..f.len() {
        for a in f.ancestors(v) {
            g.add_edge(a, v).expect("forest ids are in range");
        }
    }
    g
}

/// True iff every edge of `g` joins an ancestor–descendant pair of `f`.
pub fn validate_td(g: &Graph, f: &EliminationForest) -> Result<bool> {
    if g.n() != f.len() {
        return Err(Error::domain(format!(
            "forest has {} vertices, graph has {}",
            f.len(),
            g.n()
        )));
    }
    Ok(g.edges()
        .all(|(u, v)| f.is_ancestor(u, v) || f.is_ancestor(v, u)))
}

struct TdSolver {
    adj: Vec<u64>,
    memo: HashMap<u64, (usize, usize)>,
}

impl TdSolver {
    fn components(&self, mut set: u64) -> Vec<u64> {
        let mut out = Vec::new();
        while set != 0 {
            let start = set & set.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[v] & set & !comp;
                comp |= new;
                frontier |= new;
            }
            out.push(comp);
            set &= !comp;
        }
        out
    }

    fn td(&mut self, set: u64) -> usize {
        if set == 0 {
            return 0;
        }
        let comps = self.components(set);
        if comps.len() > 1 {
            return comps
                .into_iter()
                .map(|c| self.td_connected(c))
                .max()
                .unwrap();
        }
        self.td_connected(set)
    }

    /// `1 + min over v of td(set - v)`, with the best root remembered.
    fn td_connected(&mut self, set: u64) -> usize {
        if set.count_ones() == 1 {
            return 1;
        }
        if let Some(&(val, _)) = self.memo.get(&set) {
            return val;
        }
        let k = set.count_ones() as usize;
        let mut best = (usize::MAX, 0);
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let val = 1 + self.td(set & !(1 << v));
            if val < best.0 {
                best = (val, v);
                // a connected graph on k ≥ 2 vertices has td ≥ ⌈log2(k+1)⌉... use the trivial floor 2
                if val == 2 {
                    break;
                }
            }
        }
        debug_assert!(best.0 <= k);
        self.memo.insert(set, best);
        best.0
    }

    fn build(&mut self, set: u64, parent: Option<usize>, out: &mut [Option<usize>]) {
        for comp in self.components(set) {
            if comp.count_ones() == 1 {
                out[comp.trailing_zeros() as usize] = parent;
                continue;
            }
            self.td_connected(comp);
            let root = self.memo[&comp].1;
            out[root] = parent;
            self.build(comp & !(1 << root), Some(root), out);
        }
    }
}

/// Exact tree-depth with a witnessing forest of height `td - 1`.
pub fn tree_depth(g: &Graph, caps: &Caps) -> Result<(usize, EliminationForest)> {
    if g.n() > caps.td_vertices {
        return Err(Error::resource(format!(
            "tree-depth is capped at {} vertices, graph has {}",
            caps.td_vertices,
            g.n()
        )));
    }
    let mut solver = TdSolver {
        adj: g.adjacency_masks()?,
        memo: HashMap::new(),
    };
    let all = if g.n() == 64 { !0 } else { (1u64 << g.n()) - 1 };
    let td = solver.td(all);
    let mut parent = vec![None; g.n()];
    solver.build(all, None, &mut parent);
    Ok((td, EliminationForest::new(parent)?))
}

/// Tree-model built from a tree-depth decomposition.
///
/// With `h = height(f)`, the model has depth `h` when `g` is connected and `f`
/// is a single tree, and depth `h + 1` (an extra root above all forest roots)
/// otherwise. A vertex `u` at distance `j` above the leaf level gets colour
/// `(j, I)` where `I` holds the distances to the ancestors of `u` adjacent to
/// it; vertices above the leaf level are represented by a new leaf hung on a
/// fresh path below them. The pair `(j, I)` is encoded as `2^(h-j) + mask(I)`,
/// so colours lie in `1..2^(h+1)`.
pub fn td_to_tm(g: &Graph, f: &EliminationForest) -> Result<TreeModel> {
    if !validate_td(g, f)? {
        return Err(Error::domain("forest closure does not contain the graph"));
    }
    let n = g.n();
    if n == 0 {
        return Err(Error::domain(
            "the empty graph has no decomposition to convert",
        ));
    }
    let h = f.height();
    let roots = f.roots();
    let single_tree = roots.len() == 1 && g.is_connected();
    let depth = if single_tree { h } else { h + 1 };
    // tree distance from the model root to forest vertex v
    let offset = usize::from(!single_tree);

    let mut tree = RootedTree::new();
    let mut node_of = vec![usize::MAX; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (f.depth(v), v));
    for &v in &order {
        node_of[v] = match f.parent(v) {
            None if single_tree => tree.root(),
            None => tree.add_child(tree.root()),
            Some(p) => tree.add_child(node_of[p]),
        };
    }

    let color_of = |v: usize| -> usize {
        let j = depth - (f.depth(v) + offset);
        let mask = f
            .ancestors(v)
            .iter()
            .enumerate()
            .filter(|(_, &a)| g.has_edge(a, v))
            .fold(0usize, |m, (i, _)| m | 1 << i);
        (1 << (h - j)) + mask
    };

    let mut leaves = vec![None; tree.node_count()];
    let mut leaf_of = vec![usize::MAX; n];
    for &v in &order {
        let mut at = node_of[v];
        while tree.depth(at) < depth {
            at = tree.add_child(at);
            leaves.push(None);
        }
        leaf_of[v] = at;
        leaves[at] = Some(Leaf {
            vertex: v,
            color: color_of(v),
        });
    }

    // Colour (j1, I1) with j1 < j2 is adjacent to (j2, I2) at level j2 iff j2 - j1 ∈ I1.
    let colors = (1usize << (h + 1)) - 1;
    let mut sig = Signature::new();
    for c1 in 1..=colors {
        let j1 = h - (usize::BITS - 1 - c1.leading_zeros()) as usize;
        let mask1 = c1 - (1 << (h - j1));
        for j2 in j1 + 1..=h {
            if mask1 >> (j2 - j1 - 1) & 1 == 1 {
                for c2 in 1 << (h - j2)..1 << (h - j2 + 1) {
                    sig.insert(c1, c2, j2);
                }
            }
        }
    }
    let mut model = TreeModel::new(tree, depth, colors, leaves, sig)?;
    model.minimize_signature();
    Ok(model)
}

/// Text format: one `v parent` line per vertex in increasing order, `-1` for roots.
pub fn write_forest(f: &EliminationForest) -> String {
    let mut out = String::new();
    for v in 0..f.len() {
        match f.parent(v) {
            Some(p) => writeln!(out, "{v} {p}").unwrap(),
            None => writeln!(out, "{v} -1").unwrap(),
        }
    }
    out
}

pub fn read_forest(text: &str) -> Result<EliminationForest> {
    let mut parent = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: String| Error::Parse {
            line: i + 1,
            column: 1,
            message: m,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [v, p] = fields.as_slice() else {
            return Err(err(format!("expected `v parent`, found `{line}`")));
        };
        let v: usize = v.parse().map_err(|_| err(format!("bad vertex `{v}`")))?;
        if v != parent.len() {
            return Err(err(format!("expected vertex {}, found {v}", parent.len())));
        }
        let p: i64 = p.parse().map_err(|_| err(format!("bad parent `{p}`")))?;
        parent.push(match p {
            -1 => None,
            p if p >= 0 => Some(p as usize),
            _ => return Err(err(format!("bad parent `{p}`"))),
        });
    }
    EliminationForest::new(parent)
}
