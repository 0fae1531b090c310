use crate::error::{Error, Result};

/// Arena-backed rooted tree; node `0` is the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
}

impl Default for RootedTree {
    fn default() -> Self {
        RootedTree::new()
    }
}

impl RootedTree {
    /// A tree consisting of the root only.
    pub fn new() -> Self {
        RootedTree {
            parent: vec![None],
            children: vec![Vec::new()],
            depth: vec![0],
        }
    }

    /// Builds a tree from a parent array; exactly one entry must be `None`
    /// and it must be entry 0.
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Self> {
        if parents.first() != Some(&None) || parents[1..].iter().any(Option::is_none) {
            return Err(Error::validation("node 0 must be the unique root"));
        }
        let mut t = RootedTree {
            parent: parents.to_vec(),
            children: vec![Vec::new(); parents.len()],
            depth: vec![usize::MAX; parents.len()],
        };
        for (v, p) in parents.iter().enumerate().skip(1) {
            let p = p.unwrap();
            if p >= parents.len() {
                return Err(Error::validation(format!(
                    "parent {p} of node {v} out of range"
                )));
            }
            t.children[p].push(v);
        }
        t.depth[0] = 0;
        let mut stack = vec![0];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &c in &t.children[u] {
                t.depth[c] = t.depth[u] + 1;
                reached += 1;
                stack.push(c);
            }
        }
        if reached != parents.len() {
            return Err(Error::validation("parent links contain a cycle"));
        }
        Ok(t)
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn add_child(&mut self, parent: usize) -> usize {
        let id = self.parent.len();
        self.parent.push(Some(parent));
        self.children.push(Vec::new());
        self.depth.push(self.depth[parent] + 1);
        self.children[parent].push(id);
        id
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    /// Childless nodes in depth-first (child list) order.
    pub fn leaves(&self) -> Vec<usize> {
        self.preorder()
            .into_iter()
            .filter(|&v| self.is_leaf(v))
            .collect()
    }

    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.node_count());
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend(self.children[u].iter().rev());
        }
        out
    }

    /// Length of the longest root-to-node path.
    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Height of the subtree rooted at `v`.
    pub fn subtree_height(&self, v: usize) -> usize {
        self.children[v]
            .iter()
            .map(|&c| 1 + self.subtree_height(c))
            .max()
            .unwrap_or(0)
    }

    pub fn lca(&self, mut a: usize, mut b: usize) -> usize {
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].unwrap();
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].unwrap();
        }
        while a != b {
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
        }
        a
    }

    pub fn distance(&self, a: usize, b: usize) -> usize {
        let z = self.lca(a, b);
        self.depth[a] + self.depth[b] - 2 * self.depth[z]
    }

    /// Ancestor of `v` at depth `k` (`v` itself when `k == depth(v)`).
    pub fn ancestor_at_depth(&self, mut v: usize, k: usize) -> usize {
        while self.depth[v] > k {
            v = self.parent[v].unwrap();
        }
        v
    }

    /// A copy with a fresh root above the old one; node `i` becomes `i + 1`.
    pub fn lifted(&self) -> RootedTree {
        let mut parents = vec![None, Some(0)];
        parents.extend(self.parent[1..].iter().map(|p| p.map(|p| p + 1)));
        RootedTree::from_parents(&parents).expect("lifting keeps a tree")
    }
}

/// Adds a path from `u` to a new node at depth exactly `depth` and returns that
/// node. When `u` already sits at depth `depth` the tree is unchanged and `u`
/// is returned.
pub fn grow_leaf(tree: &RootedTree, u: usize, depth: usize) -> Result<(RootedTree, usize)> {
    if u >= tree.node_count() {
        return Err(Error::domain(format!("node {u} does not exist")));
    }
    if tree.depth(u) > depth {
        return Err(Error::domain(format!(
            "node {u} has depth {} > {depth}",
            tree.depth(u)
        )));
    }
    let mut t = tree.clone();
    let mut cur = u;
    while t.depth(cur) < depth {
        cur = t.add_child(cur);
    }
    Ok((t, cur))
}
