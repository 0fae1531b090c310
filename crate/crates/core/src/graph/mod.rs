//! Simple undirected graphs on dense vertex ids `0..n`.

mod canon;
mod enumerate;
mod io;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

pub use canon::{are_isomorphic, canonical_form, is_induced_subgraph, isomorphism, CanonicalForm};
pub use enumerate::{all_graphs, extensions_by_one_vertex};
pub use io::{read_graph, write_graph};

/// A finite simple graph. Vertices are `0..n`; every vertex may carry a set of
/// label names. Two graphs are equal iff they have the same vertex count, the
/// same edges and the same labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    labels: BTreeMap<usize, BTreeSet<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            labels: BTreeMap::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "vertex {v} out of range for a graph on {} vertices",
                self.n()
            )))
        }
    }

    /// Adds `{u, v}`. Adding an existing edge is a no-op; loops are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::domain(format!("self-loop at vertex {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n() && v < self.n() {
            self.adj[u].remove(&v);
            self.adj[v].remove(&u);
        }
    }

    fn toggle_edge(&mut self, u: usize, v: usize) {
        if !self.adj[u].remove(&v) {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        } else {
            self.adj[v].remove(&u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|nb| nb.contains(&v))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn add_label(&mut self, v: usize, name: &str) -> Result<()> {
        self.check_vertex(v)?;
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::domain(format!("invalid label name `{name}`")));
        }
        self.labels.entry(v).or_default().insert(name.to_string());
        Ok(())
    }

    pub fn has_label(&self, v: usize, name: &str) -> bool {
        self.labels.get(&v).is_some_and(|s| s.contains(name))
    }

    /// Label set of `v` (empty if unlabeled).
    pub fn labels_of(&self, v: usize) -> impl Iterator<Item = &str> + '_ {
        self.labels
            .get(&v)
            .into_iter()
            .flat_map(|s| s.iter().map(String::as_str))
    }

    pub fn label_map(&self) -> &BTreeMap<usize, BTreeSet<String>> {
        &self.labels
    }

    pub fn has_labels(&self) -> bool {
        !self.labels.is_empty()
    }

    pub fn without_labels(&self) -> Graph {
        Graph {
            adj: self.adj.clone(),
            labels: BTreeMap::new(),
        }
    }

    /// Edge-complement of the whole graph.
    pub fn complement(&self) -> Graph {
        let all: Vec<usize> = (0..self.n()).collect();
        self.complement_on_subset(&all)
            .expect("all vertices are in range")
    }

    /// Flips adjacency of every pair of distinct vertices inside `x`.
    pub fn complement_on_subset(&self, x: &[usize]) -> Result<Graph> {
        let set: BTreeSet<usize> = x.iter().copied().collect();
        for &v in &set {
            self.check_vertex(v)?;
        }
        let mut g = self.clone();
        let members: Vec<usize> = set.into_iter().collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                g.toggle_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Subgraph induced on `keep`, renumbered densely in increasing id order.
    /// Labels follow their vertices.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<Graph> {
        let set: BTreeSet<usize> = keep.iter().copied().collect();
        for &v in &set {
            self.check_vertex(v)?;
        }
        let order: Vec<usize> = set.into_iter().collect();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in order.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(order.len());
        for (i, &v) in order.iter().enumerate() {
            for w in self.neighbors(v) {
                if index[w] != usize::MAX && index[w] > i {
                    g.add_edge(i, index[w])?;
                }
            }
            if let Some(ls) = self.labels.get(&v) {
                g.labels.insert(i, ls.clone());
            }
        }
        Ok(g)
    }

    pub fn remove_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.n()).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    /// `self` followed by `other`, with `other`'s ids shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = self.clone();
        g.adj.extend(
            other
                .adj
                .iter()
                .map(|nb| nb.iter().map(|&v| v + off).collect()),
        );
        for (v, ls) in &other.labels {
            g.labels.insert(v + off, ls.clone());
        }
        g
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n();
        if perm.len() != n
            || perm.iter().copied().collect::<BTreeSet<_>>().len() != n
            || perm.iter().any(|&p| p >= n)
        {
            return Err(Error::domain("not a permutation of the vertex set"));
        }
        let mut g = Graph::new(n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v])?;
        }
        for (v, ls) in &self.labels {
            g.labels.insert(perm[*v], ls.clone());
        }
        Ok(g)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Adjacency rows as bitmasks; fails above 64 vertices.
    pub fn adjacency_masks(&self) -> Result<Vec<u64>> {
        if self.n() > 64 {
            return Err(Error::resource(format!(
                "bitmask adjacency supports at most 64 vertices, got {}",
                self.n()
            )));
        }
        Ok(self
            .adj
            .iter()
            .map(|nb| nb.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect())
    }

    /// `N(u) \ {v} == N(v) \ {u}`.
    pub fn are_twins(&self, u: usize, v: usize) -> bool {
        let a = self.adj[u].iter().filter(|&&w| w != v);
        let b = self.adj[v].iter().filter(|&&w| w != u);
        a.eq(b)
    }

    /// Coarsest partition of the vertices into classes of pairwise twins.
    /// Classes are sorted and ordered by their smallest vertex.
    pub fn twin_partition(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.n() {
            // Twin-ness is an equivalence, so one representative per class suffices.
            match classes.iter_mut().find(|c| self.are_twins(c[0], v)) {
                Some(c) => c.push(v),
                None => classes.push(vec![v]),
            }
        }
        classes
    }

    pub fn neighbourhood_diversity(&self) -> usize {
        self.twin_partition().len()
    }
}
