use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A graph (with its vertex labels as unary predicates) plus named symmetric
/// binary relations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RelStructure {
    graph: Graph,
    relations: BTreeMap<String, BTreeSet<(usize, usize)>>,
}

impl From<Graph> for RelStructure {
    fn from(graph: Graph) -> Self {
        RelStructure {
            graph,
            relations: BTreeMap::new(),
        }
    }
}

impl RelStructure {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Declares an empty relation.
    pub fn declare_relation(&mut self, name: &str) {
        self.relations.entry(name.to_string()).or_default();
    }

    /// Adds the pair in both orientations.
    pub fn relate(&mut self, name: &str, u: usize, v: usize) -> Result<()> {
        if u >= self.n() || v >= self.n() {
            return Err(Error::domain(format!("pair ({u}, {v}) out of range")));
        }
        let r = self.relations.entry(name.to_string()).or_default();
        r.insert((u, v));
        r.insert((v, u));
        Ok(())
    }

    pub fn related(&self, name: &str, u: usize, v: usize) -> bool {
        self.relations
            .get(name)
            .is_some_and(|r| r.contains(&(u, v)))
    }

    pub fn relation_names(&self) -> impl Iterator<Item = &str> {
        self.relations.keys().map(String::as_str)
    }

    /// Row masks of a relation.
    pub fn relation_masks(&self, name: &str) -> Vec<u64> {
        let mut rows = vec![0u64; self.n()];
        if let Some(r) = self.relations.get(name) {
            for &(u, v) in r {
                rows[u] |= 1 << v;
            }
        }
        rows
    }

    pub fn add_label(&mut self, v: usize, name: &str) -> Result<()> {
        self.graph.add_label(v, name)
    }
}

/// `k` disjoint copies of `g`. Copy `i ∈ 1..=k` of vertex `v` gets id
/// `(i − 1)·n + v` and label `P<i>`; labels of `g` are kept on every copy;
/// relation `sim` joins all copies of the same vertex, including each copy
/// with itself.
pub fn k_copy(g: &Graph, k: usize) -> Result<RelStructure> {
    if k == 0 {
        return Err(Error::domain("at least one copy is required"));
    }
    let n = g.n();
    let mut graph = Graph::new(n * k);
    for i in 0..k {
        for (u, v) in g.edges() {
            graph.add_edge(i * n + u, i * n + v)?;
        }
        for v in 0..n {
            graph.add_label(i * n + v, &format!("P{}", i + 1))?;
            for l in g.labels_of(v) {
                graph.add_label(i * n + v, l)?;
            }
        }
    }
    let mut s = RelStructure::from(graph);
    s.declare_relation("sim");
    for v in 0..n {
        for i in 0..k {
            for j in 0..k {
                s.relate("sim", i * n + v, j * n + v)?;
            }
        }
    }
    Ok(s)
}
