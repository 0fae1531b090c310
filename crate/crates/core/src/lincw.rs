//! Linear clique-width expressions: each step either creates a vertex
//! (joining it to everything built so far), adds all edges between two
//! labels, or relabels one label to another.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree_model::TreeModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinCwOp {
    Create(usize),
    AddEdges(usize, usize),
    Relabel(usize, usize),
}

impl fmt::Display for LinCwOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinCwOp::Create(i) => write!(f, "V {i}"),
            LinCwOp::AddEdges(i, j) => write!(f, "E {i} {j}"),
            LinCwOp::Relabel(i, j) => write!(f, "R {i} {j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinCwExpression {
    ops: Vec<LinCwOp>,
}

impl LinCwExpression {
    pub fn new(ops: Vec<LinCwOp>) -> Result<Self> {
        match ops.first() {
            Some(LinCwOp::Create(_)) => {}
            _ => {
                return Err(Error::validation(
                    "expression must start with a vertex creation",
                ))
            }
        }
        for op in &ops {
            match *op {
                LinCwOp::Create(0) | LinCwOp::AddEdges(0, _) | LinCwOp::AddEdges(_, 0) => {
                    return Err(Error::validation("labels start at 1"))
                }
                LinCwOp::Relabel(0, _) | LinCwOp::Relabel(_, 0) => {
                    return Err(Error::validation("labels start at 1"))
                }
                LinCwOp::AddEdges(i, j) if i == j => {
                    return Err(Error::validation(format!(
                        "edge addition needs two labels, got {i} {i}"
                    )))
                }
                _ => {}
            }
        }
        Ok(LinCwExpression { ops })
    }

    pub fn ops(&self) -> &[LinCwOp] {
        &self.ops
    }

    /// Distinct labels mentioned anywhere in the expression.
    pub fn label_count(&self) -> usize {
        let mut labels = BTreeSet::new();
        for op in &self.ops {
            match *op {
                LinCwOp::Create(i) => {
                    labels.insert(i);
                }
                LinCwOp::AddEdges(i, j) | LinCwOp::Relabel(i, j) => {
                    labels.insert(i);
                    labels.insert(j);
                }
            }
        }
        labels.len()
    }

    /// Largest label used.
    pub fn max_label(&self) -> usize {
        self.ops
            .iter()
            .map(|op| match *op {
                LinCwOp::Create(i) => i,
                LinCwOp::AddEdges(i, j) | LinCwOp::Relabel(i, j) => i.max(j),
            })
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for LinCwExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}

/// The graph valued by `e`; vertices are numbered in creation order and the
/// final labels are attached as vertex labels `L<i>`.
pub fn eval_lincw(e: &LinCwExpression) -> Graph {
    let (mut g, labels) = eval_unlabelled(e);
    for (v, l) in labels.into_iter().enumerate() {
        g.add_label(v, &format!("L{l}")).expect("vertex exists");
    }
    g
}

/// The unlabelled graph together with the final label of every vertex.
pub fn eval_unlabelled(e: &LinCwExpression) -> (Graph, Vec<usize>) {
    let n = e
        .ops
        .iter()
        .filter(|op| matches!(op, LinCwOp::Create(_)))
        .count();
    let mut g = Graph::new(n);
    let mut label = Vec::with_capacity(n);
    for op in &e.ops {
        match *op {
            LinCwOp::Create(i) => label.push(i),
            LinCwOp::AddEdges(i, j) => {
                for u in (0..label.len()).filter(|&u| label[u] == i) {
                    for v in (0..label.len()).filter(|&v| label[v] == j) {
                        if !g.has_edge(u, v) {
                            g.add_edge(u, v)
                                .expect("distinct labels give distinct vertices");
                        }
                    }
                }
            }
            LinCwOp::Relabel(i, j) => label.iter_mut().filter(|l| **l == i).for_each(|l| *l = j),
        }
    }
    (g, label)
}

/// Linear expression with at most `m(d + 1)` labels valuing the model's graph.
///
/// Label `(c, s)` (colour `c`, "height" `s ∈ 0..=d`) is encoded as
/// `(c − 1)(d + 1) + s + 1`. Leaves are taken in the canonical serialized
/// order. Each new leaf `v` of colour `c` gets label `(c, 0)` and is joined to
/// every `(c', s)` with `(c, c', s) ∈ S`, where a vertex labelled `(c', s)`
/// meets `v` at level `s`. Before the next leaf, whose lowest common ancestor
/// with `v` lies `d'` levels up, all `(c, s)` with `s < d'` become `(c, d')`.
/// Vertex ids of the result are renumbered back to the model's ids by the
/// caller via [`lincw_vertex_order`].
pub fn tm_to_lincw(model: &TreeModel) -> LinCwExpression {
    let model = model.normalized();
    let d = model.depth();
    let code = |c: usize, s: usize| (c - 1) * (d + 1) + s + 1;
    let leaves = model.leaf_nodes();
    let colors = model.colors();
    let mut ops = Vec::new();
    // present[c][s]: some created vertex currently carries label (c, s)
    let mut present = vec![vec![false; d + 1]; colors + 1];
    for (k, &node) in leaves.iter().enumerate() {
        let c = model.leaf(node).unwrap().color;
        ops.push(LinCwOp::Create(code(c, 0)));
        for c2 in 1..=colors {
            for s in 1..=d {
                if present[c2][s] && model.signature().contains(c, c2, s) {
                    let op = LinCwOp::AddEdges(code(c, 0), code(c2, s));
                    if ops.last() != Some(&op) {
                        ops.push(op);
                    }
                }
            }
        }
        present[c][0] = true;
        if let Some(&next) = leaves.get(k + 1) {
            let up = model.level(node, next);
            for c2 in 1..=colors {
                for s in 0..up {
                    if present[c2][s] {
                        ops.push(LinCwOp::Relabel(code(c2, s), code(c2, up)));
                        present[c2][s] = false;
                        present[c2][up] = true;
                    }
                }
            }
        }
    }
    LinCwExpression::new(ops).expect("construction emits a well-formed expression")
}

/// Model vertex ids in the order [`tm_to_lincw`] creates them.
pub fn lincw_vertex_order(model: &TreeModel) -> Vec<usize> {
    let model = model.normalized();
    model
        .leaf_nodes()
        .into_iter()
        .map(|v| model.leaf(v).unwrap().vertex)
        .collect()
}

/// Expression graph with vertices renamed to the model's ids.
pub fn eval_as_model_ids(model: &TreeModel, e: &LinCwExpression) -> Result<Graph> {
    let (g, _) = eval_unlabelled(e);
    let order = lincw_vertex_order(model);
    if order.len() != g.n() {
        return Err(Error::domain(
            "expression and model have different vertex counts",
        ));
    }
    g.permuted(&order)
}

pub fn write_lincw(e: &LinCwExpression) -> String {
    e.to_string()
}

pub fn read_lincw(text: &str) -> Result<LinCwExpression> {
    let mut ops = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |m: String| Error::Parse {
            line: i + 1,
            column: 1,
            message: m,
        };
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(format!("bad label `{s}`")))
        };
        let op = match fields.as_slice() {
            ["V", a] => LinCwOp::Create(num(a)?),
            ["E", a, b] => LinCwOp::AddEdges(num(a)?, num(b)?),
            ["R", a, b] => LinCwOp::Relabel(num(a)?, num(b)?),
            _ => {
                return Err(err(format!(
                    "expected `V i`, `E i j` or `R i j`, found `{trimmed}`"
                )))
            }
        };
        ops.push(op);
    }
    LinCwExpression::new(ops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{clique_model, make_clique, make_path, path_model};
    use LinCwOp::*;

    #[test]
    fn tiny_expressions() {
        let e = LinCwExpression::new(vec![Create(1)]).unwrap();
        assert_eq!(eval_unlabelled(&e).0, Graph::new(1));
        let e = LinCwExpression::new(vec![Create(1), Create(2), AddEdges(1, 2)]).unwrap();
        assert_eq!(eval_unlabelled(&e).0, make_clique(2));
        assert!(eval_lincw(&e).has_label(1, "L2"));
    }

    #[test]
    fn three_label_path() {
        // new vertex labelled 1, joined to the previous end (2), which retires to 3
        let mut ops = vec![Create(2)];
        for _ in 0..5 {
            ops.extend([Create(1), AddEdges(1, 2), Relabel(2, 3), Relabel(1, 2)]);
        }
        let e = LinCwExpression::new(ops).unwrap();
        assert_eq!(eval_unlabelled(&e).0, make_path(5));
        assert_eq!(e.label_count(), 3);
    }

    #[test]
    fn malformed_rejected() {
        assert!(LinCwExpression::new(vec![]).is_err());
        assert!(LinCwExpression::new(vec![AddEdges(1, 2)]).is_err());
        assert!(LinCwExpression::new(vec![Create(1), AddEdges(1, 1)]).is_err());
        assert!(LinCwExpression::new(vec![Create(0)]).is_err());
    }

    #[test]
    fn clique_translation() {
        let m = clique_model(4);
        let e = tm_to_lincw(&m);
        assert!(e.max_label() <= 2);
        assert_eq!(eval_as_model_ids(&m, &e).unwrap(), make_clique(4));
    }

    #[test]
    fn edgeless_translation_has_no_edge_ops() {
        let m = clique_model(4).complement_model();
        let e = tm_to_lincw(&m);
        assert!(e.ops().iter().all(|op| !matches!(op, AddEdges(..))));
        assert_eq!(eval_unlabelled(&e).0, Graph::new(4));
    }

    #[test]
    fn path_model_translation() {
        let m = path_model(2).unwrap();
        let e = tm_to_lincw(&m);
        assert!(e.max_label() <= 2 * 6);
        assert_eq!(eval_as_model_ids(&m, &e).unwrap(), make_path(8));
    }

    #[test]
    fn unused_relabel_is_harmless() {
        let m = path_model(1).unwrap();
        let e = tm_to_lincw(&m);
        let mut ops = e.ops().to_vec();
        ops.insert(1, Relabel(99, 98));
        let padded = LinCwExpression::new(ops).unwrap();
        assert_eq!(eval_unlabelled(&padded).0, eval_unlabelled(&e).0);
    }

    #[test]
    fn text_round_trip() {
        let e = tm_to_lincw(&path_model(2).unwrap());
        let text = write_lincw(&e);
        assert_eq!(read_lincw(&text).unwrap(), e);
        assert!(matches!(
            read_lincw("V 1\nX 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
