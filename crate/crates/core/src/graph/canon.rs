//! Canonical forms and (induced) subgraph matching for small graphs.
//!
//! The canonical form comes from an individualisation-refinement search:
//! colour refinement seeded by vertex labels, then branching on the first
//! non-singleton cell. Every discrete leaf yields an ordering of the vertices;
//! the ordering with the lexicographically smallest adjacency matrix wins.
//! Twins inside a target cell are interchangeable, so only one vertex per twin
//! class is individualised.

use std::collections::BTreeSet;

use super::Graph;

/// A graph relabelled into canonical position order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub graph: Graph,
    /// `position[v]` is the canonical index of original vertex `v`.
    pub position: Vec<usize>,
}

type Partition = Vec<Vec<usize>>;

struct Search<'a> {
    g: &'a Graph,
    twin_class: Vec<usize>,
    best: Option<(Vec<bool>, Vec<usize>)>,
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.n();
    if n == 0 {
        return CanonicalForm {
            graph: g.clone(),
            position: Vec::new(),
        };
    }
    let mut search = Search {
        g,
        twin_class: labelled_twin_classes(g),
        best: None,
    };
    let initial = refine(g, initial_partition(g));
    search.descend(initial);
    let (_, order) = search.best.expect("at least one leaf is visited");
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let graph = g.permuted(&position).expect("order is a permutation");
    CanonicalForm { graph, position }
}

/// Twin classes that also agree on labels.
fn labelled_twin_classes(g: &Graph) -> Vec<usize> {
    let mut class = vec![usize::MAX; g.n()];
    let mut reps: Vec<usize> = Vec::new();
    for v in 0..g.n() {
        let found = reps
            .iter()
            .position(|&r| g.are_twins(r, v) && g.labels_of(r).eq(g.labels_of(v)));
        class[v] = match found {
            Some(i) => i,
            None => {
                reps.push(v);
                reps.len() - 1
            }
        };
    }
    class
}

fn initial_partition(g: &Graph) -> Partition {
    let mut keyed: Vec<(Vec<&str>, usize)> = (0..g.n())
        .map(|v| (g.labels_of(v).collect::<Vec<_>>(), v))
        .collect();
    keyed.sort();
    let mut cells: Partition = Vec::new();
    let mut last: Option<&Vec<&str>> = None;
    for (key, v) in &keyed {
        if last == Some(key) {
            cells.last_mut().unwrap().push(*v);
        } else {
            cells.push(vec![*v]);
        }
        last = Some(key);
    }
    cells
}

/// Equitable refinement. Cells split by the multiset of neighbour cells; the
/// split order depends only on those invariants, never on vertex ids.
fn refine(g: &Graph, mut cells: Partition) -> Partition {
    loop {
        let n = g.n();
        let mut cell_of = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let mut next: Partition = Vec::with_capacity(cells.len());
        for c in &cells {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = c
                .iter()
                .map(|&v| {
                    let mut counts = vec![0usize; cells.len()];
                    for w in g.neighbors(v) {
                        counts[cell_of[w]] += 1;
                    }
                    (counts, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

impl Search<'_> {
    fn descend(&mut self, cells: Partition) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let cert = certificate(self.g, &order);
            if self.best.as_ref().is_none_or(|(b, _)| cert < *b) {
                self.best = Some((cert, order));
            }
            return;
        };
        let mut tried = BTreeSet::new();
        for &v in &cells[target] {
            if !tried.insert(self.twin_class[v]) {
                continue;
            }
            let mut next = cells.clone();
            let rest: Vec<usize> = next[target].iter().copied().filter(|&w| w != v).collect();
            next[target] = vec![v];
            next.insert(target + 1, rest);
            self.descend(refine(self.g, next));
        }
    }
}

fn certificate(g: &Graph, order: &[usize]) -> Vec<bool> {
    let n = order.len();
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            bits.push(g.has_edge(order[i], order[j]));
        }
    }
    bits
}

/// Edge- and label-preserving isomorphism test.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    isomorphism(g, h).is_some()
}

/// A bijection `phi` with `{u,v} ∈ E(g) ⟺ {phi[u],phi[v]} ∈ E(h)` and equal labels.
pub fn isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let mut dg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return None;
    }
    let cg = canonical_form(g);
    let ch = canonical_form(h);
    if cg.graph != ch.graph {
        return None;
    }
    let mut inv_h = vec![0; h.n()];
    for (v, &p) in ch.position.iter().enumerate() {
        inv_h[p] = v;
    }
    Some(cg.position.iter().map(|&p| inv_h[p]).collect())
}

/// An injective map `phi` from `V(h)` into `V(g)` preserving edges, non-edges
/// and labels, if one exists.
pub fn is_induced_subgraph(h: &Graph, g: &Graph) -> Option<Vec<usize>> {
    if h.n() > g.n() {
        return None;
    }
    // Map high-degree pattern vertices first.
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
    let mut map = vec![usize::MAX; h.n()];
    let mut used = vec![false; g.n()];
    if embed(h, g, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn embed(
    h: &Graph,
    g: &Graph,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..g.n() {
        if used[w] || g.degree(w) < h.degree(v) || !h.labels_of(v).eq(g.labels_of(w)) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| h.has_edge(u, v) == g.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if embed(h, g, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_clique, make_cycle, make_path};

    fn brute_force_iso(g: &Graph, h: &Graph) -> bool {
        if g.n() != h.n() {
            return false;
        }
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if g.permuted(&perm).unwrap() == *h {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        if p.len() < 2 {
            return false;
        }
        let mut i = p.len() - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = p.len() - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn renamed_graph_is_isomorphic() {
        let g = make_cycle(5).disjoint_union(&make_path(2));
        let perm = vec![7, 3, 0, 5, 1, 2, 6, 4];
        let h = g.permuted(&perm).unwrap();
        let phi = isomorphism(&g, &h).unwrap();
        assert_eq!(g.permuted(&phi).unwrap(), h);
    }

    #[test]
    fn triangle_is_not_a_path() {
        assert!(!are_isomorphic(&make_clique(3), &make_path(2)));
    }

    #[test]
    fn hexagon_is_not_two_triangles() {
        let two_triangles = make_clique(3).disjoint_union(&make_clique(3));
        assert!(!are_isomorphic(&make_cycle(6), &two_triangles));
    }

    #[test]
    fn labels_matter() {
        let mut a = make_path(1);
        let mut b = make_path(1);
        a.add_label(0, "red").unwrap();
        assert!(!are_isomorphic(&a, &b));
        b.add_label(1, "red").unwrap();
        assert!(are_isomorphic(&a, &b));
    }

    #[test]
    fn canonical_form_agrees_with_brute_force_on_small_graphs() {
        // all labelled graphs on 4 vertices, pairwise
        let n = 4;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let graphs: Vec<Graph> = (0..1u32 << pairs.len())
            .map(|mask| {
                Graph::from_edges(
                    n,
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &e)| e),
                )
                .unwrap()
            })
            .collect();
        for (i, g) in graphs.iter().enumerate().step_by(3) {
            for h in graphs.iter().skip(i).step_by(5) {
                assert_eq!(are_isomorphic(g, h), brute_force_iso(g, h), "{g:?} {h:?}");
            }
        }
    }

    #[test]
    fn induced_subgraph_examples() {
        let k1 = Graph::new(1);
        assert!(is_induced_subgraph(&k1, &make_path(3)).is_some());
        assert!(is_induced_subgraph(&make_path(3), &make_cycle(4)).is_none());
        assert!(is_induced_subgraph(&make_clique(3), &make_clique(4)).is_some());
        let emb = is_induced_subgraph(&make_path(2), &make_cycle(5)).unwrap();
        let img = make_cycle(5).induced_subgraph(&emb).unwrap();
        assert!(are_isomorphic(&img, &make_path(2)));
    }
}
