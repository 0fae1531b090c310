//! Exhaustive generation of small graphs, one per isomorphism class.

use std::collections::BTreeSet;

use super::{canonical_form, Graph};

/// Every graph obtained from `g` by adding vertex `g.n()` with some neighbourhood.
pub fn extensions_by_one_vertex(g: &Graph) -> impl Iterator<Item = Graph> + '_ {
    let n = g.n();
    (0..1u64 << n).map(move |mask| {
        let mut h = g.disjoint_union(&Graph::new(1));
        for u in (0..n).filter(|u| mask >> u & 1 == 1) {
            h.add_edge(u, n).expect("in range");
        }
        h
    })
}

/// All unlabeled graphs on `n` vertices up to isomorphism, as canonical forms
/// in increasing order.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut level: BTreeSet<Graph> = BTreeSet::from([Graph::new(0)]);
    for _ in 0..n {
        level = level
            .iter()
            .flat_map(extensions_by_one_vertex)
            .map(|h| canonical_form(&h).graph)
            .collect();
    }
    level.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        // number of graphs on n unlabeled vertices
        let counts: Vec<usize> = (0..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }
}
