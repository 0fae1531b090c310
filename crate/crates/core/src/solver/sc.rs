//! SC-depth membership by recursion over complement sets.
//!
//! `G ∈ SC(k)` iff `G = K₁`, or `k ≥ 1` and for some `X ⊆ V(G)` every
//! connected component of `G` complemented on `X` lies in `SC(k − 1)`.
//! Taking components is enough because each class is closed under induced
//! subgraphs. Complementing on a single vertex changes nothing, so such `X`
//! are skipped. Verdicts are memoized per isomorphism class and `k`.

use std::collections::HashMap;

use crate::graph::{canonical_form, Graph};
use crate::sc_model::ScNode;

#[derive(Default)]
pub(super) struct ScSearch {
    memo: HashMap<(Graph, usize), bool>,
}

impl ScSearch {
    pub(super) fn member(&mut self, g: &Graph, k: usize) -> bool {
        if g.n() <= 1 {
            return true;
        }
        if k == 0 {
            return false;
        }
        let key = (canonical_form(g).graph, k);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let found = complement_sets(g.n()).any(|x| self.split_works(g, &x, k));
        self.memo.insert(key, found);
        found
    }

    fn split_works(&mut self, g: &Graph, x: &[usize], k: usize) -> bool {
        let h = g.complement_on_subset(x).expect("ids in range");
        h.components().iter().all(|c| {
            let part = h.induced_subgraph(c).expect("ids in range");
            self.member(&part, k - 1)
        })
    }

    /// Witness tree for `g` with vertex `i` named `names[i]`; `None` if `g ∉ SC(k)`.
    pub(super) fn witness(&mut self, g: &Graph, names: &[usize], k: usize) -> Option<ScNode> {
        if g.n() == 1 {
            return Some(ScNode::leaf(names[0]));
        }
        if !self.member(g, k) {
            return None;
        }
        let x = complement_sets(g.n()).find(|x| self.split_works(g, x, k))?;
        let h = g.complement_on_subset(&x).expect("ids in range");
        let children = h
            .components()
            .iter()
            .map(|c| {
                let part = h.induced_subgraph(c).expect("ids in range");
                let sub_names: Vec<usize> = c.iter().map(|&v| names[v]).collect();
                self.witness(&part, &sub_names, k - 1)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(ScNode::internal(x.iter().map(|&v| names[v]), children))
    }
}

/// Subsets of `0..n` in increasing bitmask order, without singletons.
fn complement_sets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1u64 << n)
        .filter(|mask| mask.count_ones() != 1)
        .map(move |mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
}
