//! Exact membership tests for `TM(d, m)`, `TMC(d, m, k)` and `SC(n)` on small
//! graphs, and a search for small minimal obstructions.

mod sc;
mod tm;

use std::collections::BTreeSet;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{canonical_form, extensions_by_one_vertex, Graph};
use crate::sc_model::ScTree;
use crate::tree_model::TreeModel;

/// Limits and parallelism for the searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    pub caps: Caps,
    /// Worker threads; 1 searches on the calling thread.
    pub jobs: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            caps: Caps::default(),
            jobs: 1,
        }
    }
}

fn check_cap(g: &Graph, cap: usize, what: &str) -> Result<()> {
    if g.n() > cap {
        return Err(Error::resource(format!(
            "{what} search is capped at {cap} vertices, graph has {}",
            g.n()
        )));
    }
    Ok(())
}

/// A tree-model of `g` with `m` colours and depth `d`, or `None` if none exists.
///
/// The witness is the first model in the search order documented in the
/// `tm` submodule; it is independent of `opts.jobs`.
pub fn tm_membership(
    g: &Graph,
    d: usize,
    m: usize,
    opts: &SolverOptions,
) -> Result<Option<TreeModel>> {
    check_cap(g, opts.caps.tm_vertices, "tree-model")?;
    tm::search(g, d, m, None, opts.jobs)
}

/// A `k`-copied tree-model of `g` (depth `d + 1`, `m` colours, at most `k`
/// leaves under each depth-`d` node), or `None`.
pub fn tmc_membership(
    g: &Graph,
    d: usize,
    m: usize,
    k: usize,
    opts: &SolverOptions,
) -> Result<Option<TreeModel>> {
    check_cap(g, opts.caps.tm_vertices, "tree-model")?;
    tm::search(g, d + 1, m, Some(k), opts.jobs)
}

/// An SC-tree of height at most `n` building `g`, or `None`.
pub fn sc_membership(g: &Graph, n: usize, opts: &SolverOptions) -> Result<Option<ScTree>> {
    check_cap(g, opts.caps.sc_vertices, "SC-depth")?;
    if g.n() == 0 {
        return Err(Error::domain("the empty graph has no SC-tree"));
    }
    let g = g.without_labels();
    let names: Vec<usize> = (0..g.n()).collect();
    let node = sc::ScSearch::default().witness(&g, &names, n);
    Ok(node.map(|root| ScTree::new(root).expect("witness uses every id once")))
}

/// Least `n` with `g ∈ SC(n)`, with a witness.
pub fn sc_depth(g: &Graph, opts: &SolverOptions) -> Result<(usize, ScTree)> {
    check_cap(g, opts.caps.sc_vertices, "SC-depth")?;
    if g.n() == 0 {
        return Err(Error::domain("the empty graph has no SC-tree"));
    }
    let g = g.without_labels();
    let names: Vec<usize> = (0..g.n()).collect();
    let mut search = sc::ScSearch::default();
    // every graph on n vertices has neighbourhood diversity ≤ n, so the loop ends
    for k in 0.. {
        if let Some(root) = search.witness(&g, &names, k) {
            return Ok((k, ScTree::new(root).expect("witness uses every id once")));
        }
    }
    unreachable!()
}

/// Graphs on at most `max_n` vertices outside `TM(d, m)` all of whose
/// one-vertex deletions lie in `TM(d, m)`; one canonical representative per
/// isomorphism class, ordered by vertex count and then canonical form.
pub fn minimal_obstructions(
    d: usize,
    m: usize,
    max_n: usize,
    opts: &SolverOptions,
) -> Result<Vec<Graph>> {
    if m == 0 {
        return Err(Error::domain("at least one colour is required"));
    }
    if max_n > opts.caps.tm_vertices {
        return Err(Error::resource(format!(
            "obstruction search is capped at {} vertices, asked for {max_n}",
            opts.caps.tm_vertices
        )));
    }
    let mut found = Vec::new();
    // members of TM(d, m) on `size` vertices, canonical
    let mut members: BTreeSet<Graph> = BTreeSet::from([Graph::new(1)]);
    for size in 1..max_n {
        let candidates: BTreeSet<Graph> = members
            .iter()
            .flat_map(extensions_by_one_vertex)
            .map(|h| canonical_form(&h).graph)
            .collect();
        let mut next = BTreeSet::new();
        for h in candidates {
            if tm::search(&h, d, m, None, opts.jobs)?.is_some() {
                next.insert(h);
                continue;
            }
            let minimal = (0..=size).all(|v| {
                let sub = h.remove_vertex(v).expect("in range");
                members.contains(&canonical_form(&sub).graph)
            });
            if minimal {
                found.push(h);
            }
        }
        members = next;
    }
    Ok(found)
}
