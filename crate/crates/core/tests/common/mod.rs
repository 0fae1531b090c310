//! Seeded random instances shared by the integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use shrubkit::mso::{BinOp, Formula, Quantifier};
use shrubkit::tree_model::ColoredTree;
use shrubkit::{Graph, Leaf, RootedTree, ScNode, ScTree, Signature, TreeModel};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random tree-model with depth `1..=max_d`, `1..=max_m` colours and
/// `1..=max_n` vertices. Leaves are hung by walking down from the root and
/// reusing an existing child with probability 1/2 at each step.
pub fn random_model(r: &mut StdRng, max_d: usize, max_m: usize, max_n: usize) -> TreeModel {
    let d = r.gen_range(1..=max_d);
    let m = r.gen_range(1..=max_m);
    let n = r.gen_range(1..=max_n);
    let mut tree = RootedTree::new();
    let mut leaves: Vec<Option<Leaf>> = vec![None];
    for vertex in 0..n {
        let mut at = tree.root();
        while tree.depth(at) < d {
            // children one level above the leaves are free to share
            let reuse = tree.depth(at) + 1 < d && r.gen_bool(0.5);
            at = match tree.children(at).choose(r) {
                Some(&c) if reuse => c,
                _ => {
                    leaves.push(None);
                    tree.add_child(at)
                }
            };
        }
        leaves[at] = Some(Leaf {
            vertex,
            color: r.gen_range(1..=m),
        });
    }
    let mut sig = Signature::new();
    for i in 1..=m {
        for j in i..=m {
            for l in 1..=d {
                if r.gen_bool(0.4) {
                    sig.insert(i, j, l);
                }
            }
        }
    }
    TreeModel::new(tree, d, m, leaves, sig).expect("generated model is valid")
}

/// Random SC-tree of height at most `max_h` on `1..=max_n` vertices.
pub fn random_sc_tree(r: &mut StdRng, max_h: usize, max_n: usize) -> ScTree {
    let n = r.gen_range(1..=max_n);
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(r);
    let h = r.gen_range(1..=max_h);
    ScTree::new(sc_node(r, &ids, h)).expect("generated SC-tree is valid")
}

fn sc_node(r: &mut StdRng, ids: &[usize], h: usize) -> ScNode {
    if ids.len() == 1 && (h == 0 || r.gen_bool(0.5)) {
        return ScNode::leaf(ids[0]);
    }
    let parts: Vec<Vec<usize>> = if h == 1 {
        ids.iter().map(|&v| vec![v]).collect()
    } else {
        let k = r.gen_range(1..=ids.len().min(4));
        let mut parts = vec![Vec::new(); k];
        for (i, &v) in ids.iter().enumerate() {
            // the first k ids make every part non-empty
            let p = if i < k { i } else { r.gen_range(0..k) };
            parts[p].push(v);
        }
        parts
    };
    let x: Vec<usize> = ids.iter().copied().filter(|_| r.gen_bool(0.5)).collect();
    let children = parts.iter().map(|p| sc_node(r, p, h - 1)).collect();
    ScNode::internal(x, children)
}

/// Uniform random graph on `n` vertices with edge probability `p`.
pub fn random_graph(r: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random coloured tree of height at most `max_h`; every internal node gets
/// `0..=max_children` children and colours lie in `1..=colors`.
pub fn random_colored_tree(
    r: &mut StdRng,
    max_h: usize,
    max_children: usize,
    colors: usize,
) -> ColoredTree {
    let mut tree = RootedTree::new();
    let mut col = vec![r.gen_range(1..=colors)];
    let mut frontier = vec![tree.root()];
    for _ in 0..max_h {
        let mut next = Vec::new();
        for v in frontier {
            for _ in 0..r.gen_range(0..=max_children) {
                next.push(tree.add_child(v));
                col.push(r.gen_range(1..=colors));
            }
        }
        frontier = next;
    }
    ColoredTree::new(tree, col).unwrap()
}

/// Vocabulary for random formulas.
pub struct Vocab {
    pub vertex_vars: &'static [&'static str],
    pub set_vars: &'static [&'static str],
    pub labels: &'static [&'static str],
    pub moduli: &'static [usize],
}

pub const GRAPH_VOCAB: Vocab = Vocab {
    vertex_vars: &["x", "y", "z"],
    set_vars: &["X", "Y"],
    labels: &["red"],
    moduli: &[2, 3],
};

fn atom(r: &mut StdRng, v: &Vocab) -> Formula {
    let var = |r: &mut StdRng| v.vertex_vars.choose(r).unwrap().to_string();
    let set = |r: &mut StdRng| v.set_vars.choose(r).unwrap().to_string();
    match r.gen_range(0..8) {
        0 => Formula::True,
        1 | 2 => Formula::Edge(var(r), var(r)),
        3 => Formula::Eq(var(r), var(r)),
        4 if !v.set_vars.is_empty() => Formula::In(var(r), set(r)),
        5 if !v.set_vars.is_empty() && !v.moduli.is_empty() => {
            let modulus = *v.moduli.choose(r).unwrap();
            Formula::Mod {
                residue: r.gen_range(0..modulus),
                modulus,
                set: set(r),
            }
        }
        6 if !v.labels.is_empty() => {
            Formula::Label(v.labels.choose(r).unwrap().to_string(), var(r))
        }
        _ => Formula::Edge(var(r), var(r)),
    }
}

/// Random formula of nesting depth at most `depth`; free variables are
/// whatever happens to be left unbound.
pub fn random_body(r: &mut StdRng, v: &Vocab, depth: usize) -> Formula {
    if depth == 0 || r.gen_bool(0.25) {
        return atom(r, v);
    }
    match r.gen_range(0..5) {
        0 => Formula::not(random_body(r, v, depth - 1)),
        1 | 2 => {
            let op = *[BinOp::And, BinOp::Or, BinOp::Implies, BinOp::Iff]
                .choose(r)
                .unwrap();
            let a = random_body(r, v, depth - 1);
            let b = random_body(r, v, depth - 1);
            Formula::Binary(op, Box::new(a), Box::new(b))
        }
        3 if !v.set_vars.is_empty() && r.gen_bool(0.3) => {
            let q = *[Quantifier::ExistsSet, Quantifier::ForallSet]
                .choose(r)
                .unwrap();
            Formula::quant(
                q,
                *v.set_vars.choose(r).unwrap(),
                random_body(r, v, depth - 1),
            )
        }
        _ => {
            let q = *[Quantifier::Exists, Quantifier::Forall].choose(r).unwrap();
            Formula::quant(
                q,
                *v.vertex_vars.choose(r).unwrap(),
                random_body(r, v, depth - 1),
            )
        }
    }
}

/// Quantifies away every free variable not in `keep`.
pub fn close_except(r: &mut StdRng, f: Formula, keep: &[&str]) -> Formula {
    let free: Vec<String> = f
        .free_variables()
        .into_iter()
        .filter(|v| !keep.contains(&v.as_str()))
        .collect();
    free.into_iter().fold(f, |f, var| {
        let set = var.starts_with(|c: char| c.is_uppercase());
        let q = match (set, r.gen_bool(0.5)) {
            (true, true) => Quantifier::ExistsSet,
            (true, false) => Quantifier::ForallSet,
            (false, true) => Quantifier::Exists,
            (false, false) => Quantifier::Forall,
        };
        Formula::quant(q, var, f)
    })
}

pub fn random_sentence(r: &mut StdRng, v: &Vocab, depth: usize) -> Formula {
    let body = random_body(r, v, depth);
    close_except(r, body, &[])
}

/// Adds label `red` to a random subset of the vertices.
pub fn paint_red(r: &mut StdRng, mut g: Graph) -> Graph {
    for v in 0..g.n() {
        if r.gen_bool(0.4) {
            g.add_label(v, "red").unwrap();
        }
    }
    g
}

/// Proptest strategy from a seeded generator: shrinking is over the seed only.
pub fn seeded<T: std::fmt::Debug>(f: fn(&mut StdRng) -> T) -> impl Strategy<Value = T> {
    any::<u64>().prop_map(move |s| f(&mut rng(s)))
}
