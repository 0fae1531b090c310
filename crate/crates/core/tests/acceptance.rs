//! The acceptance suite: one PASS/FAIL line per criterion, with timings.
//!
//! Expected values come from independent brute-force oracles defined below
//! (twin classes, tree-depth by vertex deletion, longest paths), never from
//! the library routine under test.

mod common;

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::time::{Duration, Instant};

use common::*;
use rand::seq::SliceRandom;
use rand::Rng;
use shrubkit::constructions::{make_path, path_model, perfect_matching};
use shrubkit::depth::{td_to_tm, tree_depth, validate_td};
use shrubkit::graph::{all_graphs, are_isomorphic, canonical_form};
use shrubkit::lincw::{eval_as_model_ids, tm_to_lincw};
use shrubkit::mso::{
    apply_interpretation, apply_transduction, evaluate, parse_formula, parse_sentence,
    rewrite_formula, Formula, Interpretation, Labeling, RelStructure, Transduction,
};
use shrubkit::sc_model::{evaluate_sc, sc_to_tm, tm_to_sc};
use shrubkit::solver::{minimal_obstructions, tm_membership, tmc_membership, SolverOptions};
use shrubkit::tree_model::{colour_code, reduce_tree, verify_k_copied, ColoredTree};
use shrubkit::{Caps, Graph, TreeModel};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------- oracles ----------

/// Neighbourhood diversity by pairwise twin tests.
fn nd_oracle(g: &Graph) -> usize {
    let n = g.n();
    let twins = |u: usize, v: usize| {
        (0..n)
            .filter(|&w| w != u && w != v)
            .all(|w| g.has_edge(u, w) == g.has_edge(v, w))
    };
    let mut reps: Vec<usize> = Vec::new();
    for v in 0..n {
        if !reps.iter().any(|&r| twins(r, v)) {
            reps.push(v);
        }
    }
    reps.len()
}

/// Tree-depth by `td = 1 + min_v td(G - v)` on connected sets, max over components.
fn td_oracle(g: &Graph) -> usize {
    fn comps(g: &Graph, set: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let mut left = set;
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            loop {
                let mut grow = comp;
                for v in 0..g.n() {
                    if comp >> v & 1 == 1 {
                        for w in g.neighbors(v) {
                            grow |= (1 << w) & set;
                        }
                    }
                }
                if grow == comp {
                    break;
                }
                comp = grow;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }
    fn td(g: &Graph, set: u32, memo: &mut HashMap<u32, usize>) -> usize {
        if set == 0 {
            return 0;
        }
        if let Some(&t) = memo.get(&set) {
            return t;
        }
        let cs = comps(g, set);
        let t = if cs.len() > 1 {
            cs.iter().map(|&c| td(g, c, memo)).max().unwrap()
        } else {
            (0..g.n())
                .filter(|v| set >> v & 1 == 1)
                .map(|v| 1 + td(g, set & !(1 << v), memo))
                .min()
                .unwrap()
        };
        memo.insert(set, t);
        t
    }
    td(g, (1u32 << g.n()) - 1, &mut HashMap::new())
}

/// Number of edges on a longest simple path.
fn longest_path(g: &Graph) -> usize {
    fn dfs(g: &Graph, v: usize, seen: u32) -> usize {
        g.neighbors(v)
            .filter(|&w| seen >> w & 1 == 0)
            .map(|w| 1 + dfs(g, w, seen | 1 << w))
            .max()
            .unwrap_or(0)
    }
    (0..g.n()).map(|v| dfs(g, v, 1 << v)).max().unwrap_or(0)
}

fn ceil_log2(x: usize) -> usize {
    (usize::BITS - (x - 1).leading_zeros()) as usize
}

fn graphs_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(all_graphs).collect()
}

fn model_pool() -> Vec<TreeModel> {
    let mut r = rng(3);
    (0..200).map(|_| random_model(&mut r, 3, 3, 12)).collect()
}

// ---------- criteria ----------

fn c1_path_models() -> Check {
    for m in 1..=3 {
        let model = path_model(m).map_err(|e| e.to_string())?;
        let len = 3 * (1 << m) - 4;
        ensure(model.colors() == m && model.used_colors() == m, || {
            format!("m={m}: {} colours", model.colors())
        })?;
        ensure(model.depth() == 2 * m + 1, || {
            format!("m={m}: depth {}", model.depth())
        })?;
        ensure(model.realize() == make_path(len), || {
            format!("m={m}: realization is not P_{len}")
        })?;
    }
    Ok("lengths 2, 8, 20 realized exactly".into())
}

fn c2_path_non_membership() -> Check {
    let opts = SolverOptions::default();
    let p3 = make_path(3);
    for d in 1..=4 {
        let found = tm_membership(&p3, d, 1, &opts).map_err(|e| e.to_string())?;
        ensure(found.is_none(), || {
            format!("4-vertex path accepted at d={d}, m=1")
        })?;
    }
    // the 3-vertex path is a one-colour model once d = 2
    let p2 = make_path(2);
    let d1 = tm_membership(&p2, 1, 1, &opts).map_err(|e| e.to_string())?;
    let d2 = tm_membership(&p2, 2, 1, &opts).map_err(|e| e.to_string())?;
    ensure(d1.is_none() && d2.is_some_and(|m| m.verify(&p2)), || {
        "3-vertex path verdicts wrong".into()
    })?;
    Ok("4-vertex path: NO for d = 1..4 (incl. d=2); 3-vertex path: NO at d=1, YES at d=2".into())
}

fn c3_tm_to_sc() -> Check {
    for (i, m) in model_pool().iter().enumerate() {
        let t = tm_to_sc(m).map_err(|e| format!("model {i}: {e}"))?;
        ensure(evaluate_sc(&t) == m.realize(), || {
            format!("model {i}: graphs differ")
        })?;
        let bound = m.depth() * m.colors() * (m.colors() + 1);
        ensure(t.height() <= bound, || {
            format!("model {i}: height {} > {bound}", t.height())
        })?;
    }
    Ok("200 models".into())
}

fn c4_sc_to_tm() -> Check {
    let mut r = rng(4);
    for i in 0..200 {
        let t = random_sc_tree(&mut r, 3, 10);
        let m = sc_to_tm(&t);
        ensure(m.realize() == evaluate_sc(&t), || {
            format!("tree {i}: graphs differ")
        })?;
        ensure(m.depth() == t.height(), || {
            format!("tree {i}: depth {} != height {}", m.depth(), t.height())
        })?;
        ensure(m.colors() <= 1 << t.height(), || {
            format!("tree {i}: {} colours", m.colors())
        })?;
    }
    Ok("200 SC-trees".into())
}

fn c5_tree_depth() -> Check {
    let caps = Caps::default();
    for len in 0..=14 {
        let (td, _) = tree_depth(&make_path(len), &caps).map_err(|e| e.to_string())?;
        ensure(td == ceil_log2(len + 2), || {
            format!("path of length {len}: td {td}")
        })?;
    }
    let mut count = 0;
    for g in graphs_up_to(7) {
        let (td, f) = tree_depth(&g, &caps).map_err(|e| e.to_string())?;
        let l = longest_path(&g);
        ensure(ceil_log2(l + 2) <= td && td <= l + 1, || {
            format!("sandwich fails on {g:?}")
        })?;
        ensure(td == td_oracle(&g), || {
            format!("td {td} disagrees with the deletion oracle on {g:?}")
        })?;
        ensure(validate_td(&g, &f).unwrap() && f.height() + 1 == td, || {
            format!("bad forest for {g:?}")
        })?;
        count += 1;
    }
    Ok(format!(
        "paths 0..14; sandwich on {count} graphs with n ≤ 7"
    ))
}

fn c6_td_to_tm() -> Check {
    let caps = Caps::default();
    let mut count = 0;
    for g in graphs_up_to(6).into_iter().filter(Graph::is_connected) {
        let (td, f) = tree_depth(&g, &caps).map_err(|e| e.to_string())?;
        let m = td_to_tm(&g, &f).map_err(|e| e.to_string())?;
        ensure(m.realize() == g, || {
            format!("realization differs for {g:?}")
        })?;
        ensure(m.depth() == td - 1, || {
            format!("depth {} with td {td}", m.depth())
        })?;
        ensure(m.colors() < 1 << td, || {
            format!("{} colours with td {td}", m.colors())
        })?;
        count += 1;
    }
    Ok(format!("{count} connected graphs"))
}

fn c7_lincw() -> Check {
    for (i, m) in model_pool().iter().enumerate() {
        let e = tm_to_lincw(m);
        let g = eval_as_model_ids(m, &e).map_err(|e| format!("model {i}: {e}"))?;
        ensure(g == m.realize(), || format!("model {i}: graphs differ"))?;
        let bound = m.colors() * (m.depth() + 1);
        ensure(e.label_count() <= bound, || {
            format!("model {i}: {} labels > {bound}", e.label_count())
        })?;
    }
    Ok("200 models".into())
}

fn c8_closure() -> Check {
    let mut r = rng(8);
    for (i, m) in model_pool().iter().enumerate() {
        let g = m.realize();
        ensure(m.complement_model().realize() == g.complement(), || {
            format!("model {i}: complement")
        })?;
        let mut keep: Vec<usize> = (0..g.n()).filter(|_| r.gen_bool(0.6)).collect();
        if keep.is_empty() {
            keep.push(r.gen_range(0..g.n()));
        }
        keep.shuffle(&mut r);
        let sub = m.restrict(&keep).map_err(|e| format!("model {i}: {e}"))?;
        ensure(sub.realize() == g.induced_subgraph(&keep).unwrap(), || {
            format!("model {i}: restrict")
        })?;
    }
    let opts = SolverOptions::default();
    let mut checks = 0;
    for g in graphs_up_to(5) {
        for d in 1..=2 {
            for m in 1..=2 {
                let yes = tm_membership(&g, d, m, &opts)
                    .map_err(|e| e.to_string())?
                    .is_some();
                let co = tm_membership(&g.complement(), d, m, &opts)
                    .map_err(|e| e.to_string())?
                    .is_some();
                ensure(yes == co, || {
                    format!("complement closure fails on {g:?} at ({d},{m})")
                })?;
                if yes && g.n() > 1 {
                    for v in 0..g.n() {
                        let h = g.remove_vertex(v).unwrap();
                        let sub = tm_membership(&h, d, m, &opts)
                            .map_err(|e| e.to_string())?
                            .is_some();
                        ensure(sub, || {
                            format!("induced closure fails on {g:?} minus {v} at ({d},{m})")
                        })?;
                    }
                }
                checks += 1;
            }
        }
    }
    Ok(format!("200 models; {checks} solver instances"))
}

fn c9_nd() -> Check {
    let opts = SolverOptions::default();
    let mut count = 0;
    for g in graphs_up_to(6) {
        let nd = nd_oracle(&g);
        for m in 1..=4 {
            let yes = tm_membership(&g, 1, m, &opts)
                .map_err(|e| e.to_string())?
                .is_some();
            ensure(yes == (nd <= m), || {
                format!("{g:?}: TM(1,{m}) says {yes}, nd is {nd}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} (graph, m) pairs"))
}

fn c10_interpretations() -> Check {
    let caps = Caps {
        set_quantifier_depth: 6,
        ..Caps::default()
    };
    let mut r = rng(10);
    let small = Vocab {
        vertex_vars: &["x", "y", "z"],
        set_vars: &["X"],
        labels: &["red"],
        moduli: &[2],
    };
    let (mut yes, mut no) = (0, 0);
    for i in 0..200 {
        let n = r.gen_range(0..=6);
        let g = random_graph(&mut r, n, 0.45);
        let g = paint_red(&mut r, g);
        let nu = random_body(&mut r, &small, 3);
        let nu = close_except(&mut r, nu, &["x"]);
        let mu = random_body(&mut r, &small, 3);
        let mu = close_except(&mut r, mu, &["x", "y"]);
        let interp = Interpretation::new(nu, mu).map_err(|e| format!("triple {i}: {e}"))?;
        let phi = random_sentence(&mut r, &GRAPH_VOCAB, 4);
        let (h, _) = apply_interpretation(&interp, &RelStructure::from(g.clone()), &caps)
            .map_err(|e| format!("triple {i}: {e}"))?;
        let lhs = evaluate(
            &RelStructure::from(g),
            &rewrite_formula(&interp, &phi),
            &caps,
        )
        .map_err(|e| format!("triple {i}: {e}"))?;
        let rhs = evaluate(&RelStructure::from(h), &phi, &caps)
            .map_err(|e| format!("triple {i}: {e}"))?;
        ensure(lhs == rhs, || format!("triple {i}: {phi}"))?;
        if lhs {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("200 triples ({yes} true, {no} false)"))
}

fn c11_matchings() -> Check {
    let caps = Caps::default();
    let t = Transduction {
        guard: Formula::True,
        copies: 2,
        interpretation: Interpretation::new(
            parse_formula("true").unwrap(),
            parse_formula("rel_sim(x,y) & !(x = y)").unwrap(),
        )
        .unwrap(),
    };
    for n in 0..=5 {
        let h = apply_transduction(&t, &Labeling::new(), &Graph::new(n), &caps)
            .map_err(|e| e.to_string())?
            .ok_or("guard failed")?;
        let expected = Graph::from_edges(2 * n, (0..n).map(|v| (v, n + v))).unwrap();
        ensure(
            h == expected && are_isomorphic(&h, &perfect_matching(n)),
            || format!("n={n}: {h:?}"),
        )?;
    }
    let opts = SolverOptions::default();
    for n in 1..=4 {
        let g = perfect_matching(n);
        let m = tmc_membership(&g, 1, 2, 2, &opts).map_err(|e| e.to_string())?;
        let m = m.ok_or_else(|| format!("matching with {n} edges rejected"))?;
        ensure(m.verify(&g) && verify_k_copied(&m, 1, 2, 2), || {
            format!("bad witness for n={n}")
        })?;
    }
    Ok("2n-vertex matchings for n ≤ 5; TMC(1,2,2) witnesses for 1..4 edges".into())
}

/// Reduced code of `v`'s subtree, computed recursively from scratch.
fn reduced_code(
    t: &ColoredTree,
    v: usize,
    th: &dyn Fn(usize) -> usize,
    modulus: usize,
) -> (String, usize) {
    let kids: Vec<(String, usize)> = t
        .tree
        .children(v)
        .iter()
        .map(|&c| reduced_code(t, c, th, modulus))
        .collect();
    let height = kids.iter().map(|k| k.1 + 1).max().unwrap_or(0);
    let mut classes: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for (code, h) in &kids {
        let e = classes.entry(code.as_str()).or_insert((0, *h));
        e.0 += 1;
    }
    let mut codes = Vec::new();
    for (code, (count, _)) in classes {
        let floor = th(height);
        let keep = if count < floor + modulus {
            count
        } else {
            floor + (count - floor) % modulus
        };
        codes.extend(std::iter::repeat_n(code.to_string(), keep));
    }
    codes.sort();
    (format!("{}[{}]", t.colors[v], codes.join(",")), height)
}

fn subtree_height(t: &ColoredTree, v: usize) -> usize {
    t.tree
        .children(v)
        .iter()
        .map(|&c| subtree_height(t, c) + 1)
        .max()
        .unwrap_or(0)
}

fn c12_reduction() -> Check {
    let mut r = rng(12);
    let mut cut_trees = 0;
    for i in 0..500 {
        let t = random_colored_tree(&mut r, 3, 4, 2);
        let mut th: Vec<usize> = (0..3).map(|_| r.gen_range(1..=3)).collect();
        th.sort();
        let modulus = r.gen_range(1..=3);
        let f = move |h: usize| th[(h.max(1) - 1).min(2)];
        let red = reduce_tree(&t, &f, modulus).map_err(|e| format!("tree {i}: {e}"))?;
        let out = &red.tree;
        // subtree: colours and parent links carried over through `origin`
        ensure(
            red.origin[0] == 0 && out.tree.node_count() == red.origin.len(),
            || format!("tree {i}: origin"),
        )?;
        for v in 1..out.tree.node_count() {
            let p = out.tree.parent(v).unwrap();
            ensure(t.tree.parent(red.origin[v]) == Some(red.origin[p]), || {
                format!("tree {i}: not a subtree")
            })?;
            ensure(out.colors[v] == t.colors[red.origin[v]], || {
                format!("tree {i}: colour changed")
            })?;
        }
        ensure(
            colour_code(out, 0) == reduced_code(&t, 0, &f, modulus).0,
            || format!("tree {i}: code differs from oracle"),
        )?;
        // cardinality window and congruence, class by class
        for w in 0..out.tree.node_count() {
            let h = subtree_height(out, w);
            if h == 0 {
                continue;
            }
            let mut after: BTreeMap<String, usize> = BTreeMap::new();
            for &c in out.tree.children(w) {
                *after.entry(colour_code(out, c)).or_default() += 1;
            }
            let mut before: BTreeMap<String, usize> = BTreeMap::new();
            for &c in t.tree.children(red.origin[w]) {
                *before
                    .entry(reduced_code(&t, c, &f, modulus).0)
                    .or_default() += 1;
            }
            ensure(before.keys().eq(after.keys()), || {
                format!("tree {i}: a class vanished")
            })?;
            let floor = f(h);
            for (code, &a) in &after {
                let b = before[code];
                let ok = if b < floor + modulus {
                    a == b
                } else {
                    floor <= a && a < floor + modulus && (b - a).is_multiple_of(modulus)
                };
                ensure(ok, || {
                    format!("tree {i}: class {code} went from {b} to {a}")
                })?;
            }
        }
        if !red.cuts.is_empty() {
            cut_trees += 1;
        }
    }
    ensure(cut_trees > 50, || {
        format!("only {cut_trees} trees were reduced")
    })?;

    // verdict preservation on small trees for sentences with at most 2 quantifiers
    let caps = Caps {
        eval_vertices: 16,
        ..Caps::default()
    };
    let vocab = Vocab {
        vertex_vars: &["x", "y"],
        set_vars: &["X"],
        labels: &["c1", "c2", "root"],
        moduli: &[2],
    };
    let mut sentences: Vec<Formula> = [
        "ex1 x. ex1 y. !(x = y) & label_c1(x) & label_c1(y) & !label_root(x) & !label_root(y)",
        "ex1 x. label_root(x) & ex1 y. edge(x,y) & label_c2(y)",
        "all1 x. ex1 y. edge(x,y) & label_c1(y)",
        "ex2 X. mod(1,2,X) & all1 x. x in X <-> label_c1(x)",
        "ex2 X. mod(0,2,X) & all1 x. x in X <-> label_c2(x)",
        "ex1 x. ex1 y. edge(x,y) & label_c1(x) & label_c1(y)",
    ]
    .iter()
    .map(|s| parse_sentence(s).unwrap())
    .collect();
    while sentences.len() < 40 {
        let s = random_sentence(&mut r, &vocab, 4);
        if s.quantifier_count() <= 2 && s.quantifier_count() > 0 {
            sentences.push(s);
        }
    }
    let small_tree = |r: &mut rand::rngs::StdRng| loop {
        let t = random_colored_tree(r, 2, 4, 2);
        if t.tree.node_count() <= 13 {
            return t;
        }
    };
    let verdicts = |t: &ColoredTree| -> Vec<bool> {
        let s = RelStructure::from(t.to_graph());
        sentences
            .iter()
            .map(|f| evaluate(&s, f, &caps).unwrap())
            .collect()
    };
    let train: Vec<ColoredTree> = (0..600).map(|_| small_tree(&mut r)).collect();
    let test: Vec<ColoredTree> = (0..300).map(|_| small_tree(&mut r)).collect();
    let preserved = |trees: &[ColoredTree], rt: usize| {
        trees
            .iter()
            .all(|t| verdicts(t) == verdicts(&reduce_tree(t, &|_| rt, 2).unwrap().tree))
    };
    let found = (1..=4)
        .find(|&rt| preserved(&train, rt))
        .ok_or("no threshold ≤ 4 preserves the sample")?;
    ensure(preserved(&test, found), || {
        format!("threshold {found} fails on held-out trees")
    })?;
    let reduced = test
        .iter()
        .filter(|t| !reduce_tree(t, &|_| found, 2).unwrap().cuts.is_empty())
        .count();
    ensure(reduced > 10, || {
        format!("only {reduced} held-out trees were reduced")
    })?;
    Ok(format!(
        "500 trees structurally; {} sentences, R' = {found} (M = 2) found on 600 trees, held on 300 more ({reduced} reduced)",
        sentences.len()
    ))
}

fn c13_obstructions() -> Check {
    let found =
        minimal_obstructions(1, 1, 4, &SolverOptions::default()).map_err(|e| e.to_string())?;
    // oracle: TM(1,1) is neighbourhood diversity ≤ 1
    let mut expected = Vec::new();
    for g in graphs_up_to(4) {
        let minimal = (0..g.n()).all(|v| nd_oracle(&g.remove_vertex(v).unwrap()) <= 1);
        if nd_oracle(&g) > 1 && minimal {
            expected.push(canonical_form(&g).graph);
        }
    }
    let got: Vec<Graph> = found.iter().map(|g| canonical_form(g).graph).collect();
    ensure(
        got.len() == expected.len() && expected.iter().all(|e| got.contains(e)),
        || format!("got {got:?}"),
    )?;
    let k2k1 = canonical_form(&make_path(1).disjoint_union(&Graph::new(1))).graph;
    let p3 = canonical_form(&make_path(2)).graph;
    ensure(
        got.contains(&k2k1) && got.contains(&p3) && got.len() == 2,
        || "wrong pair".into(),
    )?;
    Ok("{3-vertex path, K2 + K1}".into())
}

/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Check, u64);

#[test]
fn acceptance() {
    let criteria: [Criterion; 13] = [
        ("path-model exactness", c1_path_models, 1),
        ("path non-membership", c2_path_non_membership, 30),
        ("TM to SC round trip", c3_tm_to_sc, 10),
        ("SC to TM round trip", c4_sc_to_tm, 10),
        ("tree-depth values", c5_tree_depth, 60),
        ("td to TM", c6_td_to_tm, 60),
        ("linear clique-width translation", c7_lincw, 10),
        ("closure properties", c8_closure, 120),
        ("neighbourhood diversity equivalence", c9_nd, 120),
        ("interpretation contract", c10_interpretations, 60),
        ("perfect-matching transduction", c11_matchings, 10),
        ("reduction soundness", c12_reduction, 120),
        ("obstruction snapshot", c13_obstructions, 10),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    for (k, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = match result {
            Ok(detail) if took > Duration::from_secs(limit) => {
                Err(format!("{detail}; over the {limit} s limit"))
            }
            other => other,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        // written past the test harness capture so the lines always show
        writeln!(
            out,
            "{tag} {:>2}. {name} ({:.2} s, limit {limit} s): {detail}",
            k + 1,
            took.as_secs_f64()
        )
        .unwrap();
        if result.is_err() {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
