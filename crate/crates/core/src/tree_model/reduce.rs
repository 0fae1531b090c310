//! Bounded-height reduction of coloured rooted trees.
//!
//! Bottom-up, at every node `w` whose subtree has height `i`, the child
//! subtrees are grouped into colour-isomorphism classes. A class of size
//! `c ≥ R'(i) + M` loses `M`-tuples of members until `R'(i) + ((c - R'(i)) mod M)`
//! remain. Later members (in child order) are removed first.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::RootedTree;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A rooted tree with a colour on every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredTree {
    pub tree: RootedTree,
    pub colors: Vec<usize>,
}

impl ColoredTree {
    pub fn new(tree: RootedTree, colors: Vec<usize>) -> Result<Self> {
        if colors.len() != tree.node_count() {
            return Err(Error::validation("one colour per node required"));
        }
        Ok(ColoredTree { tree, colors })
    }

    /// The tree as a labelled graph: tree edges, label `cK` for colour `K`,
    /// and label `root` on the root.
    pub fn to_graph(&self) -> Graph {
        let n = self.tree.node_count();
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(self.tree.parent(v).unwrap(), v).unwrap();
        }
        for (v, c) in self.colors.iter().enumerate() {
            g.add_label(v, &format!("c{c}")).unwrap();
        }
        g.add_label(0, "root").unwrap();
        g
    }
}

/// Canonical code of the subtree at `v`: own colour plus sorted child codes.
pub fn colour_code(t: &ColoredTree, v: usize) -> String {
    let mut codes: Vec<String> = t
        .tree
        .children(v)
        .iter()
        .map(|&c| colour_code(t, c))
        .collect();
    codes.sort();
    format!("{}[{}]", t.colors[v], codes.join(","))
}

/// One class that was cut down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCut {
    /// Node of the input tree whose children were cut.
    pub node: usize,
    pub height: usize,
    pub code: String,
    pub before: usize,
    pub after: usize,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub tree: ColoredTree,
    /// `origin[v]` is the input node that result node `v` came from.
    pub origin: Vec<usize>,
    pub cuts: Vec<ClassCut>,
}

struct State {
    kept: Vec<bool>,
    code: Vec<String>,
    height: Vec<usize>,
    cuts: Vec<ClassCut>,
}

/// Reduces `t` with per-height thresholds `thresholds(i)` modulo `modulus`.
pub fn reduce_tree(
    t: &ColoredTree,
    thresholds: &dyn Fn(usize) -> usize,
    modulus: usize,
) -> Result<Reduction> {
    if modulus == 0 {
        return Err(Error::domain("modulus must be at least 1"));
    }
    let n = t.tree.node_count();
    let mut st = State {
        kept: vec![true; n],
        code: vec![String::new(); n],
        height: vec![0; n],
        cuts: Vec::new(),
    };
    for w in t.tree.preorder().into_iter().rev() {
        process(t, w, thresholds, modulus, &mut st);
    }

    let mut tree = RootedTree::new();
    let mut colors = vec![t.colors[0]];
    let mut origin = vec![0];
    copy_kept(t, 0, 0, &st.kept, &mut tree, &mut colors, &mut origin);
    Ok(Reduction {
        tree: ColoredTree { tree, colors },
        origin,
        cuts: st.cuts,
    })
}

fn process(
    t: &ColoredTree,
    w: usize,
    thresholds: &dyn Fn(usize) -> usize,
    modulus: usize,
    st: &mut State,
) {
    let alive: Vec<usize> = t
        .tree
        .children(w)
        .iter()
        .copied()
        .filter(|&c| st.kept[c])
        .collect();
    let height = alive.iter().map(|&c| st.height[c] + 1).max().unwrap_or(0);
    if height > 0 {
        let floor = thresholds(height);
        let mut classes: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for &c in &alive {
            classes.entry(st.code[c].as_str()).or_default().push(c);
        }
        let mut cuts = Vec::new();
        for (code, members) in &classes {
            let before = members.len();
            if before < floor + modulus {
                continue;
            }
            let after = floor + (before - floor) % modulus;
            cuts.push((
                members[after..].to_vec(),
                ClassCut {
                    node: w,
                    height,
                    code: code.to_string(),
                    before,
                    after,
                },
            ));
        }
        for (dropped, cut) in cuts {
            for c in dropped {
                st.kept[c] = false;
            }
            st.cuts.push(cut);
        }
    }
    let mut codes: Vec<&str> = t
        .tree
        .children(w)
        .iter()
        .filter(|&&c| st.kept[c])
        .map(|&c| st.code[c].as_str())
        .collect();
    codes.sort_unstable();
    let code = format!("{}[{}]", t.colors[w], codes.join(","));
    st.height[w] = t
        .tree
        .children(w)
        .iter()
        .filter(|&&c| st.kept[c])
        .map(|&c| st.height[c] + 1)
        .max()
        .unwrap_or(0);
    st.code[w] = code;
}

fn copy_kept(
    t: &ColoredTree,
    old: usize,
    new: usize,
    kept: &[bool],
    tree: &mut RootedTree,
    colors: &mut Vec<usize>,
    origin: &mut Vec<usize>,
) {
    for &c in t.tree.children(old) {
        if kept[c] {
            let id = tree.add_child(new);
            colors.push(t.colors[c]);
            origin.push(c);
            copy_kept(t, c, id, kept, tree, colors, origin);
        }
    }
}

/// Text format: one `v parent colour` line per node in increasing order,
/// `-1` as the parent of node 0.
pub fn write_colored_tree(t: &ColoredTree) -> String {
    let mut out = String::new();
    for v in 0..t.tree.node_count() {
        let p = t.tree.parent(v).map_or(-1, |p| p as i64);
        writeln!(out, "{v} {p} {}", t.colors[v]).unwrap();
    }
    out
}

pub fn read_colored_tree(text: &str) -> Result<ColoredTree> {
    let mut parents = Vec::new();
    let mut colors = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: String| Error::Parse {
            line: i + 1,
            column: 1,
            message: m,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [v, p, c] = fields.as_slice() else {
            return Err(err(format!("expected `v parent colour`, found `{line}`")));
        };
        let v: usize = v.parse().map_err(|_| err(format!("bad node `{v}`")))?;
        if v != parents.len() {
            return Err(err(format!("expected node {}, found {v}", parents.len())));
        }
        parents.push(match p.parse::<i64>() {
            Ok(-1) => None,
            Ok(p) if p >= 0 => Some(p as usize),
            _ => return Err(err(format!("bad parent `{p}`"))),
        });
        colors.push(c.parse().map_err(|_| err(format!("bad colour `{c}`")))?);
    }
    if parents.is_empty() {
        return Err(Error::format("a coloured tree needs at least the root"));
    }
    ColoredTree::new(RootedTree::from_parents(&parents)?, colors)
}
