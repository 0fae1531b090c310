//! Naive evaluation: vertex quantifiers range over the universe, set
//! quantifiers over all its subsets (as bitmasks).

use std::collections::{BTreeMap, BTreeSet};

use super::ast::{BinOp, Formula, Quantifier};
use super::structure::RelStructure;
use crate::caps::Caps;
use crate::error::{Error, Result};

/// Values for free variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    pub vertices: BTreeMap<String, usize>,
    pub sets: BTreeMap<String, BTreeSet<usize>>,
}

impl Assignment {
    pub fn vertex(mut self, name: &str, v: usize) -> Self {
        self.vertices.insert(name.to_string(), v);
        self
    }

    pub fn set(mut self, name: &str, s: impl IntoIterator<Item = usize>) -> Self {
        self.sets.insert(name.to_string(), s.into_iter().collect());
        self
    }
}

enum Node {
    Const(bool),
    Edge(usize, usize),
    Eq(usize, usize),
    In(usize, usize),
    Mod {
        residue: u32,
        modulus: u32,
        set: usize,
    },
    Label(u64, usize),
    Rel(usize, usize, usize),
    Not(Box<Node>),
    Bin(BinOp, Box<Node>, Box<Node>),
    Vertex(bool, usize, Box<Node>),
    Set(bool, usize, Box<Node>),
}

/// A formula compiled against one structure: variables become slots, label
/// atoms become vertex masks.
pub struct Compiled {
    root: Node,
    n: usize,
    adj: Vec<u64>,
    rels: Vec<Vec<u64>>,
    vertex_slots: usize,
    set_slots: usize,
}

struct Compiler<'a> {
    s: &'a RelStructure,
    rel_index: BTreeMap<String, usize>,
    vertex_scope: Vec<String>,
    set_scope: Vec<String>,
    vertex_slots: usize,
    set_slots: usize,
}

impl Compiler<'_> {
    fn vertex_slot(&self, name: &str) -> Result<usize> {
        self.vertex_scope
            .iter()
            .rposition(|v| v == name)
            .ok_or_else(|| Error::domain(format!("unbound vertex variable `{name}`")))
    }

    fn set_slot(&self, name: &str) -> Result<usize> {
        self.set_scope
            .iter()
            .rposition(|v| v == name)
            .ok_or_else(|| Error::domain(format!("unbound set variable `{name}`")))
    }

    fn compile(&mut self, f: &Formula) -> Result<Node> {
        Ok(match f {
            Formula::True => Node::Const(true),
            Formula::False => Node::Const(false),
            Formula::Edge(a, b) => Node::Edge(self.vertex_slot(a)?, self.vertex_slot(b)?),
            Formula::Eq(a, b) => Node::Eq(self.vertex_slot(a)?, self.vertex_slot(b)?),
            Formula::In(a, b) => Node::In(self.vertex_slot(a)?, self.set_slot(b)?),
            Formula::Mod {
                residue,
                modulus,
                set,
            } => Node::Mod {
                residue: *residue as u32,
                modulus: *modulus as u32,
                set: self.set_slot(set)?,
            },
            Formula::Label(name, x) => {
                let mask = (0..self.s.n())
                    .filter(|&v| self.s.graph().has_label(v, name))
                    .fold(0u64, |m, v| m | 1 << v);
                Node::Label(mask, self.vertex_slot(x)?)
            }
            Formula::Rel(name, a, b) => {
                let (a, b) = (self.vertex_slot(a)?, self.vertex_slot(b)?);
                match self.rel_index.get(name) {
                    Some(&r) => Node::Rel(r, a, b),
                    None => Node::Const(false),
                }
            }
            Formula::Not(a) => Node::Not(Box::new(self.compile(a)?)),
            Formula::Binary(op, a, b) => {
                Node::Bin(*op, Box::new(self.compile(a)?), Box::new(self.compile(b)?))
            }
            Formula::Quant(q, v, body) => {
                if q.is_set() {
                    self.set_scope.push(v.clone());
                    let slot = self.set_scope.len() - 1;
                    self.set_slots = self.set_slots.max(self.set_scope.len());
                    let body = self.compile(body);
                    self.set_scope.pop();
                    Node::Set(*q == Quantifier::ExistsSet, slot, Box::new(body?))
                } else {
                    self.vertex_scope.push(v.clone());
                    let slot = self.vertex_scope.len() - 1;
                    self.vertex_slots = self.vertex_slots.max(self.vertex_scope.len());
                    let body = self.compile(body);
                    self.vertex_scope.pop();
                    Node::Vertex(*q == Quantifier::Exists, slot, Box::new(body?))
                }
            }
        })
    }
}

impl Compiled {
    /// Compiles `f` with the given free variables occupying the first slots
    /// in order.
    pub fn new(
        s: &RelStructure,
        f: &Formula,
        free_vertices: &[&str],
        free_sets: &[&str],
        caps: &Caps,
    ) -> Result<Compiled> {
        let n = s.n();
        if n > caps.eval_vertices.min(64) {
            return Err(Error::resource(format!(
                "evaluation is capped at {} vertices, structure has {n}",
                caps.eval_vertices
            )));
        }
        let depth = f.set_quantifier_depth();
        if depth > caps.set_quantifier_depth {
            return Err(Error::resource(format!(
                "set quantifiers nest {depth} deep, cap is {}",
                caps.set_quantifier_depth
            )));
        }
        let rel_index: BTreeMap<String, usize> = s
            .relation_names()
            .enumerate()
            .map(|(i, r)| (r.to_string(), i))
            .collect();
        let rels = rel_index.keys().map(|r| s.relation_masks(r)).collect();
        let mut c = Compiler {
            s,
            rel_index,
            vertex_scope: free_vertices.iter().map(|v| v.to_string()).collect(),
            set_scope: free_sets.iter().map(|v| v.to_string()).collect(),
            vertex_slots: free_vertices.len(),
            set_slots: free_sets.len(),
        };
        let root = c.compile(f)?;
        Ok(Compiled {
            root,
            n,
            adj: s.graph().adjacency_masks()?,
            rels,
            vertex_slots: c.vertex_slots,
            set_slots: c.set_slots,
        })
    }

    /// Truth value with the free slots set to `vertices` and `sets`.
    pub fn eval(&self, vertices: &[usize], sets: &[u64]) -> bool {
        let mut vs = vec![0; self.vertex_slots];
        vs[..vertices.len()].copy_from_slice(vertices);
        let mut ss = vec![0; self.set_slots];
        ss[..sets.len()].copy_from_slice(sets);
        self.go(&self.root, &mut vs, &mut ss)
    }

    fn go(&self, node: &Node, vs: &mut [usize], ss: &mut [u64]) -> bool {
        match node {
            Node::Const(b) => *b,
            Node::Edge(a, b) => self.adj[vs[*a]] >> vs[*b] & 1 == 1,
            Node::Eq(a, b) => vs[*a] == vs[*b],
            Node::In(a, x) => ss[*x] >> vs[*a] & 1 == 1,
            Node::Mod {
                residue,
                modulus,
                set,
            } => ss[*set].count_ones() % modulus == *residue,
            Node::Label(mask, x) => mask >> vs[*x] & 1 == 1,
            Node::Rel(r, a, b) => self.rels[*r][vs[*a]] >> vs[*b] & 1 == 1,
            Node::Not(a) => !self.go(a, vs, ss),
            Node::Bin(op, a, b) => {
                let l = self.go(a, vs, ss);
                match op {
                    BinOp::And => l && self.go(b, vs, ss),
                    BinOp::Or => l || self.go(b, vs, ss),
                    BinOp::Implies => !l || self.go(b, vs, ss),
                    BinOp::Iff => l == self.go(b, vs, ss),
                }
            }
            Node::Vertex(exists, slot, body) => {
                for v in 0..self.n {
                    vs[*slot] = v;
                    if self.go(body, vs, ss) == *exists {
                        return *exists;
                    }
                }
                !*exists
            }
            Node::Set(exists, slot, body) => {
                for mask in 0..1u64 << self.n {
                    ss[*slot] = mask;
                    if self.go(body, vs, ss) == *exists {
                        return *exists;
                    }
                }
                !*exists
            }
        }
    }
}

/// Truth value of the sentence `f` in `s`.
pub fn evaluate(s: &RelStructure, f: &Formula, caps: &Caps) -> Result<bool> {
    evaluate_with(s, f, &Assignment::default(), caps)
}

/// Truth value of `f` with its free variables taken from `a`.
pub fn evaluate_with(s: &RelStructure, f: &Formula, a: &Assignment, caps: &Caps) -> Result<bool> {
    let names_v: Vec<&str> = a.vertices.keys().map(String::as_str).collect();
    let names_s: Vec<&str> = a.sets.keys().map(String::as_str).collect();
    if let Some(&v) = a.vertices.values().find(|&&v| v >= s.n()) {
        return Err(Error::domain(format!(
            "assigned vertex {v} is not in the structure"
        )));
    }
    let mut masks = Vec::new();
    for set in a.sets.values() {
        if let Some(&v) = set.iter().find(|&&v| v >= s.n()) {
            return Err(Error::domain(format!(
                "assigned set contains {v}, not in the structure"
            )));
        }
        masks.push(set.iter().fold(0u64, |m, &v| m | 1 << v));
    }
    let c = Compiled::new(s, f, &names_v, &names_s, caps)?;
    let vals: Vec<usize> = a.vertices.values().copied().collect();
    Ok(c.eval(&vals, &masks))
}
