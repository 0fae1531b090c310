//! Simple interpretations `(ν, μ)` and transductions built from them.

use std::collections::{BTreeMap, BTreeSet};

use super::ast::{Formula, Quantifier};
use super::eval::{evaluate, Compiled};
use super::structure::{k_copy, RelStructure};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{canonical_form, Graph};

/// Domain formula `ν(x)` and edge formula `μ(x, y)`. Edges are taken
/// symmetrically: `u ~ v` iff `μ(u, v) ∨ μ(v, u)`, for distinct `u, v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    nu: Formula,
    mu: Formula,
}

impl Interpretation {
    pub fn new(nu: Formula, mu: Formula) -> Result<Self> {
        let check = |f: &Formula, allowed: &[&str], what: &str| -> Result<()> {
            match f
                .free_variables()
                .into_iter()
                .find(|v| !allowed.contains(&v.as_str()))
            {
                Some(v) => Err(Error::domain(format!(
                    "{what} has unexpected free variable `{v}`"
                ))),
                None => Ok(()),
            }
        };
        check(&nu, &["x"], "domain formula")?;
        check(&mu, &["x", "y"], "edge formula")?;
        Ok(Interpretation { nu, mu })
    }

    /// `ν = true`, `μ = edge(x, y)`.
    pub fn identity() -> Self {
        Interpretation {
            nu: Formula::True,
            mu: Formula::edge("x", "y"),
        }
    }

    pub fn nu(&self) -> &Formula {
        &self.nu
    }

    pub fn mu(&self) -> &Formula {
        &self.mu
    }
}

/// The interpreted graph and, for each of its vertices, the source vertex.
/// Labels of kept vertices are carried over.
pub fn apply_interpretation(
    i: &Interpretation,
    s: &RelStructure,
    caps: &Caps,
) -> Result<(Graph, Vec<usize>)> {
    let nu = Compiled::new(s, &i.nu, &["x"], &[], caps)?;
    let mu = Compiled::new(s, &i.mu, &["x", "y"], &[], caps)?;
    let domain: Vec<usize> = (0..s.n()).filter(|&v| nu.eval(&[v], &[])).collect();
    let mut g = Graph::new(domain.len());
    for (a, &u) in domain.iter().enumerate() {
        for (b, &v) in domain.iter().enumerate().skip(a + 1) {
            if mu.eval(&[u, v], &[]) || mu.eval(&[v, u], &[]) {
                g.add_edge(a, b)?;
            }
        }
        for l in s.graph().labels_of(u) {
            g.add_label(a, l)?;
        }
    }
    Ok((g, domain))
}

struct Fresh {
    used: BTreeSet<String>,
    next: usize,
}

impl Fresh {
    fn name(&mut self, set: bool) -> String {
        loop {
            let candidate = format!("{}{}", if set { 'Z' } else { 'z' }, self.next);
            self.next += 1;
            if self.used.insert(candidate.clone()) {
                return candidate;
            }
        }
    }

    /// `f` with its bound variables renamed apart and its free variables
    /// replaced by `map`.
    fn instance(&mut self, f: &Formula, map: &[(&str, &str)]) -> Formula {
        f.rename_bound(&mut |set| self.name(set)).substitute(map)
    }
}

/// `I(φ)`: a formula with `G ⊨ I(φ)` iff `I(G) ⊨ φ`.
///
/// Vertex quantifiers are relativized to `ν`, set quantifiers to subsets of
/// `ν`, `edge(a, b)` becomes `¬(a = b) ∧ (μ(a, b) ∨ μ(b, a))`, and auxiliary
/// relation atoms become `false` since the interpreted graph carries none.
pub fn rewrite_formula(i: &Interpretation, phi: &Formula) -> Formula {
    let mut used = phi.variable_names();
    used.extend(i.nu.variable_names());
    used.extend(i.mu.variable_names());
    let mut fresh = Fresh { used, next: 0 };
    rewrite(i, phi, &mut fresh)
}

fn rewrite(i: &Interpretation, f: &Formula, fresh: &mut Fresh) -> Formula {
    match f {
        Formula::Edge(a, b) => {
            let ab = fresh.instance(&i.mu, &[("x", a), ("y", b)]);
            let ba = fresh.instance(&i.mu, &[("x", b), ("y", a)]);
            Formula::and(
                Formula::not(Formula::eq(a.clone(), b.clone())),
                Formula::or(ab, ba),
            )
        }
        Formula::Rel(..) => Formula::False,
        Formula::Not(a) => Formula::not(rewrite(i, a, fresh)),
        Formula::Binary(op, a, b) => Formula::Binary(
            *op,
            Box::new(rewrite(i, a, fresh)),
            Box::new(rewrite(i, b, fresh)),
        ),
        Formula::Quant(q, v, body) => {
            let guard = if q.is_set() {
                let z = fresh.name(false);
                let inside = fresh.instance(&i.nu, &[("x", &z)]);
                Formula::quant(
                    Quantifier::Forall,
                    z.clone(),
                    Formula::implies(Formula::In(z, v.clone()), inside),
                )
            } else {
                fresh.instance(&i.nu, &[("x", v)])
            };
            let body = rewrite(i, body, fresh);
            let inner = match q {
                Quantifier::Exists | Quantifier::ExistsSet => Formula::and(guard, body),
                Quantifier::Forall | Quantifier::ForallSet => Formula::implies(guard, body),
            };
            Formula::quant(*q, v.clone(), inner)
        }
        _ => f.clone(),
    }
}

/// Guard `χ`, copy count `k` and interpretation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transduction {
    pub guard: Formula,
    pub copies: usize,
    pub interpretation: Interpretation,
}

/// Extra unary predicates: label name → vertices carrying it.
pub type Labeling = BTreeMap<String, BTreeSet<usize>>;

/// Expands `g` by `labeling`, takes `k` copies, checks the guard and applies
/// the interpretation. `None` when the guard fails.
pub fn apply_transduction(
    t: &Transduction,
    labeling: &Labeling,
    g: &Graph,
    caps: &Caps,
) -> Result<Option<Graph>> {
    let mut expanded = g.clone();
    for (name, vs) in labeling {
        for &v in vs {
            expanded.add_label(v, name)?;
        }
    }
    let s = k_copy(&expanded, t.copies)?;
    if !t.guard.is_sentence() {
        return Err(Error::domain("the guard must be a sentence"));
    }
    if !evaluate(&s, &t.guard, caps)? {
        return Ok(None);
    }
    let (out, _) = apply_interpretation(&t.interpretation, &s, caps)?;
    Ok(Some(out.without_labels()))
}

/// All assignments of the given predicates to subsets of `0..n`, in order.
pub fn labelings(predicates: &[String], n: usize) -> impl Iterator<Item = Labeling> + '_ {
    let bits = predicates.len() * n;
    (0..1u64 << bits).map(move |code| {
        predicates
            .iter()
            .enumerate()
            .map(|(p, name)| {
                let set = (0..n).filter(|&v| code >> (p * n + v) & 1 == 1).collect();
                (name.clone(), set)
            })
            .collect()
    })
}

/// Every output of the transduction over all labelings by `predicates`, one
/// canonical graph per isomorphism class, sorted.
pub fn transduction_outputs(
    t: &Transduction,
    predicates: &[String],
    g: &Graph,
    caps: &Caps,
) -> Result<Vec<Graph>> {
    if predicates.len() > caps.labeling_predicates || g.n() > caps.labeling_vertices {
        return Err(Error::resource(format!(
            "labeling enumeration is capped at {} predicates and {} vertices",
            caps.labeling_predicates, caps.labeling_vertices
        )));
    }
    let mut out = BTreeSet::new();
    for labeling in labelings(predicates, g.n()) {
        if let Some(h) = apply_transduction(t, &labeling, g, caps)? {
            out.insert(canonical_form(&h).graph);
        }
    }
    Ok(out.into_iter().collect())
}
