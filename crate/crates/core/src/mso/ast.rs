use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    And,
    Or,
    Implies,
    Iff,
}

impl BinOp {
    fn precedence(self) -> u8 {
        match self {
            BinOp::Iff => 1,
            BinOp::Implies => 2,
            BinOp::Or => 3,
            BinOp::And => 4,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Implies => "->",
            BinOp::Iff => "<->",
        }
    }

    fn right_assoc(self) -> bool {
        self == BinOp::Implies
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    /// `ex1`: some vertex.
    Exists,
    /// `all1`: every vertex.
    Forall,
    /// `ex2`: some vertex set.
    ExistsSet,
    /// `all2`: every vertex set.
    ForallSet,
}

impl Quantifier {
    pub fn is_set(self) -> bool {
        matches!(self, Quantifier::ExistsSet | Quantifier::ForallSet)
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Exists => "ex1",
            Quantifier::Forall => "all1",
            Quantifier::ExistsSet => "ex2",
            Quantifier::ForallSet => "all2",
        }
    }
}

/// CMSO1 formula. Vertex variables start with a lowercase letter, set
/// variables with an uppercase one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Edge(String, String),
    Eq(String, String),
    /// `x in X`.
    In(String, String),
    /// `|X| mod modulus = residue`.
    Mod {
        residue: usize,
        modulus: usize,
        set: String,
    },
    /// `label_NAME(x)`: unary predicate.
    Label(String, String),
    /// `rel_NAME(x,y)`: auxiliary binary relation.
    Rel(String, String, String),
    Not(Box<Formula>),
    Binary(BinOp, Box<Formula>, Box<Formula>),
    Quant(Quantifier, String, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::Binary(BinOp::And, Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Binary(BinOp::Or, Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Binary(BinOp::Implies, Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Binary(BinOp::Iff, Box::new(a), Box::new(b))
    }

    pub fn quant(q: Quantifier, var: impl Into<String>, body: Formula) -> Formula {
        Formula::Quant(q, var.into(), Box::new(body))
    }

    pub fn edge(x: impl Into<String>, y: impl Into<String>) -> Formula {
        Formula::Edge(x.into(), y.into())
    }

    pub fn eq(x: impl Into<String>, y: impl Into<String>) -> Formula {
        Formula::Eq(x.into(), y.into())
    }

    /// Free variables of both sorts.
    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        let mut note = |v: &String, bound: &Vec<&str>| {
            if !bound.contains(&v.as_str()) {
                out.insert(v.clone());
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Edge(a, b) | Formula::Eq(a, b) | Formula::In(a, b) | Formula::Rel(_, a, b) => {
                note(a, bound);
                note(b, bound);
            }
            Formula::Mod { set, .. } => note(set, bound),
            Formula::Label(_, x) => note(x, bound),
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::Binary(_, a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Quant(_, v, body) => {
                bound.push(v);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_variables().is_empty()
    }

    /// Every variable name occurring in the formula, bound or free.
    pub fn variable_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Edge(a, b) | Formula::Eq(a, b) | Formula::In(a, b) | Formula::Rel(_, a, b) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            Formula::Mod { set, .. } => {
                out.insert(set.clone());
            }
            Formula::Label(_, x) | Formula::Quant(_, x, _) => {
                out.insert(x.clone());
            }
            _ => {}
        });
        out
    }

    fn visit(&self, f: &mut dyn FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Not(a) | Formula::Quant(_, _, a) => a.visit(f),
            Formula::Binary(_, a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    /// Number of quantifiers of either sort.
    pub fn quantifier_count(&self) -> usize {
        let mut count = 0;
        self.visit(&mut |f| count += usize::from(matches!(f, Formula::Quant(..))));
        count
    }

    /// Deepest nesting of set quantifiers.
    pub fn set_quantifier_depth(&self) -> usize {
        match self {
            Formula::Not(a) => a.set_quantifier_depth(),
            Formula::Binary(_, a, b) => a.set_quantifier_depth().max(b.set_quantifier_depth()),
            Formula::Quant(q, _, body) => usize::from(q.is_set()) + body.set_quantifier_depth(),
            _ => 0,
        }
    }

    /// Least common multiple of all `mod` moduli; 1 without any.
    pub fn modulus_lcm(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let mut l = 1;
        self.visit(&mut |f| {
            if let Formula::Mod { modulus, .. } = f {
                l = l / gcd(l, *modulus) * modulus;
            }
        });
        l
    }

    /// Replaces free occurrences of variables by `map`. Bound variables of
    /// `self` must not clash with the replacement names.
    pub(crate) fn substitute(&self, map: &[(&str, &str)]) -> Formula {
        let r = |v: &String| -> String {
            map.iter()
                .find(|(from, _)| from == v)
                .map_or_else(|| v.clone(), |(_, to)| to.to_string())
        };
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Edge(a, b) => Formula::Edge(r(a), r(b)),
            Formula::Eq(a, b) => Formula::Eq(r(a), r(b)),
            Formula::In(a, b) => Formula::In(r(a), r(b)),
            Formula::Rel(n, a, b) => Formula::Rel(n.clone(), r(a), r(b)),
            Formula::Mod {
                residue,
                modulus,
                set,
            } => Formula::Mod {
                residue: *residue,
                modulus: *modulus,
                set: r(set),
            },
            Formula::Label(n, x) => Formula::Label(n.clone(), r(x)),
            Formula::Not(a) => Formula::not(a.substitute(map)),
            Formula::Binary(op, a, b) => Formula::Binary(
                *op,
                Box::new(a.substitute(map)),
                Box::new(b.substitute(map)),
            ),
            Formula::Quant(q, v, body) => {
                let inner: Vec<(&str, &str)> =
                    map.iter().copied().filter(|(from, _)| from != v).collect();
                Formula::Quant(*q, v.clone(), Box::new(body.substitute(&inner)))
            }
        }
    }

    /// Renames every bound variable using `fresh`, keeping free ones.
    pub(crate) fn rename_bound(&self, fresh: &mut dyn FnMut(bool) -> String) -> Formula {
        match self {
            Formula::Not(a) => Formula::not(a.rename_bound(fresh)),
            Formula::Binary(op, a, b) => Formula::Binary(
                *op,
                Box::new(a.rename_bound(fresh)),
                Box::new(b.rename_bound(fresh)),
            ),
            Formula::Quant(q, v, body) => {
                let new = fresh(q.is_set());
                let body = body.rename_bound(fresh).substitute(&[(v, &new)]);
                Formula::Quant(*q, new, Box::new(body))
            }
            _ => self.clone(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Binary(op, ..) => op.precedence(),
            Formula::Quant(..) => 0,
            _ => 5,
        }
    }

    /// Text and whether it ends in a quantifier whose scope is still open.
    fn render(&self) -> (String, bool) {
        match self {
            Formula::True => ("true".into(), false),
            Formula::False => ("false".into(), false),
            Formula::Edge(a, b) => (format!("edge({a},{b})"), false),
            Formula::Eq(a, b) => (format!("{a} = {b}"), false),
            Formula::In(a, b) => (format!("{a} in {b}"), false),
            Formula::Mod {
                residue,
                modulus,
                set,
            } => (format!("mod({residue},{modulus},{set})"), false),
            Formula::Label(n, x) => (format!("label_{n}({x})"), false),
            Formula::Rel(n, a, b) => (format!("rel_{n}({a},{b})"), false),
            Formula::Not(a) => {
                let (s, open) = a.render();
                if matches!(**a, Formula::Binary(..)) {
                    (format!("!({s})"), false)
                } else {
                    (format!("!{s}"), open)
                }
            }
            Formula::Quant(q, v, body) => {
                (format!("{} {v}. {}", q.keyword(), body.render().0), true)
            }
            Formula::Binary(op, a, b) => {
                let p = op.precedence();
                let (ls, lopen) = a.render();
                let lp = a.precedence();
                let wrap_left = lopen || lp < p || (op.right_assoc() && lp == p);
                let (rs, ropen) = b.render();
                let rp = b.precedence();
                let wrap_right = rp != 0 && (rp < p || (!op.right_assoc() && rp == p));
                let ls = if wrap_left { format!("({ls})") } else { ls };
                let (rs, open) = if wrap_right {
                    (format!("({rs})"), false)
                } else {
                    (rs, ropen)
                };
                (format!("{ls} {} {rs}", op.symbol()), open)
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render().0)
    }
}
