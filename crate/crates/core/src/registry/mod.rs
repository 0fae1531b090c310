//! Named strategies for the generate, convert and solve families.
//!
//! Each family is a trait; [`Registry::standard`] holds the built-in
//! implementations, and further ones can be registered under new names.

mod artifact;
mod builtin;

use std::collections::BTreeMap;

use serde_json::Value;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::SolverOptions;

pub use artifact::{graph_json, Artifact, ArtifactKind, LIST_SEPARATOR};

/// An integer parameter a strategy accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub help: &'static str,
    pub required: bool,
}

const fn required(name: &'static str, help: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        help,
        required: true,
    }
}

const fn optional(name: &'static str, help: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        help,
        required: false,
    }
}

/// Integer parameters by name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params(BTreeMap<String, usize>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn with(mut self, name: &str, value: usize) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn insert(&mut self, name: &str, value: usize) {
        self.0.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Result<usize> {
        self.opt(name)
            .ok_or_else(|| Error::domain(format!("missing parameter `{name}`")))
    }

    pub fn opt(&self, name: &str) -> Option<usize> {
        self.0.get(name).copied()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    /// Rejects unknown names and missing required ones.
    pub fn check(&self, specs: &[ParamSpec], owner: &str) -> Result<()> {
        if let Some(extra) = self.names().find(|n| specs.iter().all(|s| s.name != *n)) {
            return Err(Error::domain(format!(
                "`{owner}` takes no parameter `{extra}`"
            )));
        }
        if let Some(missing) = specs
            .iter()
            .find(|s| s.required && self.opt(s.name).is_none())
        {
            return Err(Error::domain(format!(
                "`{owner}` needs parameter `{}` ({})",
                missing.name, missing.help
            )));
        }
        Ok(())
    }
}

/// An input position of a converter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InputSlot {
    pub name: &'static str,
    pub kind: ArtifactKind,
    pub required: bool,
}

/// Result of a solver: a one-line verdict, facts and an optional witness.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// `Some(false)` for NO answers; `None` when the solver only reports a value.
    pub verdict: Option<bool>,
    pub line: String,
    pub facts: BTreeMap<String, Value>,
    pub witness: Option<Artifact>,
}

impl Outcome {
    pub fn yes(witness: Option<Artifact>) -> Self {
        Outcome {
            verdict: Some(true),
            line: "YES".into(),
            facts: BTreeMap::new(),
            witness,
        }
    }

    pub fn no(reason: impl Into<String>) -> Self {
        let reason = reason.into();
        Outcome {
            verdict: Some(false),
            line: if reason.is_empty() {
                "NO".into()
            } else {
                format!("NO ({reason})")
            },
            facts: BTreeMap::new(),
            witness: None,
        }
    }

    pub fn value(line: impl Into<String>, witness: Option<Artifact>) -> Self {
        Outcome {
            verdict: None,
            line: line.into(),
            facts: BTreeMap::new(),
            witness,
        }
    }

    pub fn fact(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.facts.insert(key.to_string(), value.into());
        self
    }
}

pub trait Generator: Send + Sync {
    fn name(&self) -> &str;
    fn description(&self) -> &str;
    fn params(&self) -> &[ParamSpec];
    fn generate(&self, params: &Params, caps: &Caps) -> Result<Artifact>;
}

pub trait Converter: Send + Sync {
    fn name(&self) -> &str;
    fn description(&self) -> &str;
    fn inputs(&self) -> &[InputSlot];
    fn output(&self) -> ArtifactKind;
    /// `inputs[i]` fills slot `i`; optional slots may be `None`.
    fn convert(&self, inputs: Vec<Option<Artifact>>, caps: &Caps) -> Result<Artifact>;
}

pub trait Solver: Send + Sync {
    fn name(&self) -> &str;
    fn description(&self) -> &str;
    fn params(&self) -> &[ParamSpec];
    fn needs_graph(&self) -> bool {
        true
    }
    fn solve(
        &self,
        graph: Option<&Graph>,
        params: &Params,
        opts: &SolverOptions,
    ) -> Result<Outcome>;
}

/// Strategies of all three families, looked up by name.
#[derive(Default)]
pub struct Registry {
    generators: Vec<Box<dyn Generator>>,
    converters: Vec<Box<dyn Converter>>,
    solvers: Vec<Box<dyn Solver>>,
}

fn put<T: ?Sized>(list: &mut Vec<Box<T>>, item: Box<T>, name: impl Fn(&T) -> &str) {
    match list.iter().position(|x| name(x) == name(&item)) {
        Some(i) => list[i] = item,
        None => list.push(item),
    }
}

fn find<'a, T: ?Sized>(
    list: &'a [Box<T>],
    wanted: &str,
    family: &str,
    name: impl Fn(&T) -> &str,
) -> Result<&'a T> {
    list.iter()
        .map(Box::as_ref)
        .find(|x| name(x) == wanted)
        .ok_or_else(|| {
            let known: Vec<&str> = list.iter().map(|x| name(x)).collect();
            Error::domain(format!(
                "unknown {family} `{wanted}`; known: {}",
                known.join(", ")
            ))
        })
}

impl Registry {
    pub fn empty() -> Self {
        Registry::default()
    }

    /// Every built-in strategy.
    pub fn standard() -> Self {
        let mut r = Registry::empty();
        builtin::register_all(&mut r);
        r
    }

    /// Adds a generator, replacing one of the same name.
    pub fn register_generator(&mut self, g: Box<dyn Generator>) {
        put(&mut self.generators, g, |x| x.name());
    }

    pub fn register_converter(&mut self, c: Box<dyn Converter>) {
        put(&mut self.converters, c, |x| x.name());
    }

    pub fn register_solver(&mut self, s: Box<dyn Solver>) {
        put(&mut self.solvers, s, |x| x.name());
    }

    pub fn generator(&self, name: &str) -> Result<&dyn Generator> {
        find(&self.generators, name, "generator", |x| x.name())
    }

    pub fn converter(&self, name: &str) -> Result<&dyn Converter> {
        find(&self.converters, name, "converter", |x| x.name())
    }

    pub fn solver(&self, name: &str) -> Result<&dyn Solver> {
        find(&self.solvers, name, "solver", |x| x.name())
    }

    pub fn generators(&self) -> impl Iterator<Item = &dyn Generator> {
        self.generators.iter().map(Box::as_ref)
    }

    pub fn converters(&self) -> impl Iterator<Item = &dyn Converter> {
        self.converters.iter().map(Box::as_ref)
    }

    pub fn solvers(&self) -> impl Iterator<Item = &dyn Solver> {
        self.solvers.iter().map(Box::as_ref)
    }

    /// Checks parameters, then generates.
    pub fn generate(&self, name: &str, params: &Params, caps: &Caps) -> Result<Artifact> {
        let g = self.generator(name)?;
        params.check(g.params(), name)?;
        g.generate(params, caps)
    }

    /// Checks input kinds and presence, then converts.
    pub fn convert(
        &self,
        name: &str,
        inputs: Vec<Option<Artifact>>,
        caps: &Caps,
    ) -> Result<Artifact> {
        let c = self.converter(name)?;
        let slots = c.inputs();
        if inputs.len() > slots.len() {
            return Err(Error::domain(format!(
                "`{name}` takes {} inputs",
                slots.len()
            )));
        }
        for (i, slot) in slots.iter().enumerate() {
            match inputs.get(i).and_then(Option::as_ref) {
                None if slot.required => {
                    return Err(Error::domain(format!(
                        "`{name}` needs a {} as `{}`",
                        slot.kind.name(),
                        slot.name
                    )));
                }
                Some(a) if a.kind() != slot.kind => {
                    return Err(Error::domain(format!(
                        "`{name}` expects a {} as `{}`, got a {}",
                        slot.kind.name(),
                        slot.name,
                        a.kind().name()
                    )));
                }
                _ => {}
            }
        }
        let mut inputs = inputs;
        inputs.resize(slots.len(), None);
        c.convert(inputs, caps)
    }

    /// Checks parameters and graph presence, then solves.
    pub fn solve(
        &self,
        name: &str,
        graph: Option<&Graph>,
        params: &Params,
        opts: &SolverOptions,
    ) -> Result<Outcome> {
        let s = self.solver(name)?;
        params.check(s.params(), name)?;
        match (s.needs_graph(), graph) {
            (true, None) => return Err(Error::domain(format!("`{name}` needs an input graph"))),
            (false, Some(_)) => {
                return Err(Error::domain(format!("`{name}` takes no input graph")))
            }
            _ => {}
        }
        s.solve(graph, params, opts)
    }
}

#[cfg(test)]
mod tests;
