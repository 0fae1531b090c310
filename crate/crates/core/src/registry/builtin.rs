use super::{
    optional, required, Artifact, ArtifactKind, Converter, Generator, InputSlot, Outcome,
    ParamSpec, Params, Registry, Solver,
};
use crate::caps::Caps;
use crate::constructions::{
    biclique_model, clique_model, make_biclique, make_clique, make_path, path_model_with_caps,
    perfect_matching, perfect_matching_model, subdivided_matching_biclique_model,
};
use crate::depth::{td_to_tm, tree_depth};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lincw::{eval_lincw, tm_to_lincw};
use crate::sc_model::{evaluate_sc, sc_to_tm, tm_to_sc};
use crate::solver::{
    minimal_obstructions, sc_depth, sc_membership, tm_membership, tmc_membership, SolverOptions,
};

struct FnGenerator {
    name: &'static str,
    description: &'static str,
    params: &'static [ParamSpec],
    run: fn(&Params, &Caps) -> Result<Artifact>,
}

impl Generator for FnGenerator {
    fn name(&self) -> &str {
        self.name
    }
    fn description(&self) -> &str {
        self.description
    }
    fn params(&self) -> &[ParamSpec] {
        self.params
    }
    fn generate(&self, params: &Params, caps: &Caps) -> Result<Artifact> {
        (self.run)(params, caps)
    }
}

struct FnConverter {
    name: &'static str,
    description: &'static str,
    inputs: &'static [InputSlot],
    output: ArtifactKind,
    run: fn(Vec<Option<Artifact>>, &Caps) -> Result<Artifact>,
}

impl Converter for FnConverter {
    fn name(&self) -> &str {
        self.name
    }
    fn description(&self) -> &str {
        self.description
    }
    fn inputs(&self) -> &[InputSlot] {
        self.inputs
    }
    fn output(&self) -> ArtifactKind {
        self.output
    }
    fn convert(&self, inputs: Vec<Option<Artifact>>, caps: &Caps) -> Result<Artifact> {
        (self.run)(inputs, caps)
    }
}

struct FnSolver {
    name: &'static str,
    description: &'static str,
    params: &'static [ParamSpec],
    needs_graph: bool,
    run: fn(Option<&Graph>, &Params, &SolverOptions) -> Result<Outcome>,
}

impl Solver for FnSolver {
    fn name(&self) -> &str {
        self.name
    }
    fn description(&self) -> &str {
        self.description
    }
    fn params(&self) -> &[ParamSpec] {
        self.params
    }
    fn needs_graph(&self) -> bool {
        self.needs_graph
    }
    fn solve(
        &self,
        graph: Option<&Graph>,
        params: &Params,
        opts: &SolverOptions,
    ) -> Result<Outcome> {
        (self.run)(graph, params, opts)
    }
}

const N: ParamSpec = required("n", "vertex count");
const A: ParamSpec = required("a", "size of the first side");
const B: ParamSpec = required("b", "size of the second side");
const D: ParamSpec = required("d", "depth");
const M: ParamSpec = required("m", "number of colours");

fn generators() -> Vec<FnGenerator> {
    vec![
        FnGenerator {
            name: "path",
            description: "path with the given number of edges",
            params: const { &[required("len", "number of edges")] },
            run: |p, _| Ok(Artifact::Graph(make_path(p.get("len")?))),
        },
        FnGenerator {
            name: "clique",
            description: "complete graph",
            params: &[N],
            run: |p, _| Ok(Artifact::Graph(make_clique(p.get("n")?))),
        },
        FnGenerator {
            name: "biclique",
            description: "complete bipartite graph",
            params: &[A, B],
            run: |p, _| Ok(Artifact::Graph(make_biclique(p.get("a")?, p.get("b")?))),
        },
        FnGenerator {
            name: "matching",
            description: "perfect matching on 2n vertices",
            params: &[N],
            run: |p, _| Ok(Artifact::Graph(perfect_matching(p.get("n")?))),
        },
        FnGenerator {
            name: "subdivided-k33",
            description: "K3,3 minus a perfect matching, matching edges subdivided",
            params: &[],
            run: |_, _| Ok(Artifact::Graph(subdivided_matching_biclique_model().0)),
        },
        FnGenerator {
            name: "subdivided-k33-model",
            description: "depth-2, 3-colour tree-model of subdivided-k33",
            params: &[],
            run: |_, _| Ok(Artifact::TreeModel(subdivided_matching_biclique_model().1)),
        },
        FnGenerator {
            name: "path-model",
            description: "m-colour tree-model of depth 2m+1 of the path with 3·2^m−4 edges",
            params: &[M],
            run: |p, caps| {
                Ok(Artifact::TreeModel(path_model_with_caps(
                    p.get("m")?,
                    caps,
                )?))
            },
        },
        FnGenerator {
            name: "clique-model",
            description: "depth-1, 1-colour tree-model of the complete graph",
            params: &[N],
            run: |p, _| Ok(Artifact::TreeModel(clique_model(p.get("n")?))),
        },
        FnGenerator {
            name: "biclique-model",
            description: "depth-1, 2-colour tree-model of the complete bipartite graph",
            params: &[A, B],
            run: |p, _| {
                Ok(Artifact::TreeModel(biclique_model(
                    p.get("a")?,
                    p.get("b")?,
                )))
            },
        },
        FnGenerator {
            name: "matching-model",
            description: "2-copied depth-2 tree-model of the perfect matching on 2n vertices",
            params: &[N],
            run: |p, _| Ok(Artifact::TreeModel(perfect_matching_model(p.get("n")?))),
        },
    ]
}

const fn slot(name: &'static str, kind: ArtifactKind) -> InputSlot {
    InputSlot {
        name,
        kind,
        required: true,
    }
}

fn take(inputs: &mut [Option<Artifact>], i: usize) -> Result<Artifact> {
    inputs
        .get_mut(i)
        .and_then(Option::take)
        .ok_or_else(|| Error::domain(format!("missing input {i}")))
}

fn converters() -> Vec<FnConverter> {
    vec![
        FnConverter {
            name: "tm-to-sc",
            description: "SC-tree of height at most d·m(m+1) building the model's graph",
            inputs: const { &[slot("in", ArtifactKind::TreeModel)] },
            output: ArtifactKind::ScTree,
            run: |mut i, _| {
                Ok(Artifact::ScTree(tm_to_sc(
                    &take(&mut i, 0)?.into_tree_model()?,
                )?))
            },
        },
        FnConverter {
            name: "sc-to-tm",
            description: "tree-model of depth equal to the height, at most 2^height colours",
            inputs: const { &[slot("in", ArtifactKind::ScTree)] },
            output: ArtifactKind::TreeModel,
            run: |mut i, _| {
                Ok(Artifact::TreeModel(sc_to_tm(
                    &take(&mut i, 0)?.into_sc_tree()?,
                )))
            },
        },
        FnConverter {
            name: "tm-to-lincw",
            description: "linear clique-width expression with at most m(d+1) labels",
            inputs: const { &[slot("in", ArtifactKind::TreeModel)] },
            output: ArtifactKind::LinCw,
            run: |mut i, _| {
                Ok(Artifact::LinCw(tm_to_lincw(
                    &take(&mut i, 0)?.into_tree_model()?,
                )))
            },
        },
        FnConverter {
            name: "td-to-tm",
            description: "tree-model from an elimination forest (an optimal one if none is given)",
            inputs: const {
                &[
                    slot("in", ArtifactKind::Graph),
                    InputSlot {
                        name: "forest",
                        kind: ArtifactKind::Forest,
                        required: false,
                    },
                ]
            },
            output: ArtifactKind::TreeModel,
            run: |mut i, caps| {
                let g = take(&mut i, 0)?.into_graph()?;
                let f = match take(&mut i, 1) {
                    Ok(f) => f.into_forest()?,
                    Err(_) => tree_depth(&g, caps)?.1,
                };
                Ok(Artifact::TreeModel(td_to_tm(&g, &f)?))
            },
        },
        FnConverter {
            name: "sc-eval",
            description: "graph built by an SC-tree",
            inputs: const { &[slot("in", ArtifactKind::ScTree)] },
            output: ArtifactKind::Graph,
            run: |mut i, _| {
                Ok(Artifact::Graph(evaluate_sc(
                    &take(&mut i, 0)?.into_sc_tree()?,
                )))
            },
        },
        FnConverter {
            name: "tm-eval",
            description: "graph realized by a tree-model",
            inputs: const { &[slot("in", ArtifactKind::TreeModel)] },
            output: ArtifactKind::Graph,
            run: |mut i, _| {
                Ok(Artifact::Graph(
                    take(&mut i, 0)?.into_tree_model()?.realize(),
                ))
            },
        },
        FnConverter {
            name: "lincw-eval",
            description: "labelled graph valued by a linear clique-width expression",
            inputs: const { &[slot("in", ArtifactKind::LinCw)] },
            output: ArtifactKind::Graph,
            run: |mut i, _| Ok(Artifact::Graph(eval_lincw(&take(&mut i, 0)?.into_lincw()?))),
        },
    ]
}

fn solve_tm(g: Option<&Graph>, p: &Params, opts: &SolverOptions) -> Result<Outcome> {
    let (d, m) = (p.get("d")?, p.get("m")?);
    let out = match tm_membership(g.unwrap(), d, m, opts)? {
        Some(model) => Outcome::yes(Some(Artifact::TreeModel(model))),
        // TM(d', m) ⊆ TM(d, m) for d' ≤ d, so one search covers all smaller depths
        None => Outcome::no(format!("verified for all depths ≤ {d}")),
    };
    Ok(out.fact("d", d).fact("m", m))
}

fn solve_tmc(g: Option<&Graph>, p: &Params, opts: &SolverOptions) -> Result<Outcome> {
    let (d, m, k) = (p.get("d")?, p.get("m")?, p.get("k")?);
    let out = match tmc_membership(g.unwrap(), d, m, k, opts)? {
        Some(model) => Outcome::yes(Some(Artifact::TreeModel(model))),
        None => Outcome::no(format!("verified for all depths ≤ {d}")),
    };
    Ok(out.fact("d", d).fact("m", m).fact("k", k))
}

fn solve_sc(g: Option<&Graph>, p: &Params, opts: &SolverOptions) -> Result<Outcome> {
    let g = g.unwrap();
    match p.opt("k") {
        Some(k) => Ok(match sc_membership(g, k, opts)? {
            Some(t) => Outcome::yes(Some(Artifact::ScTree(t))),
            None => Outcome::no(format!("SC-depth exceeds {k}")),
        }
        .fact("k", k)),
        None => {
            let (k, t) = sc_depth(g, opts)?;
            Ok(
                Outcome::value(format!("SC-DEPTH {k}"), Some(Artifact::ScTree(t)))
                    .fact("sc_depth", k),
            )
        }
    }
}

fn bounded(value: usize, bound: Option<usize>, what: &str) -> Outcome {
    match bound {
        None => Outcome::value(format!("{} {value}", what.to_uppercase()), None),
        Some(b) if value <= b => Outcome::yes(None),
        Some(b) => Outcome::no(format!("{what} is {value} > {b}")),
    }
}

fn solve_td(g: Option<&Graph>, p: &Params, opts: &SolverOptions) -> Result<Outcome> {
    let (td, forest) = tree_depth(g.unwrap(), &opts.caps)?;
    let mut out = bounded(td, p.opt("at-most"), "td");
    out.witness = Some(Artifact::Forest(forest));
    Ok(out.fact("td", td))
}

fn solve_nd(g: Option<&Graph>, p: &Params, _: &SolverOptions) -> Result<Outcome> {
    let g = g.unwrap();
    let classes = g.twin_partition();
    let nd = classes.len();
    Ok(bounded(nd, p.opt("at-most"), "nd")
        .fact("nd", nd)
        .fact("classes", classes))
}

fn solve_obstructions(_: Option<&Graph>, p: &Params, opts: &SolverOptions) -> Result<Outcome> {
    let (d, m, max_n) = (p.get("d")?, p.get("m")?, p.get("max-n")?);
    let found = minimal_obstructions(d, m, max_n, opts)?;
    let sizes: Vec<usize> = found.iter().map(Graph::n).collect();
    Ok(Outcome::value(
        format!(
            "OBSTRUCTIONS {} (graphs with at most {max_n} vertices)",
            found.len()
        ),
        Some(Artifact::GraphList(found)),
    )
    .fact("d", d)
    .fact("m", m)
    .fact("max_n", max_n)
    .fact("sizes", sizes))
}

fn solvers() -> Vec<FnSolver> {
    vec![
        FnSolver {
            name: "tm",
            description: "exact test for a tree-model of depth d with m colours",
            params: &[D, M],
            needs_graph: true,
            run: solve_tm,
        },
        FnSolver {
            name: "tmc",
            description: "exact test for a k-copied tree-model (depth d+1, m colours)",
            params: const { &[D, M, required("k", "leaves per depth-d node")] },
            needs_graph: true,
            run: solve_tmc,
        },
        FnSolver {
            name: "sc",
            description: "SC-depth, or a test for SC-depth at most k",
            params: const { &[optional("k", "SC-depth bound")] },
            needs_graph: true,
            run: solve_sc,
        },
        FnSolver {
            name: "td",
            description: "exact tree-depth with an optimal elimination forest",
            params: const { &[optional("at-most", "tree-depth bound")] },
            needs_graph: true,
            run: solve_td,
        },
        FnSolver {
            name: "nd",
            description: "neighbourhood diversity and twin classes",
            params: const { &[optional("at-most", "diversity bound")] },
            needs_graph: true,
            run: solve_nd,
        },
        FnSolver {
            name: "obstructions",
            description: "minimal graphs outside TM(d,m) up to max-n vertices",
            params: const { &[D, M, required("max-n", "largest vertex count")] },
            needs_graph: false,
            run: solve_obstructions,
        },
    ]
}

pub(super) fn register_all(r: &mut Registry) {
    for g in generators() {
        r.register_generator(Box::new(g));
    }
    for c in converters() {
        r.register_converter(Box::new(c));
    }
    for s in solvers() {
        r.register_solver(Box::new(s));
    }
}
