use std::path::{Path, PathBuf};

use serde_json::json;
use shrubkit::depth::validate_td;
use shrubkit::graph::{are_isomorphic, read_graph, Graph};
use shrubkit::mso::{
    apply_interpretation, apply_transduction, evaluate, parse_formula, parse_sentence,
    rewrite_formula, transduction_outputs, Formula, Interpretation, Labeling, RelStructure,
    Transduction,
};
use shrubkit::registry::{Artifact, ArtifactKind, Params, Registry};
use shrubkit::sc_model::{evaluate_sc, read_sc_tree};
use shrubkit::solver::SolverOptions;
use shrubkit::tree_model::{
    read_colored_tree, read_tree_model, reduce_tree, verify_k_copied, write_colored_tree, TreeModel,
};
use shrubkit::{depth::read_forest, Caps};

use crate::report::{read_file, CliError, CliResult, Payload, Report};
use crate::{
    ConvertArgs, GenerateArgs, MsoCommand, ReduceArgs, SolveArgs, VerifyArgs, VerifyKind, VerifyTm,
};

pub struct Context {
    registry: Registry,
    caps: Caps,
    opts: SolverOptions,
}

impl Context {
    pub fn new(jobs: usize) -> CliResult<Self> {
        if jobs == 0 {
            return Err(CliError("--jobs must be at least 1".into()));
        }
        let caps = Caps::from_env()?;
        Ok(Context {
            registry: Registry::standard(),
            caps,
            opts: SolverOptions { caps, jobs },
        })
    }
}

fn params(pairs: &[(&str, Option<usize>)]) -> Params {
    let mut p = Params::new();
    for (name, value) in pairs {
        if let Some(v) = value {
            p.insert(name, *v);
        }
    }
    p
}

fn load(kind: ArtifactKind, path: &Path) -> CliResult<Artifact> {
    Artifact::read(kind, &read_file(path)?)
        .map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> CliResult<Graph> {
    read_graph(&read_file(path)?).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> CliResult<TreeModel> {
    read_tree_model(&read_file(path)?).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn load_formula(path: &Path, sentence: bool) -> CliResult<Formula> {
    let text = read_file(path)?;
    let f = if sentence {
        parse_sentence(&text)
    } else {
        parse_formula(&text)
    };
    f.map_err(|e| CliError(format!("{}: {e}", path.display())))
}

pub fn generate(ctx: &Context, a: GenerateArgs) -> CliResult<Report> {
    let p = params(&[
        ("len", a.len),
        ("n", a.n),
        ("a", a.a),
        ("b", a.b),
        ("m", a.m),
    ]);
    let out = ctx.registry.generate(&a.name, &p, &ctx.caps)?;
    Ok(Report::payload(Payload::Artifact(out), a.output))
}

pub fn convert(ctx: &Context, a: ConvertArgs) -> CliResult<Report> {
    let conv = ctx.registry.converter(&a.name)?;
    let slots = conv.inputs();
    if a.forest.is_some() && !slots.iter().any(|s| s.name == "forest") {
        return Err(CliError(format!("`{}` takes no --forest", a.name)));
    }
    let mut inputs = Vec::new();
    for slot in slots {
        let path = match slot.name {
            "in" => Some(&a.input),
            "forest" => a.forest.as_ref(),
            other => return Err(CliError(format!("no flag for input `{other}`"))),
        };
        inputs.push(path.map(|p| load(slot.kind, p)).transpose()?);
    }
    let out = ctx.registry.convert(&a.name, inputs, &ctx.caps)?;
    Ok(Report::payload(Payload::Artifact(out), a.output))
}

pub fn solve(ctx: &Context, a: SolveArgs) -> CliResult<Report> {
    let p = params(&[
        ("d", a.d),
        ("m", a.m),
        ("k", a.k),
        ("max-n", a.max_n),
        ("at-most", a.at_most),
    ]);
    let graph = a.graph.as_deref().map(load_graph).transpose()?;
    let outcome = ctx.registry.solve(&a.name, graph.as_ref(), &p, &ctx.opts)?;
    Ok(Report::from_outcome(outcome, a.output))
}

fn equality_report(built: &Graph, g: &Graph, what: &str) -> Report {
    if built == &g.without_labels() {
        Report::verdict(true, "YES")
    } else if are_isomorphic(built, &g.without_labels()) {
        Report::verdict(
            false,
            format!("NO ({what} is isomorphic to the graph but vertex ids differ)"),
        )
    } else {
        Report::verdict(false, format!("NO ({what} differs from the graph)"))
    }
}

fn verify_tm(a: VerifyTm) -> CliResult<Report> {
    let (Some(model), Some(graph)) = (a.model, a.graph) else {
        return Err(CliError("verify tm needs --model and --graph".into()));
    };
    let model = load_model(&model)?;
    let g = load_graph(&graph)?;
    let mut r = equality_report(&model.realize(), &g, "the realization");
    if r.verdict == Some(true) {
        if let Some(d) = a.d.filter(|&d| model.depth() > d) {
            r = Report::verdict(false, format!("NO (depth {} exceeds {d})", model.depth()));
        } else if let Some(m) = a.m.filter(|&m| model.used_colors() > m) {
            r = Report::verdict(
                false,
                format!("NO ({} colours exceed {m})", model.used_colors()),
            );
        }
    }
    Ok(r.fact("depth", model.depth())
        .fact("colors", model.used_colors()))
}

pub fn verify(a: VerifyArgs) -> CliResult<Report> {
    match a.kind {
        None => verify_tm(a.tm),
        Some(VerifyKind::Tm(tm)) => verify_tm(tm),
        Some(VerifyKind::Sc { tree, graph, k }) => {
            let t = read_sc_tree(&read_file(&tree)?)
                .map_err(|e| CliError(format!("{}: {e}", tree.display())))?;
            let g = load_graph(&graph)?;
            let mut r = equality_report(&evaluate_sc(&t), &g, "the SC-tree's graph");
            if let Some(k) = k.filter(|&k| r.verdict == Some(true) && t.height() > k) {
                r = Report::verdict(false, format!("NO (height {} exceeds {k})", t.height()));
            }
            Ok(r.fact("height", t.height()))
        }
        Some(VerifyKind::Td { forest, graph, k }) => {
            let f = read_forest(&read_file(&forest)?)
                .map_err(|e| CliError(format!("{}: {e}", forest.display())))?;
            let g = load_graph(&graph)?;
            // levels = vertices on a longest root-to-leaf path
            let levels = if f.is_empty() { 0 } else { f.height() + 1 };
            let r = if !validate_td(&g, &f)? {
                Report::verdict(false, "NO (some edge joins two unrelated vertices)")
            } else if let Some(k) = k.filter(|&k| levels > k) {
                Report::verdict(false, format!("NO ({levels} levels exceed {k})"))
            } else {
                Report::verdict(true, "YES")
            };
            Ok(r.fact("levels", levels))
        }
        Some(VerifyKind::Kcopied {
            model,
            d,
            m,
            k,
            graph,
        }) => {
            let model = load_model(&model)?;
            let r = if !verify_k_copied(&model, d, m, k) {
                Report::verdict(
                    false,
                    format!("NO (not a {k}-copied tree-model with d = {d}, m = {m})"),
                )
            } else if let Some(path) = graph {
                equality_report(&model.realize(), &load_graph(&path)?, "the realization")
            } else {
                Report::verdict(true, "YES")
            };
            Ok(r)
        }
    }
}

fn interpretation(nu: &Path, mu: &Path) -> CliResult<Interpretation> {
    Ok(Interpretation::new(
        load_formula(nu, false)?,
        load_formula(mu, false)?,
    )?)
}

pub fn mso(ctx: &Context, c: MsoCommand) -> CliResult<Report> {
    match c {
        MsoCommand::Parse { formula } => {
            let f = load_formula(&formula, false)?;
            let free: Vec<String> = f.free_variables().into_iter().collect();
            let line = if free.is_empty() {
                "SENTENCE".to_string()
            } else {
                format!("FORMULA (free: {})", free.join(", "))
            };
            Ok(Report::headline(line)
                .fact("quantifiers", f.quantifier_count())
                .fact("set_quantifier_depth", f.set_quantifier_depth())
                .fact("modulus_lcm", f.modulus_lcm())
                .with_payload(Payload::Text(format!("{f}\n")), None))
        }
        MsoCommand::Check { graph, formula } => {
            let g = load_graph(&graph)?;
            let f = load_formula(&formula, true)?;
            let holds = evaluate(&RelStructure::from(g), &f, &ctx.caps)?;
            Ok(Report::verdict(holds, if holds { "TRUE" } else { "FALSE" }))
        }
        MsoCommand::Interpret {
            nu,
            mu,
            graph,
            formula,
            output,
        } => {
            let i = interpretation(&nu, &mu)?;
            if let Some(path) = formula {
                let phi = load_formula(&path, false)?;
                let rewritten = rewrite_formula(&i, &phi);
                return Ok(Report::payload(
                    Payload::Text(format!("{rewritten}\n")),
                    output,
                ));
            }
            let g = load_graph(
                graph
                    .as_deref()
                    .expect("clap requires --graph or --formula"),
            )?;
            let (h, map) = apply_interpretation(&i, &RelStructure::from(g), &ctx.caps)?;
            Ok(
                Report::payload(Payload::Artifact(Artifact::Graph(h)), output)
                    .fact("source", json!(map)),
            )
        }
        MsoCommand::Transduce {
            graph,
            copies,
            guard,
            nu,
            mu,
            predicates,
            output,
        } => {
            let g = load_graph(&graph)?;
            let t = Transduction {
                guard: match guard {
                    Some(p) => load_formula(&p, true)?,
                    None => Formula::True,
                },
                copies,
                interpretation: interpretation(&nu, &mu)?,
            };
            if predicates.is_empty() {
                return Ok(
                    match apply_transduction(&t, &Labeling::new(), &g, &ctx.caps)? {
                        Some(h) => Report::verdict(true, "DEFINED")
                            .with_payload(Payload::Artifact(Artifact::Graph(h)), output),
                        None => Report::verdict(false, "UNDEFINED (the guard fails)"),
                    },
                );
            }
            let outs = transduction_outputs(&t, &predicates, &g.without_labels(), &ctx.caps)?;
            let line = format!("OUTPUTS {} (up to isomorphism)", outs.len());
            Ok(Report::headline(line)
                .with_payload(Payload::Artifact(Artifact::GraphList(outs)), output))
        }
    }
}

pub fn reduce(a: ReduceArgs) -> CliResult<Report> {
    let text = read_file(&a.tree)?;
    let t = read_colored_tree(&text).map_err(|e| CliError(format!("{}: {e}", a.tree.display())))?;
    if a.thresholds.windows(2).any(|w| w[0] > w[1]) {
        return Err(CliError("thresholds must be non-decreasing".into()));
    }
    let th = a.thresholds.clone();
    let r = reduce_tree(&t, &|i| th[(i.max(1) - 1).min(th.len() - 1)], a.modulus)?;
    let out: Option<PathBuf> = a.output;
    Ok(
        Report::payload(Payload::Text(write_colored_tree(&r.tree)), out)
            .fact("nodes_before", t.tree.node_count())
            .fact("nodes_after", r.tree.tree.node_count())
            .fact("cuts", r.cuts.len()),
    )
}

pub fn list(ctx: &Context) -> Report {
    let mut text = String::new();
    let mut section = |title: &str, rows: Vec<(String, String)>| {
        text.push_str(title);
        text.push('\n');
        for (name, desc) in rows {
            text.push_str(&format!("  {name:<22} {desc}\n"));
        }
    };
    let r = &ctx.registry;
    section(
        "generators",
        r.generators()
            .map(|g| (g.name().to_string(), g.description().to_string()))
            .collect(),
    );
    section(
        "converters",
        r.converters()
            .map(|c| (c.name().to_string(), c.description().to_string()))
            .collect(),
    );
    section(
        "solvers",
        r.solvers()
            .map(|s| (s.name().to_string(), s.description().to_string()))
            .collect(),
    );
    Report::payload(Payload::Text(text), None)
}
