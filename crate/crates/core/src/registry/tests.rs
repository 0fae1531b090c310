use super::*;
use crate::constructions::{make_path, path_model};
use crate::graph::are_isomorphic;

#[test]
fn standard_names() {
    let r = Registry::standard();
    let gens: Vec<&str> = r.generators().map(|g| g.name()).collect();
    for name in [
        "path",
        "clique",
        "biclique",
        "subdivided-k33",
        "path-model",
        "clique-model",
        "biclique-model",
    ] {
        assert!(gens.contains(&name), "{name}");
    }
    let convs: Vec<&str> = r.converters().map(|c| c.name()).collect();
    assert_eq!(
        convs,
        [
            "tm-to-sc",
            "sc-to-tm",
            "tm-to-lincw",
            "td-to-tm",
            "sc-eval",
            "tm-eval",
            "lincw-eval"
        ]
    );
    let solvers: Vec<&str> = r.solvers().map(|s| s.name()).collect();
    assert_eq!(solvers, ["tm", "tmc", "sc", "td", "nd", "obstructions"]);
}

#[test]
fn unknown_names_and_bad_params() {
    let r = Registry::standard();
    let caps = Caps::default();
    assert!(matches!(r.generator("tree"), Err(Error::Domain(m)) if m.contains("path-model")));
    assert!(r.generate("path", &Params::new(), &caps).is_err());
    assert!(r
        .generate("path", &Params::new().with("len", 2).with("n", 1), &caps)
        .is_err());
    let g = make_path(2);
    let opts = SolverOptions::default();
    assert!(r
        .solve("tm", Some(&g), &Params::new().with("d", 1), &opts)
        .is_err());
    assert!(r
        .solve("tm", None, &Params::new().with("d", 1).with("m", 1), &opts)
        .is_err());
    let p = Params::new().with("d", 1).with("m", 1).with("max-n", 3);
    assert!(r.solve("obstructions", Some(&g), &p, &opts).is_err());
    assert!(r
        .convert("tm-eval", vec![Some(Artifact::Graph(g))], &caps)
        .is_err());
    assert!(r.convert("tm-eval", vec![], &caps).is_err());
}

#[test]
fn generate_convert_pipeline() {
    let r = Registry::standard();
    let caps = Caps::default();
    let model = r
        .generate("path-model", &Params::new().with("m", 2), &caps)
        .unwrap();
    assert_eq!(model, Artifact::TreeModel(path_model(2).unwrap()));
    let realized = r
        .convert("tm-eval", vec![Some(model.clone())], &caps)
        .unwrap();
    let sc = r
        .convert("tm-to-sc", vec![Some(model.clone())], &caps)
        .unwrap();
    assert_eq!(
        r.convert("sc-eval", vec![Some(sc)], &caps).unwrap(),
        realized
    );
    let e = r.convert("tm-to-lincw", vec![Some(model)], &caps).unwrap();
    let g = r
        .convert("lincw-eval", vec![Some(e)], &caps)
        .unwrap()
        .into_graph()
        .unwrap();
    assert!(are_isomorphic(
        &g.without_labels(),
        &realized.clone().into_graph().unwrap()
    ));
    let m = r
        .convert("td-to-tm", vec![Some(realized.clone())], &caps)
        .unwrap();
    assert_eq!(
        r.convert("tm-eval", vec![Some(m)], &caps).unwrap(),
        realized
    );
}

#[test]
fn solver_verdicts() {
    let r = Registry::standard();
    let opts = SolverOptions::default();
    let p3 = make_path(3);
    let out = r
        .solve(
            "tm",
            Some(&p3),
            &Params::new().with("d", 4).with("m", 1),
            &opts,
        )
        .unwrap();
    assert_eq!(out.verdict, Some(false));
    assert_eq!(out.line, "NO (verified for all depths ≤ 4)");
    let out = r
        .solve(
            "tm",
            Some(&p3),
            &Params::new().with("d", 2).with("m", 2),
            &opts,
        )
        .unwrap();
    assert_eq!(out.line, "YES");
    let model = out.witness.unwrap().into_tree_model().unwrap();
    assert!(model.verify(&p3));

    let out = r.solve("td", Some(&p3), &Params::new(), &opts).unwrap();
    assert_eq!((out.verdict, out.line.as_str()), (None, "TD 3"));
    let out = r
        .solve("td", Some(&p3), &Params::new().with("at-most", 2), &opts)
        .unwrap();
    assert_eq!(out.line, "NO (td is 3 > 2)");
    let out = r.solve("nd", Some(&p3), &Params::new(), &opts).unwrap();
    assert_eq!(out.line, "ND 4");
    let out = r
        .solve("sc", Some(&make_path(2)), &Params::new(), &opts)
        .unwrap();
    assert_eq!(out.line, "SC-DEPTH 2");
    let p = Params::new().with("d", 1).with("m", 1).with("max-n", 4);
    let out = r.solve("obstructions", None, &p, &opts).unwrap();
    assert_eq!(out.line, "OBSTRUCTIONS 2 (graphs with at most 4 vertices)");
}

#[test]
fn graph_list_round_trip() {
    let list = Artifact::GraphList(vec![make_path(2), Graph::new(0), make_path(1)]);
    let text = list.to_text();
    assert_eq!(
        Artifact::read(ArtifactKind::GraphList, &text).unwrap(),
        list
    );
    assert_eq!(
        Artifact::read(ArtifactKind::GraphList, "").unwrap(),
        Artifact::GraphList(Vec::new())
    );
}

struct Doubler;

impl Generator for Doubler {
    fn name(&self) -> &str {
        "path"
    }
    fn description(&self) -> &str {
        "path with twice the edges"
    }
    fn params(&self) -> &[ParamSpec] {
        &[ParamSpec {
            name: "len",
            help: "half the edges",
            required: true,
        }]
    }
    fn generate(&self, params: &Params, _: &Caps) -> Result<Artifact> {
        Ok(Artifact::Graph(make_path(2 * params.get("len")?)))
    }
}

#[test]
fn registration_replaces_by_name() {
    let mut r = Registry::standard();
    let before = r.generators().count();
    r.register_generator(Box::new(Doubler));
    assert_eq!(r.generators().count(), before);
    let g = r
        .generate("path", &Params::new().with("len", 2), &Caps::default())
        .unwrap();
    assert_eq!(g, Artifact::Graph(make_path(4)));
}
