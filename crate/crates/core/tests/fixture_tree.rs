use std::path::{Path, PathBuf};

use docmine_core::refine::OBSERVATIONS_SCHEMA;
use docmine_core::{
    greedy_pool, make_plan, mine_source, refine, MineOptions, ObservationSet, OperatorSchemas,
    Overrides, ProbePlan, RefineOptions, SourceFile,
};
use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn mine_tree() -> Vec<OperatorSchemas> {
    let mut files = Vec::new();
    let mut stack = vec![fixtures().join("sklearn")];
    while let Some(dir) = stack.pop() {
        for e in std::fs::read_dir(dir).unwrap() {
            let path = e.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else if path.extension().is_some_and(|x| x == "py") {
                files.push(path);
            }
        }
    }
    files.sort();
    files
        .iter()
        .flat_map(|f| {
            let src = SourceFile::new(f, std::fs::read_to_string(f).unwrap());
            mine_source(&src, &MineOptions::default()).0
        })
        .map(|m| m.schemas)
        .collect()
}

#[test]
fn observation_fixture_matches_published_schema() {
    let schema: Value = serde_json::from_str(OBSERVATIONS_SCHEMA).unwrap();
    let path = fixtures().join("logistic/observations/LogisticRegression.json");
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(jsonschema::draft4::is_valid(&schema, &doc));
    assert!(ObservationSet::load(&path).is_ok());
}

#[test]
fn plans_cover_exactly_the_hyperparameters() {
    let schemas = mine_tree();
    let pool = greedy_pool(&schemas);
    for s in &schemas {
        let plan = make_plan(s, &format!("pkg.{}", s.class), &pool, 7);
        let names: Vec<&str> = plan.args.iter().map(|a| a.name.as_str()).collect();
        let props: Vec<&str> = s
            .hyperparams
            .properties
            .keys()
            .map(String::as_str)
            .collect();
        assert_eq!(names, props);
        let text = serde_json::to_string(&plan).unwrap();
        assert_eq!(serde_json::from_str::<ProbePlan>(&text).unwrap(), plan);
    }
}

#[test]
fn refinement_is_idempotent_on_the_tree() {
    let ov = Overrides::load(&fixtures().join("logistic/overrides.json")).unwrap();
    let obs =
        ObservationSet::load(&fixtures().join("logistic/observations/LogisticRegression.json"))
            .unwrap();
    let opts = RefineOptions::default();
    for s in mine_tree() {
        let o = (s.class == obs.class_name).then_some(&obs);
        let (once, _) = refine(&s, o, &ov, &opts);
        let (twice, _) = refine(&once, o, &ov, &opts);
        assert_eq!(once, twice, "{}", s.class);
        let back = OperatorSchemas::from_json(&once.to_json(), "x").unwrap();
        assert_eq!(back.to_json(), once.to_json());
    }
}
