//! Probe plans: what the external probe runner should try for each class.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::eval::values_equal as json_equal;
use crate::schema::OperatorSchemas;

pub const DEFAULT_TIMEOUT_SECS: f64 = 10.0;
/// A string no real operator accepts, for provoking validation errors.
pub const MARKER_VALUE: &str = "zzz_invalid";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Classification,
    Regression,
    Transform,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetSpec {
    pub n_samples: usize,
    pub n_features: usize,
    pub task: Task,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArgPlan {
    pub name: String,
    /// Values tried one at a time: documented enum members first, then the
    /// shared pool.
    pub candidates: Vec<Value>,
    /// Endpoints and defaults of numeric arguments.
    pub numeric_samples: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbePlan {
    pub class_path: String,
    pub args: Vec<ArgPlan>,
    pub dataset: DatasetSpec,
    pub timeout: f64,
    pub marker: String,
}

/// Dotted module path of a source file relative to `root`.
pub fn module_path(root: &Path, file: &Path, prefix: Option<&str>) -> String {
    let rel = file.strip_prefix(root).unwrap_or(file);
    let mut parts: Vec<String> = rel
        .with_extension("")
        .components()
        .map(|c| c.as_os_str().to_string_lossy().into_owned())
        .collect();
    if parts.last().is_some_and(|p| p == "__init__") {
        parts.pop();
    }
    if let Some(p) = prefix.filter(|p| !p.is_empty()) {
        parts.insert(0, p.to_string());
    }
    parts.join(".")
}

/// Guesses the kind of estimator from its name.
pub fn infer_task(class: &str) -> Task {
    const CLASSIFIERS: [&str; 5] = ["Classifier", "Logistic", "SVC", "NB", "Perceptron"];
    const REGRESSORS: [&str; 6] = [
        "Regressor",
        "Regression",
        "SVR",
        "Lasso",
        "Ridge",
        "ElasticNet",
    ];
    if CLASSIFIERS.iter().any(|k| class.contains(k)) {
        Task::Classification
    } else if REGRESSORS.iter().any(|k| class.contains(k)) {
        Task::Regression
    } else {
        Task::Transform
    }
}

fn push_unique(out: &mut Vec<Value>, v: &Value) {
    if !out.iter().any(|x| json_equal(x, v)) {
        out.push(v.clone());
    }
}

fn enum_values(v: &Value, out: &mut Vec<Value>) {
    if let Some(Value::Array(e)) = v.get("enum") {
        for x in e.iter().filter(|x| !x.is_null()) {
            push_unique(out, x);
        }
    }
    if let Some(Value::Array(m)) = v.get("anyOf") {
        for x in m {
            enum_values(x, out);
        }
    }
}

fn admits(v: &Value, ty: &str) -> bool {
    match v.get("type") {
        Some(Value::String(t)) => t == ty || (ty == "number" && t == "integer"),
        _ => v
            .get("anyOf")
            .and_then(Value::as_array)
            .is_some_and(|m| m.iter().any(|x| admits(x, ty))),
    }
}

/// Strings are worth trying: the schema admits them or says nothing.
fn string_like(v: &Value) -> bool {
    let mut e = Vec::new();
    enum_values(v, &mut e);
    let untyped = ["type", "enum", "anyOf", "laleType"]
        .iter()
        .all(|k| v.get(k).is_none());
    untyped || admits(v, "string") || e.iter().any(Value::is_string)
}

fn numeric_part(v: &Value) -> Option<&Value> {
    if matches!(
        v.get("type").and_then(Value::as_str),
        Some("number" | "integer")
    ) {
        return Some(v);
    }
    v.get("anyOf")?
        .as_array()?
        .iter()
        .find(|x| numeric_part(x).is_some())
}

/// String enum values across all schemas, in alphabetical class order.
pub fn greedy_pool(schemas: &[OperatorSchemas]) -> Vec<Value> {
    let mut sorted: Vec<&OperatorSchemas> = schemas.iter().collect();
    sorted.sort_by(|a, b| a.class.cmp(&b.class));
    let mut pool = Vec::new();
    for s in sorted {
        for p in s.hyperparams.properties.values() {
            let mut e = Vec::new();
            enum_values(p, &mut e);
            for x in e.iter().filter(|x| x.is_string()) {
                push_unique(&mut pool, x);
            }
        }
    }
    pool
}

pub fn make_plan(
    schemas: &OperatorSchemas,
    class_path: &str,
    pool: &[Value],
    seed: u64,
) -> ProbePlan {
    let args = schemas
        .hyperparams
        .properties
        .iter()
        .map(|(name, p)| {
            let mut candidates = Vec::new();
            enum_values(p, &mut candidates);
            if string_like(p) {
                for x in pool {
                    push_unique(&mut candidates, x);
                }
            }
            let mut numeric_samples = Vec::new();
            if let Some(n) = numeric_part(p) {
                for k in [
                    "minimum",
                    "minimumForOptimizer",
                    "maximumForOptimizer",
                    "maximum",
                ] {
                    if let Some(x) = n.get(k) {
                        push_unique(&mut numeric_samples, x);
                    }
                }
                if let Some(d) = p.get("default").filter(|d| d.is_number()) {
                    push_unique(&mut numeric_samples, d);
                }
            }
            ArgPlan {
                name: name.clone(),
                candidates,
                numeric_samples,
            }
        })
        .collect();
    ProbePlan {
        class_path: class_path.to_string(),
        args,
        dataset: DatasetSpec {
            n_samples: 30,
            n_features: 5,
            task: infer_task(&schemas.class),
            seed,
        },
        timeout: DEFAULT_TIMEOUT_SECS,
        marker: MARKER_VALUE.to_string(),
    }
}
