//! Merging observations and user overrides into a mined schema.

use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};
use thiserror::Error;

use crate::cnl::types::json_equal;
use crate::diagnostics::{Diagnostic, DiagnosticKind};
use crate::schema::{is_valid, OperatorSchemas};

/// JSON Schema for observation files.
pub const OBSERVATIONS_SCHEMA: &str = include_str!("../schemas/observations.schema.json");

pub const DEFAULT_BLOCKLIST: [&str; 7] = [
    "verbose",
    "n_jobs",
    "random_state",
    "copy",
    "warm_start",
    "cache_size",
    "max_iter",
];

pub const DEFAULT_SCALE_FREE: [&str; 4] = ["C", "alpha", "tol", "learning_rate"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservedDefault {
    pub value: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repr: Option<String>,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub py_type: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accepted,
    Rejected,
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HarvestedValue {
    pub value: Value,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericBounds {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_exclusive: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_exclusive: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservationSet {
    pub class_name: String,
    #[serde(default)]
    pub observed_defaults: IndexMap<String, ObservedDefault>,
    #[serde(default)]
    pub harvested_enums: IndexMap<String, Vec<HarvestedValue>>,
    #[serde(default)]
    pub numeric_bounds: IndexMap<String, NumericBounds>,
    #[serde(default)]
    pub exception_notes: IndexMap<String, Vec<String>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArgOverride {
    /// Replaces the whole property schema.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exclude_from_optimizer: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<String>,
    #[serde(
        rename = "minimumForOptimizer",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub minimum_for_optimizer: Option<Number>,
    #[serde(
        rename = "maximumForOptimizer",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub maximum_for_optimizer: Option<Number>,
    /// Values removed from the argument's enums.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blacklist: Option<Vec<Value>>,
}

/// Overrides keyed by `ClassName.arg`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Overrides(pub IndexMap<String, ArgOverride>);

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: override key `{key}` is not of the form Class.arg")]
    BadKey { path: String, key: String },
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })
}

impl Overrides {
    pub fn from_str(text: &str, origin: &str) -> Result<Self, InputError> {
        let o: Overrides = serde_json::from_str(text).map_err(|source| InputError::Json {
            path: origin.to_string(),
            source,
        })?;
        for key in o.0.keys() {
            let ok = key
                .split_once('.')
                .is_some_and(|(c, a)| !c.is_empty() && !a.is_empty());
            if !ok {
                return Err(InputError::BadKey {
                    path: origin.to_string(),
                    key: key.clone(),
                });
            }
        }
        Ok(o)
    }

    pub fn load(path: &Path) -> Result<Self, InputError> {
        Self::from_str(&read(path)?, &path.display().to_string())
    }

    pub fn for_class(&self, class: &str) -> IndexMap<&str, &ArgOverride> {
        self.0
            .iter()
            .filter_map(|(k, v)| {
                let (c, a) = k.split_once('.')?;
                (c == class).then_some((a, v))
            })
            .collect()
    }
}

impl ObservationSet {
    pub fn from_str(text: &str, origin: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|source| InputError::Json {
            path: origin.to_string(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, InputError> {
        Self::from_str(&read(path)?, &path.display().to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefineOptions {
    pub blocklist: Vec<String>,
    /// `max/min` above which a positive range is searched log-uniformly.
    pub loguniform_ratio: f64,
    /// Arguments searched log-uniformly whenever their range is positive.
    pub scale_free: Vec<String>,
}

impl Default for RefineOptions {
    fn default() -> Self {
        RefineOptions {
            blocklist: DEFAULT_BLOCKLIST.iter().map(|s| s.to_string()).collect(),
            loguniform_ratio: 100.0,
            scale_free: DEFAULT_SCALE_FREE.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// An observation that contradicts the docstring. The observation is used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConflictReport {
    pub class: String,
    pub arg: String,
    pub field: String,
    pub documented: Value,
    pub observed: Value,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RefineReport {
    pub conflicts: Vec<ConflictReport>,
    pub diagnostics: Vec<Diagnostic>,
}

fn type_is(v: &Value, t: &str) -> bool {
    match v.get("type") {
        Some(Value::String(s)) => s == t,
        Some(Value::Array(a)) => a.iter().any(|x| x == t),
        _ => false,
    }
}

fn is_numeric(v: &Value) -> bool {
    type_is(v, "number") || type_is(v, "integer")
}

fn is_string_enum(v: &Value) -> bool {
    v.get("enum")
        .and_then(Value::as_array)
        .is_some_and(|e| e.iter().any(Value::is_string))
}

fn has_type_keywords(v: &Value) -> bool {
    ["type", "enum", "anyOf", "allOf", "not", "laleType"]
        .iter()
        .any(|k| v.get(k).is_some())
}

fn enum_contains(v: &Value, x: &Value) -> bool {
    let direct = v
        .get("enum")
        .and_then(Value::as_array)
        .is_some_and(|e| e.iter().any(|y| json_equal(x, y)));
    let nested = v
        .get("anyOf")
        .and_then(Value::as_array)
        .is_some_and(|m| m.iter().any(|s| enum_contains(s, x)));
    direct || nested
}

fn is_sentinel(signature: Option<&Value>, prop: &Value) -> bool {
    let Some(s @ Value::String(_)) = signature else {
        return false;
    };
    let string_like = type_is(prop, "string")
        || prop
            .get("anyOf")
            .and_then(Value::as_array)
            .is_some_and(|m| m.iter().any(|x| type_is(x, "string")));
    !string_like && !enum_contains(prop, s)
}

/// Removes `drop` from every enum in the fragment.
fn prune_enum(frag: &mut Value, drop: &[Value]) {
    if let Some(Value::Array(e)) = frag.get_mut("enum") {
        e.retain(|x| !drop.iter().any(|d| json_equal(x, d)));
    }
    if let Some(Value::Array(m)) = frag.get_mut("anyOf") {
        for s in m {
            prune_enum(s, drop);
        }
    }
}

fn union_into(target: &mut Value, add: &[Value]) {
    let obj = target
        .as_object_mut()
        .expect("property schemas are objects");
    let mut values: Vec<Value> = match obj.get("enum") {
        Some(Value::Array(e)) => e.clone(),
        _ => Vec::new(),
    };
    for a in add {
        if !values.iter().any(|v| json_equal(v, a)) {
            values.push(a.clone());
        }
    }
    if type_is(&Value::Object(obj.clone()), "string") {
        obj.remove("type");
    }
    obj.insert("enum".into(), Value::Array(values));
}

struct Ctx<'a> {
    class: &'a str,
    report: &'a mut RefineReport,
}

impl Ctx<'_> {
    fn conflict(&mut self, arg: &str, field: &str, documented: Value, observed: Value) {
        self.report.diagnostics.push(Diagnostic::new(
            self.class,
            Some(arg),
            DiagnosticKind::Conflict,
            format!("{field}: documented {documented}, observed {observed}"),
        ));
        self.report.conflicts.push(ConflictReport {
            class: self.class.to_string(),
            arg: arg.to_string(),
            field: field.to_string(),
            documented,
            observed,
        });
    }
}

fn apply_default(
    ctx: &mut Ctx,
    arg: &str,
    prop: &mut Value,
    signature: Option<&Value>,
    observed: &ObservedDefault,
) {
    let current = prop.get("default").cloned();
    let sentinel = is_sentinel(signature, prop);
    if let Some(cur) = &current {
        if !sentinel && !json_equal(cur, &observed.value) {
            ctx.conflict(arg, "default", cur.clone(), observed.value.clone());
        }
    }
    prop.as_object_mut()
        .unwrap()
        .insert("default".into(), observed.value.clone());
}

fn apply_enums(ctx: &mut Ctx, arg: &str, prop: &mut Value, harvested: &[HarvestedValue]) {
    let pick = |v: Verdict| -> Vec<Value> {
        harvested
            .iter()
            .filter(|h| h.verdict == v)
            .map(|h| h.value.clone())
            .collect()
    };
    let accepted = pick(Verdict::Accepted);
    let rejected = pick(Verdict::Rejected);

    let documented: Vec<Value> = match prop.get("enum") {
        Some(Value::Array(e)) => e.clone(),
        _ => Vec::new(),
    };
    for r in &rejected {
        if documented.iter().any(|d| json_equal(d, r)) {
            ctx.conflict(arg, "enum", Value::Array(documented.clone()), r.clone());
        }
    }
    if !documented.is_empty() && is_string_enum(prop) {
        for a in &accepted {
            if !documented.iter().any(|d| json_equal(d, a)) {
                ctx.conflict(arg, "enum", Value::Array(documented.clone()), a.clone());
            }
        }
    }

    if !accepted.is_empty() {
        if type_is(prop, "string") || is_string_enum(prop) || !has_type_keywords(prop) {
            union_into(prop, &accepted);
        } else if let Some(Value::Array(members)) = prop.get_mut("anyOf") {
            let slot = members
                .iter()
                .position(|m| type_is(m, "string") || is_string_enum(m));
            match slot {
                Some(i) => union_into(&mut members[i], &accepted),
                None => members.push(serde_json::json!({ "enum": accepted })),
            }
        }
    }
    prune_enum(prop, &rejected);
}

fn set_bounds(frag: &mut Value, b: &NumericBounds) {
    let obj = frag.as_object_mut().unwrap();
    if let Some(min) = &b.min {
        obj.insert("minimum".into(), Value::Number(min.clone()));
        if b.min_exclusive == Some(true) {
            obj.insert("exclusiveMinimum".into(), true.into());
        } else {
            obj.remove("exclusiveMinimum");
        }
    }
    if let Some(max) = &b.max {
        obj.insert("maximum".into(), Value::Number(max.clone()));
        if b.max_exclusive == Some(true) {
            obj.insert("exclusiveMaximum".into(), true.into());
        } else {
            obj.remove("exclusiveMaximum");
        }
    }
}

fn apply_bounds(prop: &mut Value, b: &NumericBounds) -> bool {
    if is_numeric(prop) {
        set_bounds(prop, b);
        return true;
    }
    let mut hit = false;
    if let Some(Value::Array(members)) = prop.get_mut("anyOf") {
        for m in members.iter_mut().filter(|m| is_numeric(m)) {
            set_bounds(m, b);
            hit = true;
        }
    }
    hit
}

fn apply_override(prop: &mut Value, ov: &ArgOverride) {
    if let Some(s) = &ov.schema {
        *prop = s.clone();
    }
    let obj = match prop.as_object_mut() {
        Some(o) => o,
        None => return,
    };
    if let Some(d) = &ov.distribution {
        obj.insert("distribution".into(), Value::String(d.clone()));
    }
    if let Some(n) = &ov.minimum_for_optimizer {
        obj.insert("minimumForOptimizer".into(), Value::Number(n.clone()));
    }
    if let Some(n) = &ov.maximum_for_optimizer {
        obj.insert("maximumForOptimizer".into(), Value::Number(n.clone()));
    }
    if let Some(b) = &ov.blacklist {
        prune_enum(prop, b);
    }
}

/// Picks `loguniform` or `uniform` for a bounded numeric argument.
fn choose_distribution(arg: &str, prop: &Value, opts: &RefineOptions) -> Option<&'static str> {
    if !is_numeric(prop) {
        return None;
    }
    let num = |k: &str| prop.get(k).and_then(Value::as_f64);
    let lo = num("minimumForOptimizer").or_else(|| num("minimum"))?;
    let hi = num("maximumForOptimizer").or_else(|| num("maximum"))?;
    let positive = lo > 0.0 && hi > lo;
    let scale_free = opts.scale_free.iter().any(|s| s == arg);
    if positive && (hi / lo > opts.loguniform_ratio || scale_free) {
        Some("loguniform")
    } else {
        Some("uniform")
    }
}

/// Applies observations and overrides. Overrides win over observations,
/// observations over the docstring. Repeated application changes nothing.
pub fn refine(
    raw: &OperatorSchemas,
    obs: Option<&ObservationSet>,
    ov: &Overrides,
    opts: &RefineOptions,
) -> (OperatorSchemas, RefineReport) {
    let mut out = raw.clone();
    let mut report = RefineReport::default();
    let class = raw.class.clone();
    let overrides = ov.for_class(&class);
    let mut ctx = Ctx {
        class: &class,
        report: &mut report,
    };

    let names: Vec<String> = out.hyperparams.properties.keys().cloned().collect();
    for arg in &names {
        let prop = out.hyperparams.properties.get_mut(arg).unwrap();
        if !prop.is_object() {
            *prop = Value::Object(Map::new());
        }
        if let Some(o) = obs {
            if let Some(d) = o.observed_defaults.get(arg) {
                apply_default(&mut ctx, arg, prop, raw.signature_defaults.get(arg), d);
            }
            if let Some(h) = o.harvested_enums.get(arg) {
                apply_enums(&mut ctx, arg, prop, h);
            }
            if let Some(b) = o.numeric_bounds.get(arg) {
                if !apply_bounds(prop, b) {
                    ctx.report.diagnostics.push(Diagnostic::new(
                        &class,
                        Some(arg),
                        DiagnosticKind::Conflict,
                        "numeric bounds observed for a non-numeric argument",
                    ));
                }
            }
        }
        let arg_ov = overrides.get(arg.as_str());
        if let Some(o) = arg_ov {
            apply_override(prop, o);
        }
        if prop.get("distribution").is_none() {
            if let Some(d) = choose_distribution(arg, prop, opts) {
                prop.as_object_mut()
                    .unwrap()
                    .insert("distribution".into(), d.into());
            }
        }
        if let Some(d) = prop.get("default") {
            if !is_valid(d, prop) {
                ctx.report.diagnostics.push(Diagnostic::new(
                    &class,
                    Some(arg),
                    DiagnosticKind::DefaultMismatch,
                    format!("default {d} does not validate against the refined schema"),
                ));
            }
        }
    }

    for arg in overrides.keys() {
        if !out.hyperparams.properties.contains_key(*arg) {
            ctx.report.diagnostics.push(Diagnostic::new(
                &class,
                Some(arg),
                DiagnosticKind::Conflict,
                "override names an argument the schema does not have",
            ));
        }
    }

    out.hyperparams.relevant_to_optimizer.retain(|a| {
        let o = overrides.get(a.as_str());
        if o.and_then(|o| o.exclude_from_optimizer) == Some(true) {
            return false;
        }
        o.is_some() || !opts.blocklist.iter().any(|b| b == a)
    });
    (out, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::SchemaDoc;
    use serde_json::json;

    fn raw_lr() -> OperatorSchemas {
        let mut hp = SchemaDoc {
            required: vec![
                "solver".into(),
                "penalty".into(),
                "C".into(),
                "verbose".into(),
            ],
            relevant_to_optimizer: vec![
                "solver".into(),
                "penalty".into(),
                "C".into(),
                "verbose".into(),
            ],
            ..Default::default()
        };
        hp.properties.insert(
            "solver".into(),
            json!({"enum": ["linear", "sag", "lbfgs"], "default": "linear"}),
        );
        hp.properties.insert(
            "penalty".into(),
            json!({"enum": ["l1", "l2"], "default": "l2"}),
        );
        hp.properties
            .insert("C".into(), json!({"type": "number", "default": 1.0}));
        hp.properties
            .insert("verbose".into(), json!({"type": "integer", "default": 0}));
        let mut sig = IndexMap::new();
        sig.insert("solver".into(), json!("warn"));
        OperatorSchemas {
            class: "LogisticRegression".into(),
            hyperparams: hp,
            signature_defaults: sig,
            ..Default::default()
        }
    }

    fn c_override() -> Overrides {
        Overrides::from_str(
            r#"{"LogisticRegression.C": {"distribution": "loguniform", "minimumForOptimizer": 0.03125, "maximumForOptimizer": 32768}}"#,
            "t",
        )
        .unwrap()
    }

    fn obs() -> ObservationSet {
        ObservationSet::from_str(
            r#"{"class_name": "LogisticRegression",
                "observed_defaults": {"solver": {"value": "linear"}},
                "numeric_bounds": {"C": {"min": 0.0, "min_exclusive": true}}}"#,
            "t",
        )
        .unwrap()
    }

    #[test]
    fn logistic_c_schema() {
        let (out, report) = refine(
            &raw_lr(),
            Some(&obs()),
            &c_override(),
            &RefineOptions::default(),
        );
        assert_eq!(
            out.hyperparams.properties["C"],
            json!({"type": "number", "default": 1.0, "distribution": "loguniform", "minimum": 0.0,
                   "exclusiveMinimum": true, "minimumForOptimizer": 0.03125, "maximumForOptimizer": 32768})
        );
        assert!(report.conflicts.is_empty());
        assert_eq!(
            out.hyperparams.relevant_to_optimizer,
            ["solver", "penalty", "C"]
        );
    }

    #[test]
    fn identity_without_inputs_except_pruning() {
        let raw = raw_lr();
        let (out, _) = refine(&raw, None, &Overrides::default(), &RefineOptions::default());
        assert_eq!(out.hyperparams.properties, raw.hyperparams.properties);
        assert_eq!(out.hyperparams.required, raw.hyperparams.required);
        assert_eq!(
            out.hyperparams.relevant_to_optimizer,
            ["solver", "penalty", "C"]
        );
    }

    #[test]
    fn idempotent() {
        let o = obs();
        let v = c_override();
        let opts = RefineOptions::default();
        let (once, _) = refine(&raw_lr(), Some(&o), &v, &opts);
        let (twice, _) = refine(&once, Some(&o), &v, &opts);
        assert_eq!(once, twice);
    }

    #[test]
    fn harvested_enum_fills_string_arg() {
        let mut raw = raw_lr();
        raw.class = "GradientBoostingClassifier".into();
        raw.hyperparams.properties.insert(
            "criterion".into(),
            json!({"type": "string", "default": "friedman_mse"}),
        );
        let o = ObservationSet::from_str(
            r#"{"class_name": "GradientBoostingClassifier", "harvested_enums": {"criterion": [
                {"value": "friedman_mse", "verdict": "accepted"},
                {"value": "mse", "verdict": "accepted", "provenance": "exception message"},
                {"value": "mae", "verdict": "accepted"},
                {"value": "zzz", "verdict": "rejected"},
                {"value": "slow", "verdict": "timeout"}]}}"#,
            "t",
        )
        .unwrap();
        let (out, _) = refine(
            &raw,
            Some(&o),
            &Overrides::default(),
            &RefineOptions::default(),
        );
        assert_eq!(
            out.hyperparams.properties["criterion"],
            json!({"default": "friedman_mse", "enum": ["friedman_mse", "mse", "mae"]})
        );
    }

    #[test]
    fn conflicts_are_reported_and_observation_wins() {
        let o = ObservationSet::from_str(
            r#"{"class_name": "LogisticRegression",
                "observed_defaults": {"penalty": {"value": "l1"}},
                "harvested_enums": {"solver": [{"value": "sag", "verdict": "rejected"}, {"value": "saga", "verdict": "accepted"}]}}"#,
            "t",
        )
        .unwrap();
        let (out, report) = refine(
            &raw_lr(),
            Some(&o),
            &Overrides::default(),
            &RefineOptions::default(),
        );
        assert_eq!(report.conflicts.len(), 3);
        assert_eq!(
            out.hyperparams.properties["penalty"]["default"],
            json!("l1")
        );
        assert_eq!(
            out.hyperparams.properties["solver"]["enum"],
            json!(["linear", "lbfgs", "saga"])
        );
    }

    #[test]
    fn sentinel_default_is_silently_replaced() {
        let mut raw = raw_lr();
        raw.hyperparams.properties.insert(
            "solver".into(),
            json!({"enum": ["liblinear", "lbfgs"], "default": "warn"}),
        );
        let o = ObservationSet::from_str(r#"{"class_name": "LogisticRegression", "observed_defaults": {"solver": {"value": "lbfgs", "type": "str"}}}"#, "t").unwrap();
        let (out, report) = refine(
            &raw,
            Some(&o),
            &Overrides::default(),
            &RefineOptions::default(),
        );
        assert!(report.conflicts.is_empty());
        assert_eq!(
            out.hyperparams.properties["solver"]["default"],
            json!("lbfgs")
        );
    }

    #[test]
    fn overrides_are_verbatim_and_keep_blocklisted_args() {
        let v = Overrides::from_str(
            r#"{"LogisticRegression.verbose": {"schema": {"enum": [0, 1]}},
                "LogisticRegression.penalty": {"exclude_from_optimizer": true, "blacklist": ["l1"]}}"#,
            "t",
        )
        .unwrap();
        let (out, _) = refine(&raw_lr(), None, &v, &RefineOptions::default());
        assert_eq!(
            out.hyperparams.properties["verbose"],
            json!({"enum": [0, 1]})
        );
        assert_eq!(out.hyperparams.properties["penalty"]["enum"], json!(["l2"]));
        assert_eq!(
            out.hyperparams.relevant_to_optimizer,
            ["solver", "C", "verbose"]
        );
        assert_eq!(out.hyperparams.required.len(), 4);
    }

    #[test]
    fn distribution_heuristic() {
        let opts = RefineOptions::default();
        let p = |v: Value| choose_distribution("x", &v, &opts);
        assert_eq!(
            p(json!({"type": "number", "minimum": 0.001, "maximum": 1.0})),
            Some("loguniform")
        );
        assert_eq!(
            p(json!({"type": "number", "minimum": 0.1, "maximum": 1.0})),
            Some("uniform")
        );
        assert_eq!(
            p(json!({"type": "integer", "minimum": -1, "maximum": 1000})),
            Some("uniform")
        );
        assert_eq!(p(json!({"type": "number", "minimum": 0.1})), None);
        assert_eq!(p(json!({"enum": [1, 2]})), None);
        assert_eq!(
            choose_distribution(
                "alpha",
                &json!({"type": "number", "minimum": 0.1, "maximum": 1.0}),
                &opts
            ),
            Some("loguniform")
        );
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(Overrides::from_str(r#"{"A.b": {"distrib": "uniform"}}"#, "t").is_err());
        assert!(matches!(
            Overrides::from_str(r#"{"Ab": {}}"#, "t"),
            Err(InputError::BadKey { .. })
        ));
        assert!(ObservationSet::from_str(r#"{"class_name": "A", "extra": 1}"#, "t").is_err());
    }

    #[test]
    fn published_schema_matches_the_types() {
        let schema: Value = serde_json::from_str(OBSERVATIONS_SCHEMA).unwrap();
        let v = jsonschema::draft4::new(&schema).unwrap();
        let full = json!({
            "class_name": "A",
            "observed_defaults": {"a": {"value": 1, "repr": "1", "type": "int"}},
            "harvested_enums": {"b": [{"value": "x", "verdict": "accepted", "provenance": "p"}]},
            "numeric_bounds": {"c": {"min": 0, "min_exclusive": true, "max": 1.5, "max_exclusive": false}},
            "exception_notes": {"b": ["bad value"]}
        });
        assert!(v.is_valid(&full));
        let parsed: ObservationSet = serde_json::from_value(full.clone()).unwrap();
        assert!(v.is_valid(&serde_json::to_value(&parsed).unwrap()));
        for bad in [
            json!({"class_name": "A", "x": 1}),
            json!({"observed_defaults": {}}),
            json!({"class_name": "A", "harvested_enums": {"b": [{"value": 1, "verdict": "maybe"}]}}),
        ] {
            assert!(!v.is_valid(&bad));
            assert!(serde_json::from_value::<ObservationSet>(bad).is_err());
        }
    }
}
