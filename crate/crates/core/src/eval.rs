//! Comparing generated schemas against curated ones.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::schema::{OperatorSchemas, SchemaDoc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Arguments,
    Types,
    Defaults,
    Ranges,
    Distributions,
    Constraints,
    TypeValues,
    EnumValues,
}

impl Category {
    pub const ALL: [Category; 8] = [
        Category::Arguments,
        Category::Types,
        Category::Defaults,
        Category::Ranges,
        Category::Distributions,
        Category::Constraints,
        Category::TypeValues,
        Category::EnumValues,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::Arguments => "arguments",
            Category::Types => "types",
            Category::Defaults => "defaults",
            Category::Ranges => "ranges",
            Category::Distributions => "distributions",
            Category::Constraints => "constraints",
            Category::TypeValues => "type_values",
            Category::EnumValues => "enum_values",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub reference: usize,
    pub generated: usize,
    #[serde(rename = "match")]
    pub matched: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Score {
    pub reference: usize,
    pub generated: usize,
    #[serde(rename = "match")]
    pub matched: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Counts {
    pub fn score(self) -> Score {
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let precision = ratio(self.matched, self.generated);
        let recall = ratio(self.matched, self.reference);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Score {
            reference: self.reference,
            generated: self.generated,
            matched: self.matched,
            precision,
            recall,
            f1,
        }
    }

    fn add(&mut self, o: Counts) {
        self.reference += o.reference;
        self.generated += o.generated;
        self.matched += o.matched;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassRow {
    pub class: String,
    pub counts: BTreeMap<Category, Counts>,
    /// Generated constraints including placeholders.
    pub detected_constraints: usize,
}

/// Parser-vs-refiner attribution of one coverage column.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attributed {
    pub parser: usize,
    pub refiner: usize,
}

impl Attributed {
    pub fn total(self) -> usize {
        self.parser + self.refiner
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Coverage {
    pub classes: usize,
    pub arguments: usize,
    pub types: Attributed,
    pub defaults: Attributed,
    pub ranges: Attributed,
    pub distributions: Attributed,
    pub constraints_valid: usize,
    pub constraints_detected: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub totals: BTreeMap<Category, Score>,
    pub detected_constraints: usize,
    pub rows: Vec<ClassRow>,
    pub unpaired_generated: Vec<String>,
    pub unpaired_curated: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coverage: Option<Coverage>,
}

// ---------------------------------------------------------------------------
// normalization

const REL_TOL: f64 = 1e-9;

fn num_eq(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= REL_TOL * a.abs().max(b.abs())
}

/// Equality with integer/float coercion and a relative float tolerance.
pub fn values_equal(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => match (x.as_i64(), y.as_i64()) {
            (Some(i), Some(j)) => i == j,
            _ => num_eq(
                x.as_f64().unwrap_or(f64::NAN),
                y.as_f64().unwrap_or(f64::NAN),
            ),
        },
        (Value::Array(x), Value::Array(y)) => {
            x.len() == y.len() && x.iter().zip(y).all(|(a, b)| values_equal(a, b))
        }
        (Value::Object(x), Value::Object(y)) => {
            x.len() == y.len()
                && x.iter()
                    .all(|(k, v)| y.get(k).is_some_and(|w| values_equal(v, w)))
        }
        _ => a == b,
    }
}

/// A canonical string for a JSON value: numbers as floats, objects with
/// sorted keys.
fn canon_value(v: &Value) -> String {
    match v {
        Value::Number(n) => format!("n:{}", n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) => format!("s:{s}"),
        Value::Array(a) => format!(
            "[{}]",
            a.iter().map(canon_value).collect::<Vec<_>>().join(",")
        ),
        Value::Object(m) => {
            let sorted: BTreeMap<_, _> =
                m.iter().map(|(k, v)| (k.clone(), canon_value(v))).collect();
            format!("{sorted:?}")
        }
        other => other.to_string(),
    }
}

#[derive(Default)]
struct TypeTerms {
    terms: BTreeSet<String>,
    enum_values: BTreeSet<String>,
}

fn collect_terms(v: &Value, out: &mut TypeTerms) {
    let Value::Object(m) = v else { return };
    match m.get("type") {
        Some(Value::String(t)) if t == "null" => {
            out.terms.insert("null".into());
        }
        Some(Value::String(t)) => {
            out.terms.insert(format!("type:{t}"));
        }
        Some(Value::Array(ts)) => {
            for t in ts.iter().filter_map(Value::as_str) {
                out.terms.insert(if t == "null" {
                    "null".into()
                } else {
                    format!("type:{t}")
                });
            }
        }
        _ => {}
    }
    if let Some(Value::Array(e)) = m.get("enum") {
        for x in e {
            if x.is_null() {
                out.terms.insert("null".into());
            } else {
                out.enum_values.insert(canon_value(x));
            }
        }
    }
    if let Some(Value::String(t)) = m.get("laleType") {
        out.terms.insert(format!("laleType:{t}"));
    }
    if let Some(n) = m.get("not") {
        out.terms
            .insert(format!("not:{}", normalized_type(n).unwrap_or_default()));
    }
    for k in ["anyOf", "oneOf", "allOf"] {
        if let Some(Value::Array(members)) = m.get(k) {
            for x in members {
                collect_terms(x, out);
            }
        }
    }
}

/// Order-insensitive rendering of a property's type: `anyOf` flattened,
/// enums merged, `type` arrays split, `null` and `enum: [null]` identified.
/// `None` when the schema carries no type information.
pub fn normalized_type(v: &Value) -> Option<String> {
    let mut t = TypeTerms::default();
    collect_terms(v, &mut t);
    if !t.enum_values.is_empty() {
        let vals: Vec<_> = t.enum_values.into_iter().collect();
        t.terms.insert(format!("enum:{}", vals.join("|")));
    }
    (!t.terms.is_empty()).then(|| t.terms.into_iter().collect::<Vec<_>>().join(" ; "))
}

fn terminal_types(arg: &str, v: &Value, out: &mut Vec<String>) {
    let Value::Object(m) = v else { return };
    let mut push = |t: &str| out.push(format!("{arg}:{t}"));
    match m.get("type") {
        Some(Value::String(t)) => {
            if ["boolean", "integer", "number", "string"].contains(&t.as_str()) {
                push(t);
            }
        }
        Some(Value::Array(ts)) => {
            for t in ts.iter().filter_map(Value::as_str) {
                if ["boolean", "integer", "number", "string"].contains(&t) {
                    push(t);
                }
            }
        }
        _ => {}
    }
    if m.get("enum")
        .and_then(Value::as_array)
        .is_some_and(|e| e.iter().any(|x| !x.is_null()))
    {
        push("enum");
    }
    for k in ["anyOf", "oneOf", "allOf"] {
        if let Some(Value::Array(members)) = m.get(k) {
            for x in members {
                terminal_types(arg, x, out);
            }
        }
    }
}

fn enum_members(arg: &str, v: &Value, out: &mut Vec<String>) {
    let Value::Object(m) = v else { return };
    if let Some(Value::Array(e)) = m.get("enum") {
        out.extend(
            e.iter()
                .filter(|x| !x.is_null())
                .map(|x| format!("{arg}:{}", canon_value(x))),
        );
    }
    for k in ["anyOf", "oneOf", "allOf"] {
        if let Some(Value::Array(members)) = m.get(k) {
            for x in members {
                enum_members(arg, x, out);
            }
        }
    }
}

/// Size of the multiset intersection.
fn multiset_match(a: &[String], b: &[String]) -> usize {
    let mut counts: BTreeMap<&String, usize> = BTreeMap::new();
    for x in a {
        *counts.entry(x).or_default() += 1;
    }
    b.iter()
        .filter(|x| match counts.get_mut(x) {
            Some(c) if *c > 0 => {
                *c -= 1;
                true
            }
            _ => false,
        })
        .count()
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Bound {
    value: f64,
    exclusive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
struct Interval {
    lo: Option<Bound>,
    hi: Option<Bound>,
}

fn numeric_part(v: &Value) -> &Value {
    let has = |x: &Value| {
        [
            "minimum",
            "maximum",
            "minimumForOptimizer",
            "maximumForOptimizer",
        ]
        .iter()
        .any(|k| x.get(k).is_some())
    };
    if has(v) {
        return v;
    }
    v.get("anyOf")
        .and_then(Value::as_array)
        .and_then(|m| m.iter().find(|x| has(x)))
        .unwrap_or(v)
}

/// Intersection of the hard and optimizer ranges; `None` if unbounded.
fn interval(v: &Value) -> Option<Interval> {
    let v = numeric_part(v);
    let f = |k: &str| v.get(k).and_then(Value::as_f64);
    let flag = |k: &str| v.get(k).and_then(Value::as_bool).unwrap_or(false);
    let tighter = |hard: Option<Bound>, soft: Option<f64>, lower: bool| -> Option<Bound> {
        let soft = soft.map(|value| Bound {
            value,
            exclusive: false,
        });
        match (hard, soft) {
            (Some(h), Some(s)) => {
                let s_tighter = if lower {
                    s.value > h.value
                } else {
                    s.value < h.value
                };
                Some(if s_tighter { s } else { h })
            }
            (h, s) => h.or(s),
        }
    };
    let hard_lo = f("minimum").map(|value| Bound {
        value,
        exclusive: flag("exclusiveMinimum"),
    });
    let hard_hi = f("maximum").map(|value| Bound {
        value,
        exclusive: flag("exclusiveMaximum"),
    });
    let iv = Interval {
        lo: tighter(hard_lo, f("minimumForOptimizer"), true),
        hi: tighter(hard_hi, f("maximumForOptimizer"), false),
    };
    (iv.lo.is_some() || iv.hi.is_some()).then_some(iv)
}

/// `inner ⊆ outer`, respecting exclusivity.
fn interval_subset(inner: Interval, outer: Interval) -> bool {
    let lo_ok = match (inner.lo, outer.lo) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(i), Some(o)) => {
            if num_eq(i.value, o.value) {
                i.exclusive || !o.exclusive
            } else {
                i.value > o.value
            }
        }
    };
    let hi_ok = match (inner.hi, outer.hi) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(i), Some(o)) => {
            if num_eq(i.value, o.value) {
                i.exclusive || !o.exclusive
            } else {
                i.value < o.value
            }
        }
    };
    lo_ok && hi_ok
}

pub fn is_todo_constraint(c: &Value) -> bool {
    c.get("description")
        .and_then(Value::as_str)
        .is_some_and(|d| d.starts_with("TODO"))
        && c.as_object().is_some_and(|m| m.len() == 1)
}

fn strip_description(c: &Value) -> Value {
    match c {
        Value::Object(m) => Value::Object(
            m.iter()
                .filter(|(k, _)| k.as_str() != "description")
                .map(|(k, v)| (k.clone(), strip_description(v)))
                .collect(),
        ),
        Value::Array(a) => Value::Array(a.iter().map(strip_description).collect()),
        other => other.clone(),
    }
}

/// Structural key of a constraint: descriptions dropped, `anyOf` branch
/// order and property order ignored.
fn constraint_key(c: &Value) -> String {
    fn key(v: &Value) -> String {
        match v {
            Value::Object(m) => {
                let mut parts: Vec<String> = m
                    .iter()
                    .map(|(k, x)| {
                        if k == "anyOf" || k == "allOf" || k == "enum" {
                            let mut inner: Vec<String> = x
                                .as_array()
                                .map(|a| a.iter().map(key).collect())
                                .unwrap_or_default();
                            inner.sort();
                            format!("{k}:[{}]", inner.join(","))
                        } else {
                            format!("{k}:{}", key(x))
                        }
                    })
                    .collect();
                parts.sort();
                format!("{{{}}}", parts.join(","))
            }
            other => canon_value(other),
        }
    }
    key(&strip_description(c))
}

// ---------------------------------------------------------------------------
// comparison

fn prop_count(props: &IndexMap<String, Value>, pred: impl Fn(&Value) -> bool) -> usize {
    props.values().filter(|v| pred(v)).count()
}

fn compare_docs(gen: &SchemaDoc, cur: &SchemaDoc) -> (BTreeMap<Category, Counts>, usize) {
    let gp = &gen.properties;
    let cp = &cur.properties;
    let common: Vec<(&Value, &Value, &String)> = gp
        .iter()
        .filter_map(|(k, g)| cp.get(k).map(|c| (g, c, k)))
        .collect();
    let mut out = BTreeMap::new();

    out.insert(
        Category::Arguments,
        Counts {
            reference: cp.len(),
            generated: gp.len(),
            matched: common.len(),
        },
    );
    out.insert(
        Category::Types,
        Counts {
            reference: prop_count(cp, |v| normalized_type(v).is_some()),
            generated: prop_count(gp, |v| normalized_type(v).is_some()),
            matched: common
                .iter()
                .filter(|(g, c, _)| {
                    normalized_type(g).is_some() && normalized_type(g) == normalized_type(c)
                })
                .count(),
        },
    );
    out.insert(
        Category::Defaults,
        Counts {
            reference: prop_count(cp, |v| v.get("default").is_some()),
            generated: prop_count(gp, |v| v.get("default").is_some()),
            matched: common
                .iter()
                .filter(|(g, c, _)| match (g.get("default"), c.get("default")) {
                    (Some(a), Some(b)) => values_equal(a, b),
                    _ => false,
                })
                .count(),
        },
    );
    out.insert(
        Category::Ranges,
        Counts {
            reference: prop_count(cp, |v| interval(v).is_some()),
            generated: prop_count(gp, |v| interval(v).is_some()),
            matched: common
                .iter()
                .filter(|(g, c, _)| match (interval(g), interval(c)) {
                    (Some(a), Some(b)) => interval_subset(a, b),
                    _ => false,
                })
                .count(),
        },
    );
    let dist = |v: &Value| {
        v.get("distribution")
            .and_then(Value::as_str)
            .map(str::to_string)
    };
    out.insert(
        Category::Distributions,
        Counts {
            reference: prop_count(cp, |v| dist(v).is_some()),
            generated: prop_count(gp, |v| dist(v).is_some()),
            matched: common
                .iter()
                .filter(|(g, c, _)| dist(g).is_some() && dist(g) == dist(c))
                .count(),
        },
    );

    let valid: Vec<String> = gen
        .constraints
        .iter()
        .filter(|c| !is_todo_constraint(c))
        .map(constraint_key)
        .collect();
    let reference: Vec<String> = cur
        .constraints
        .iter()
        .filter(|c| !is_todo_constraint(c))
        .map(constraint_key)
        .collect();
    out.insert(
        Category::Constraints,
        Counts {
            reference: reference.len(),
            generated: valid.len(),
            matched: multiset_match(&reference, &valid),
        },
    );

    let gather = |props: &IndexMap<String, Value>, f: fn(&str, &Value, &mut Vec<String>)| {
        let mut v = Vec::new();
        for (k, p) in props {
            f(k, p, &mut v);
        }
        v
    };
    let (gt, ct) = (gather(gp, terminal_types), gather(cp, terminal_types));
    out.insert(
        Category::TypeValues,
        Counts {
            reference: ct.len(),
            generated: gt.len(),
            matched: multiset_match(&ct, &gt),
        },
    );
    let (ge, ce) = (gather(gp, enum_members), gather(cp, enum_members));
    out.insert(
        Category::EnumValues,
        Counts {
            reference: ce.len(),
            generated: ge.len(),
            matched: multiset_match(&ce, &ge),
        },
    );
    (out, gen.constraints.len())
}

/// Per-class comparison of hyperparameter schemas.
pub fn compare(generated: &OperatorSchemas, curated: &OperatorSchemas) -> ClassRow {
    let (counts, detected) = compare_docs(&generated.hyperparams, &curated.hyperparams);
    ClassRow {
        class: generated.class.clone(),
        counts,
        detected_constraints: detected,
    }
}

/// Micro-averaged totals: counts are summed, then scored.
pub fn aggregate(rows: Vec<ClassRow>) -> EvalReport {
    let mut sums: BTreeMap<Category, Counts> = Category::ALL
        .iter()
        .map(|c| (*c, Counts::default()))
        .collect();
    let mut detected = 0;
    for r in &rows {
        for (c, n) in &r.counts {
            sums.get_mut(c).unwrap().add(*n);
        }
        detected += r.detected_constraints;
    }
    EvalReport {
        totals: sums.into_iter().map(|(c, n)| (c, n.score())).collect(),
        detected_constraints: detected,
        rows,
        ..Default::default()
    }
}

/// Pairs generated and curated schemas by class name and aggregates.
pub fn evaluate(generated: &[OperatorSchemas], curated: &[OperatorSchemas]) -> EvalReport {
    let rows = generated
        .iter()
        .filter_map(|g| {
            curated
                .iter()
                .find(|c| c.class == g.class)
                .map(|c| compare(g, c))
        })
        .collect();
    let mut report = aggregate(rows);
    report.unpaired_generated = generated
        .iter()
        .filter(|g| !curated.iter().any(|c| c.class == g.class))
        .map(|g| g.class.clone())
        .collect();
    report.unpaired_curated = curated
        .iter()
        .filter(|c| !generated.iter().any(|g| g.class == c.class))
        .map(|c| c.class.clone())
        .collect();
    report
}

fn attributed(
    raw: &[OperatorSchemas],
    refined: Option<&[OperatorSchemas]>,
    pred: impl Fn(&Value) -> bool,
) -> Attributed {
    let count = |set: &[OperatorSchemas]| -> usize {
        set.iter()
            .map(|s| prop_count(&s.hyperparams.properties, &pred))
            .sum()
    };
    let parser = count(raw);
    let refiner = refined
        .map(|r| count(r).saturating_sub(parser))
        .unwrap_or(0);
    Attributed { parser, refiner }
}

/// Coverage of mined schemas, attributing to the refiner whatever the
/// refined set has beyond the raw one.
pub fn coverage(raw: &[OperatorSchemas], refined: Option<&[OperatorSchemas]>) -> Coverage {
    let final_set = refined.unwrap_or(raw);
    let constraints: Vec<&Value> = final_set
        .iter()
        .flat_map(|s| s.hyperparams.constraints.iter())
        .collect();
    Coverage {
        classes: final_set.len(),
        arguments: final_set
            .iter()
            .map(|s| s.hyperparams.properties.len())
            .sum(),
        types: attributed(raw, refined, |v| normalized_type(v).is_some()),
        defaults: attributed(raw, refined, |v| v.get("default").is_some()),
        ranges: attributed(raw, refined, |v| interval(v).is_some()),
        distributions: attributed(raw, refined, |v| v.get("distribution").is_some()),
        constraints_valid: constraints
            .iter()
            .filter(|c| !is_todo_constraint(c))
            .count(),
        constraints_detected: constraints.len(),
    }
}

/// Plain-text per-category table of the totals.
pub fn render_table(report: &EvalReport) -> String {
    let mut s = String::new();
    if let Some(c) = &report.coverage {
        let pair = |a: Attributed| format!("{} ({} + {})", a.total(), a.parser, a.refiner);
        let _ = writeln!(
            s,
            "{:<10} {:>9} {:>16} {:>16} {:>16} {:>16} {:>11}",
            "classes", "arguments", "types", "defaults", "ranges", "distributions", "constraints"
        );
        let _ = writeln!(
            s,
            "{:<10} {:>9} {:>16} {:>16} {:>16} {:>16} {:>11}\n",
            c.classes,
            c.arguments,
            pair(c.types),
            pair(c.defaults),
            pair(c.ranges),
            pair(c.distributions),
            format!("{}/{}", c.constraints_valid, c.constraints_detected)
        );
    }
    let _ = writeln!(
        s,
        "{:<14} {:>9} {:>9} {:>7} {:>9} {:>7} {:>7}",
        "category", "reference", "generated", "match", "precision", "recall", "f1"
    );
    for (cat, sc) in &report.totals {
        let generated = if *cat == Category::Constraints {
            format!("{} (/{})", sc.generated, report.detected_constraints)
        } else {
            sc.generated.to_string()
        };
        let _ = writeln!(
            s,
            "{:<14} {:>9} {:>9} {:>7} {:>9.2} {:>7.2} {:>7.2}",
            cat.name(),
            sc.reference,
            generated,
            sc.matched,
            sc.precision,
            sc.recall,
            sc.f1
        );
    }
    for u in &report.unpaired_generated {
        let _ = writeln!(s, "unpaired generated: {u}");
    }
    for u in &report.unpaired_curated {
        let _ = writeln!(s, "unpaired curated: {u}");
    }
    s
}
