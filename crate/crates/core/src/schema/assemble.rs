//! Building per-argument property schemas and the operator document.

use indexmap::IndexMap;
use serde_json::{json, Map, Value};

use super::{is_valid, OperatorSchemas, SchemaDoc};
use crate::cnl::types::json_equal;
use crate::cnl::{
    lower_type_expr, parse_type_text, ConstraintResult, ParamInfo, ParseFailure, ParsedShortDesc,
};
use crate::diagnostics::{Diagnostic, DiagnosticKind};
use crate::literal::{Literal, LiteralValue};
use crate::numpydoc::{find_section, parse_parameters, split_sections, ArgDoc, SectionKind};
use crate::source::ClassDoc;
use crate::text::first_sentence;

#[derive(Debug, Clone, PartialEq)]
pub enum ArgParse {
    Parsed(ParsedShortDesc),
    Failed(ParseFailure),
    Undocumented,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArgOutcome {
    pub name: String,
    pub doc: Option<ArgDoc>,
    pub parse: ArgParse,
    /// The constructor default, when the signature gives one.
    pub signature_default: Option<Literal>,
}

impl ArgOutcome {
    /// Parses the documented short description, if any.
    pub fn new(name: &str, doc: Option<ArgDoc>, signature_default: Option<Literal>) -> Self {
        let parse = match &doc {
            Some(d) => match parse_type_text(&d.short_desc) {
                Ok(p) => ArgParse::Parsed(p),
                Err(e) => ArgParse::Failed(e),
            },
            None => ArgParse::Undocumented,
        };
        ArgOutcome {
            name: name.to_string(),
            doc,
            parse,
            signature_default,
        }
    }
}

fn default_json(
    class: &str,
    arg: &str,
    lit: &Literal,
    diags: &mut Vec<Diagnostic>,
) -> Option<Value> {
    if lit.is_non_representable() {
        diags.push(Diagnostic::new(
            class,
            Some(arg),
            DiagnosticKind::NonRepresentableDefault,
            format!("default {} has no JSON form; written as null", lit.render()),
        ));
    }
    lit.to_json()
}

/// Property schema for one argument, plus the default it carries.
fn property(class: &str, a: &ArgOutcome, diags: &mut Vec<Diagnostic>) -> ParamInfo {
    let mut frag = Map::new();
    if let Some(d) = a.doc.as_ref().and_then(|d| first_sentence(&d.long_desc)) {
        frag.insert("description".into(), d.into());
    }
    let doc_default = match &a.parse {
        ArgParse::Parsed(p) => {
            if p.types.mentions_ignored() {
                diags.push(Diagnostic::new(
                    class,
                    Some(&a.name),
                    DiagnosticKind::IgnoredType,
                    "type `Ignored` lowered to null",
                ));
            }
            if let Value::Object(t) = lower_type_expr(&p.types) {
                frag.extend(t);
            }
            p.default.clone()
        }
        ArgParse::Failed(e) => {
            let short = a
                .doc
                .as_ref()
                .map(|d| d.short_desc.as_str())
                .unwrap_or_default();
            diags.push(Diagnostic::new(
                class,
                Some(&a.name),
                DiagnosticKind::ParseFailure,
                format!("{e} in `{short}`"),
            ));
            e.recovered_default.clone()
        }
        ArgParse::Undocumented => {
            diags.push(Diagnostic::new(
                class,
                Some(&a.name),
                DiagnosticKind::Undocumented,
                "argument has no docstring entry",
            ));
            None
        }
    };
    let type_part = Value::Object(frag.clone());

    let sig = a
        .signature_default
        .as_ref()
        .filter(|l| l.value != LiteralValue::Other);
    let chosen = doc_default.as_ref().or(sig);
    if let (Some(d), Some(s)) = (&doc_default, sig) {
        let same = match (d.to_json(), s.to_json()) {
            (Some(x), Some(y)) => {
                json_equal(&x, &y) && d.is_non_representable() == s.is_non_representable()
            }
            _ => false,
        };
        if !same {
            diags.push(Diagnostic::new(
                class,
                Some(&a.name),
                DiagnosticKind::DefaultMismatch,
                format!(
                    "docstring default {} differs from signature default {}",
                    d.render(),
                    s.render()
                ),
            ));
        }
    }
    let default = chosen.and_then(|l| default_json(class, &a.name, l, diags));
    if let Some(d) = &default {
        if !is_valid(d, &type_part) {
            diags.push(Diagnostic::new(
                class,
                Some(&a.name),
                DiagnosticKind::DefaultMismatch,
                format!("default {d} does not validate against the documented type"),
            ));
        }
        frag.insert("default".into(), d.clone());
    }
    ParamInfo {
        fragment: Value::Object(frag),
        default,
    }
}

/// Property schemas in argument order.
pub fn build_properties(
    class: &str,
    args: &[ArgOutcome],
    diags: &mut Vec<Diagnostic>,
) -> IndexMap<String, ParamInfo> {
    args.iter()
        .map(|a| (a.name.clone(), property(class, a, diags)))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct IoFragments {
    pub fit_input: Value,
    pub predict_or_transform_input: Value,
    pub output: Value,
}

fn method_entries(
    class: &str,
    method: &str,
    doc: &str,
    kind: SectionKind,
    diags: &mut Vec<Diagnostic>,
) -> Option<Vec<ArgDoc>> {
    let sections = split_sections(doc);
    let section = find_section(&sections, kind)?;
    let parsed = parse_parameters(section);
    for e in parsed.errors {
        diags.push(Diagnostic::new(
            class,
            Some(method),
            DiagnosticKind::MalformedEntry,
            e.to_string(),
        ));
    }
    Some(parsed.args)
}

fn entry_fragment(
    class: &str,
    qualified: &str,
    d: &ArgDoc,
    diags: &mut Vec<Diagnostic>,
) -> (Value, bool) {
    let a = ArgOutcome::new(qualified, Some(d.clone()), None);
    let optional = match &a.parse {
        ArgParse::Parsed(p) => p.optional_flag || p.default.is_some(),
        _ => false,
    };
    (property(class, &a, diags).fragment, optional)
}

fn inputs(class: &str, method: &str, doc: Option<&str>, diags: &mut Vec<Diagnostic>) -> Value {
    let Some(args) =
        doc.and_then(|d| method_entries(class, method, d, SectionKind::Parameters, diags))
    else {
        return json!({});
    };
    let mut props = Map::new();
    let mut required = Vec::new();
    for d in &args {
        let (frag, optional) = entry_fragment(class, &format!("{method}.{}", d.name), d, diags);
        if !optional {
            required.push(Value::String(d.name.clone()));
        }
        props.insert(d.name.clone(), frag);
    }
    let mut out = Map::new();
    out.insert("type".into(), "object".into());
    if !required.is_empty() {
        out.insert("required".into(), Value::Array(required));
    }
    out.insert("properties".into(), Value::Object(props));
    Value::Object(out)
}

fn returns(class: &str, method: &str, doc: Option<&str>, diags: &mut Vec<Diagnostic>) -> Value {
    let Some(args) =
        doc.and_then(|d| method_entries(class, method, d, SectionKind::Returns, diags))
    else {
        return json!({});
    };
    let mut frags: Vec<Value> = args
        .iter()
        .map(|d| entry_fragment(class, &format!("{method}.{}", d.name), d, diags).0)
        .collect();
    match frags.len() {
        0 => json!({}),
        1 => frags.pop().unwrap(),
        _ => json!({"type": "array", "items": frags}),
    }
}

/// Input and output fragments from the `fit`, `predict` and `transform` docstrings.
pub fn io_fragments(class: &ClassDoc, diags: &mut Vec<Diagnostic>) -> IoFragments {
    let name = &class.class_name;
    let method = if class.has_method("predict") {
        "predict"
    } else {
        "transform"
    };
    IoFragments {
        fit_input: inputs(name, "fit", class.method_doc("fit"), diags),
        predict_or_transform_input: inputs(name, method, class.method_doc(method), diags),
        output: returns(name, method, class.method_doc(method), diags),
    }
}

fn same_constraint(a: &Value, b: &Value) -> bool {
    let strip = |v: &Value| {
        let mut v = v.clone();
        if let Value::Object(m) = &mut v {
            m.remove("description");
        }
        v
    };
    json_equal(&strip(a), &strip(b))
}

/// Assembles the operator document. Lowered constraints that repeat an
/// earlier one (ignoring the description) are dropped with a diagnostic.
pub fn assemble(
    class: &ClassDoc,
    properties: &IndexMap<String, ParamInfo>,
    constraints: &[ConstraintResult],
    io: IoFragments,
    diags: &mut Vec<Diagnostic>,
) -> OperatorSchemas {
    let names: Vec<String> = properties.keys().cloned().collect();
    let mut kept: Vec<Value> = Vec::new();
    for c in constraints {
        let frag = c.fragment();
        if c.is_lowered() && kept.iter().any(|k| same_constraint(k, &frag)) {
            diags.push(Diagnostic::new(
                &class.class_name,
                Some(&c.candidate.owner_arg),
                DiagnosticKind::DuplicateConstraint,
                format!("`{}` repeats an earlier constraint", c.candidate.text),
            ));
            continue;
        }
        kept.push(frag);
    }
    let signature_defaults = class
        .ctor_defaults
        .iter()
        .filter_map(|(k, v)| Some((k.clone(), v.as_ref()?.to_json()?)))
        .collect();
    OperatorSchemas {
        class: class.class_name.clone(),
        hyperparams: SchemaDoc {
            required: names.clone(),
            relevant_to_optimizer: names,
            properties: properties
                .iter()
                .map(|(k, p)| (k.clone(), p.fragment.clone()))
                .collect(),
            constraints: kept,
        },
        fit_input: io.fit_input,
        predict_or_transform_input: io.predict_or_transform_input,
        output: io.output,
        signature_defaults,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(name: &str, short: &str, long: &str) -> Option<ArgDoc> {
        Some(ArgDoc {
            name: name.into(),
            short_desc: short.into(),
            long_desc: long.into(),
        })
    }

    #[test]
    fn failed_parse_keeps_description_and_recovered_default() {
        let mut diags = Vec::new();
        let a = ArgOutcome::new(
            "categories",
            doc(
                "categories",
                "'auto' or a list of lists/arrays of values, default='auto'.",
                "Categories per feature.",
            ),
            Some(Literal::str("auto")),
        );
        let p = build_properties("OneHotEncoder", &[a], &mut diags);
        assert_eq!(
            p["categories"].fragment,
            json!({"description": "Categories per feature.", "default": "auto"})
        );
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].kind, DiagnosticKind::ParseFailure);
    }

    #[test]
    fn default_mismatches() {
        let mut diags = Vec::new();
        let a = ArgOutcome::new(
            "solver",
            doc(
                "solver",
                "str, {'linear', 'sag'}, optional (default='linear').",
                "Algorithm.",
            ),
            Some(Literal::str("warn")),
        );
        let b = ArgOutcome::new(
            "categories",
            doc("categories", "str, default=None", ""),
            None,
        );
        let p = build_properties("X", &[a, b], &mut diags);
        assert_eq!(p["solver"].default, Some(json!("linear")));
        let kinds: Vec<_> = diags.iter().map(|d| d.kind).collect();
        assert_eq!(
            kinds,
            [
                DiagnosticKind::DefaultMismatch,
                DiagnosticKind::DefaultMismatch
            ]
        );
        assert!(diags[1].message.contains("does not validate"));
    }

    #[test]
    fn nan_default_becomes_null() {
        let mut diags = Vec::new();
        let a = ArgOutcome::new("missing", doc("missing", "float, default=np.nan", ""), None);
        let p = build_properties("X", &[a], &mut diags);
        assert_eq!(p["missing"].fragment["default"], Value::Null);
        assert!(diags
            .iter()
            .any(|d| d.kind == DiagnosticKind::NonRepresentableDefault));
    }

    #[test]
    fn undocumented_and_ignored() {
        let mut diags = Vec::new();
        let a = ArgOutcome::new("tol", None, Some(Literal::decode("1e-4")));
        let b = ArgOutcome::new("y", doc("y", "Ignored", ""), None);
        let p = build_properties("X", &[a, b], &mut diags);
        assert_eq!(p["tol"].fragment, json!({"default": 0.0001}));
        assert_eq!(p["y"].fragment, json!({"enum": [null]}));
        let kinds: Vec<_> = diags.iter().map(|d| d.kind).collect();
        assert_eq!(
            kinds,
            [DiagnosticKind::Undocumented, DiagnosticKind::IgnoredType]
        );
    }
}
