//! Mining one class: docstring entries, types, constraints, assembly.

use crate::cnl::{
    flag_candidates, mine_constraint, ConstraintOutcome, ConstraintResult, TriggerSet,
};
use crate::diagnostics::{Diagnostic, DiagnosticKind};
use crate::numpydoc::{find_section, parse_parameters, split_sections, ArgDoc, SectionKind};
use crate::schema::{assemble, build_properties, io_fragments, ArgOutcome, OperatorSchemas};
use crate::source::{scan_source, ClassDoc, SourceFile};

#[derive(Debug, Clone, Default)]
pub struct MineOptions {
    pub triggers: TriggerSet,
}

#[derive(Debug, Clone)]
pub struct MinedClass {
    pub schemas: OperatorSchemas,
    pub args: Vec<ArgOutcome>,
    pub constraints: Vec<ConstraintResult>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Parameter entries documenting the constructor: the class docstring's
/// Parameters section, else the one in `__init__`.
fn hyperparam_entries(class: &ClassDoc, diags: &mut Vec<Diagnostic>) -> Vec<ArgDoc> {
    let docs = [
        class.class_docstring.as_deref(),
        class.method_doc("__init__"),
    ];
    for doc in docs.into_iter().flatten() {
        let sections = split_sections(doc);
        if let Some(s) = find_section(&sections, SectionKind::Parameters) {
            let parsed = parse_parameters(s);
            for e in parsed.errors {
                diags.push(Diagnostic::new(
                    &class.class_name,
                    None,
                    DiagnosticKind::MalformedEntry,
                    e.to_string(),
                ));
            }
            return parsed.args;
        }
    }
    Vec::new()
}

pub fn mine_class(class: &ClassDoc, opts: &MineOptions) -> MinedClass {
    let name = class.class_name.as_str();
    let mut diags = Vec::new();
    for note in &class.notes {
        diags.push(Diagnostic::new(
            name,
            None,
            DiagnosticKind::SkippedParameter,
            note.clone(),
        ));
    }
    let entries = hyperparam_entries(class, &mut diags);

    let args: Vec<ArgOutcome> = if class.has_init {
        for e in &entries {
            if !class.ctor_defaults.contains_key(&e.name) {
                diags.push(Diagnostic::new(
                    name,
                    Some(&e.name),
                    DiagnosticKind::NotInSignature,
                    "documented argument is not a constructor parameter",
                ));
            }
        }
        class
            .ctor_defaults
            .iter()
            .map(|(arg, default)| {
                let doc = entries.iter().find(|e| &e.name == arg).cloned();
                ArgOutcome::new(arg, doc, default.clone())
            })
            .collect()
    } else {
        entries
            .iter()
            .map(|e| ArgOutcome::new(&e.name, Some(e.clone()), None))
            .collect()
    };

    let properties = build_properties(name, &args, &mut diags);
    let mut constraints = Vec::new();
    for a in &args {
        let Some(doc) = &a.doc else { continue };
        for cand in flag_candidates(doc, &opts.triggers) {
            let r = mine_constraint(cand, &properties);
            if let ConstraintOutcome::Todo { reason } = &r.outcome {
                diags.push(Diagnostic::new(
                    name,
                    Some(&a.name),
                    DiagnosticKind::Todo,
                    format!("{reason}: {}", r.candidate.text),
                ));
            }
            constraints.push(r);
        }
    }
    let io = io_fragments(class, &mut diags);
    let schemas = assemble(class, &properties, &constraints, io, &mut diags);
    MinedClass {
        schemas,
        args,
        constraints,
        diagnostics: diags,
    }
}

/// Scans a file and mines every class in it. Scan errors come back as
/// `MalformedSource` diagnostics.
pub fn mine_source(src: &SourceFile, opts: &MineOptions) -> (Vec<MinedClass>, Vec<Diagnostic>) {
    let scan = scan_source(src);
    let errors = scan
        .errors
        .iter()
        .map(|e| {
            Diagnostic::new(
                e.class_name.as_deref().unwrap_or(""),
                None,
                DiagnosticKind::MalformedSource,
                e.to_string(),
            )
        })
        .collect();
    let mined = scan.classes.iter().map(|c| mine_class(c, opts)).collect();
    (mined, errors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    const LOGISTIC: &str = include_str!("../../../fixtures/sklearn/linear_model/logistic.py");

    #[test]
    fn logistic_raw_schema() {
        let (mined, errors) = mine_source(
            &SourceFile::new("logistic.py", LOGISTIC),
            &MineOptions::default(),
        );
        assert!(errors.is_empty());
        let m = &mined[0];
        let hp = m.schemas.hyperparams.to_json();
        assert_eq!(
            hp,
            json!({
                "$schema": "http://json-schema.org/draft-04/schema#",
                "allOf": [
                    {
                        "type": "object",
                        "additionalProperties": false,
                        "required": ["solver", "penalty", "C"],
                        "relevantToOptimizer": ["solver", "penalty", "C"],
                        "properties": {
                            "solver": {"description": "Algorithm for optimization.", "enum": ["linear", "sag", "lbfgs"], "default": "linear"},
                            "penalty": {"description": "Norm used in the penalization.", "enum": ["l1", "l2"], "default": "l2"},
                            "C": {"description": "Inverse regularization strength.", "type": "number", "default": 1.0}
                        }
                    },
                    {
                        "description": "Solvers sag and lbfgs support only l2.",
                        "anyOf": [
                            {"type": "object", "properties": {"solver": {"not": {"enum": ["sag", "lbfgs"]}}}},
                            {"type": "object", "properties": {"penalty": {"enum": ["l2"]}}}
                        ]
                    }
                ]
            })
        );
        assert_eq!(m.constraints.len(), 2);
        assert!(m.constraints.iter().all(ConstraintResult::is_lowered));
        assert_eq!(m.schemas.signature_defaults["solver"], json!("warn"));
    }

    #[test]
    fn class_without_init_uses_doc_order() {
        let src = "class A:\n    \"\"\"A.\n\n    Parameters\n    ----------\n    b : int\n    a : float\n    \"\"\"\n";
        let (mined, _) = mine_source(&SourceFile::new("a.py", src), &MineOptions::default());
        let names: Vec<_> = mined[0]
            .schemas
            .hyperparams
            .properties
            .keys()
            .cloned()
            .collect();
        assert_eq!(names, ["b", "a"]);
    }

    #[test]
    fn init_docstring_and_io_sections() {
        let src = r#"
class Scaler:
    def __init__(self, copy=True):
        """Scale.

        Parameters
        ----------
        copy : boolean, optional, default True
            Set to False to perform inplace scaling.
        extra : int
            Not a parameter.
        """

    def fit(self, X, y=None):
        """Fit.

        Parameters
        ----------
        X : array-like, shape [n_samples, n_features]
            The data.
        y : Ignored

        Returns
        -------
        self : object
        """

    def transform(self, X):
        """Parameters
        ----------
        X : array-like, shape [n_samples, n_features]

        Returns
        -------
        X_tr : array-like, shape [n_samples, n_features]
        """
"#;
        let (mined, _) = mine_source(&SourceFile::new("s.py", src), &MineOptions::default());
        let m = &mined[0];
        assert_eq!(
            m.schemas.hyperparams.properties["copy"],
            json!({"description": "Set to False to perform inplace scaling.", "type": "boolean", "default": true})
        );
        assert!(m
            .diagnostics
            .iter()
            .any(|d| d.kind == DiagnosticKind::NotInSignature));
        assert_eq!(m.schemas.fit_input["required"], json!(["X", "y"]));
        assert_eq!(
            m.schemas.fit_input["properties"]["X"]["laleArray"]["shape"],
            json!([["n_samples", "n_features"]])
        );
        assert_eq!(m.schemas.output["type"], json!("array"));
    }
}
