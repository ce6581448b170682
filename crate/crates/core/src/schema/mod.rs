//! Schema documents, their serialized form and assembly.

pub mod assemble;
pub mod validate;

use indexmap::IndexMap;
use serde_json::{Map, Value};
use thiserror::Error;

pub use assemble::{assemble, build_properties, io_fragments, ArgOutcome, ArgParse, IoFragments};
pub use validate::is_valid;

pub const DRAFT04: &str = "http://json-schema.org/draft-04/schema#";

/// Serialization order of schema keywords; unlisted keys follow in their
/// existing order.
pub const KEY_ORDER: [&str; 24] = [
    "$schema",
    "description",
    "type",
    "additionalProperties",
    "required",
    "relevantToOptimizer",
    "laleType",
    "laleArray",
    "enum",
    "not",
    "anyOf",
    "allOf",
    "items",
    "properties",
    "distribution",
    "minimum",
    "exclusiveMinimum",
    "maximum",
    "exclusiveMaximum",
    "default",
    "minimumForOptimizer",
    "maximumForOptimizer",
    "atype",
    "shape",
];

/// Recursively reorders schema keywords to [`KEY_ORDER`]. Property-name maps
/// keep their order.
pub fn canonicalize(v: &Value) -> Value {
    canon(v, false)
}

fn canon(v: &Value, names: bool) -> Value {
    match v {
        Value::Array(a) => Value::Array(a.iter().map(|x| canon(x, false)).collect()),
        Value::Object(m) if names => Value::Object(
            m.iter()
                .map(|(k, x)| (k.clone(), canon(x, false)))
                .collect(),
        ),
        Value::Object(m) => {
            let mut out = Map::new();
            let child = |k: &str, x: &Value| canon(x, k == "properties");
            for k in KEY_ORDER {
                if let Some(x) = m.get(k) {
                    out.insert(k.to_string(), child(k, x));
                }
            }
            for (k, x) in m {
                if !out.contains_key(k) {
                    out.insert(k.clone(), child(k, x));
                }
            }
            Value::Object(out)
        }
        other => other.clone(),
    }
}

#[derive(Debug, Error)]
pub enum SchemaLoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Shape(String),
}

/// Hyperparameter schema: a main object schema plus constraint fragments.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SchemaDoc {
    pub required: Vec<String>,
    pub relevant_to_optimizer: Vec<String>,
    pub properties: IndexMap<String, Value>,
    pub constraints: Vec<Value>,
}

fn string_list(v: Option<&Value>) -> Vec<String> {
    v.and_then(Value::as_array)
        .map(|a| {
            a.iter()
                .filter_map(|s| s.as_str().map(str::to_string))
                .collect()
        })
        .unwrap_or_default()
}

impl SchemaDoc {
    pub fn to_json(&self) -> Value {
        let mut main = Map::new();
        main.insert("type".into(), "object".into());
        main.insert("additionalProperties".into(), false.into());
        if !self.required.is_empty() {
            main.insert("required".into(), self.required.clone().into());
        }
        main.insert(
            "relevantToOptimizer".into(),
            self.relevant_to_optimizer.clone().into(),
        );
        main.insert(
            "properties".into(),
            Value::Object(
                self.properties
                    .iter()
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .collect(),
            ),
        );
        let mut all_of = vec![Value::Object(main)];
        all_of.extend(self.constraints.iter().cloned());
        let mut doc = Map::new();
        doc.insert("$schema".into(), DRAFT04.into());
        doc.insert("allOf".into(), Value::Array(all_of));
        canonicalize(&Value::Object(doc))
    }

    /// Reads the `allOf`-shaped document; a bare object schema with
    /// `properties` is accepted as a document without constraints.
    pub fn from_json(v: &Value) -> Result<Self, SchemaLoadError> {
        let obj = v
            .as_object()
            .ok_or_else(|| SchemaLoadError::Shape("schema is not an object".into()))?;
        let (main, constraints) = match obj.get("allOf").and_then(Value::as_array) {
            Some(all) if !all.is_empty() => (&all[0], all[1..].to_vec()),
            _ => (v, Vec::new()),
        };
        let props = main
            .get("properties")
            .and_then(Value::as_object)
            .ok_or_else(|| {
                SchemaLoadError::Shape("main schema has no `properties` object".into())
            })?;
        let properties: IndexMap<String, Value> =
            props.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        let relevant = match main.get("relevantToOptimizer") {
            Some(r) => string_list(Some(r)),
            None => properties.keys().cloned().collect(),
        };
        Ok(SchemaDoc {
            required: string_list(main.get("required")),
            relevant_to_optimizer: relevant,
            properties,
            constraints,
        })
    }
}

/// Everything mined for one operator class.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OperatorSchemas {
    pub class: String,
    pub hyperparams: SchemaDoc,
    pub fit_input: Value,
    pub predict_or_transform_input: Value,
    pub output: Value,
    /// Constructor defaults as written in the signature, JSON-encoded where
    /// representable.
    pub signature_defaults: IndexMap<String, Value>,
}

impl OperatorSchemas {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("class".into(), self.class.clone().into());
        m.insert("hyperparams".into(), self.hyperparams.to_json());
        m.insert("fit_input".into(), canonicalize(&self.fit_input));
        m.insert(
            "predict_or_transform_input".into(),
            canonicalize(&self.predict_or_transform_input),
        );
        m.insert("output".into(), canonicalize(&self.output));
        m.insert(
            "signature_defaults".into(),
            Value::Object(
                self.signature_defaults
                    .iter()
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .collect(),
            ),
        );
        Value::Object(m)
    }

    /// Pretty JSON with 2-space indent and a trailing newline.
    pub fn to_pretty_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize");
        s.push('\n');
        s
    }

    /// Reads an operator file. A file holding only a hyperparameter schema is
    /// accepted too, with `fallback_class` as its class name.
    pub fn from_json(v: &Value, fallback_class: &str) -> Result<Self, SchemaLoadError> {
        let Some(hp) = v.get("hyperparams") else {
            return Ok(OperatorSchemas {
                class: fallback_class.to_string(),
                hyperparams: SchemaDoc::from_json(v)?,
                ..Default::default()
            });
        };
        let empty = Value::Object(Map::new());
        let part = |k: &str| v.get(k).cloned().unwrap_or_else(|| empty.clone());
        Ok(OperatorSchemas {
            class: v
                .get("class")
                .and_then(Value::as_str)
                .unwrap_or(fallback_class)
                .to_string(),
            hyperparams: SchemaDoc::from_json(hp)?,
            fit_input: part("fit_input"),
            predict_or_transform_input: part("predict_or_transform_input"),
            output: part("output"),
            signature_defaults: v
                .get("signature_defaults")
                .and_then(Value::as_object)
                .map(|m| m.iter().map(|(k, v)| (k.clone(), v.clone())).collect())
                .unwrap_or_default(),
        })
    }

    pub fn load(path: &std::path::Path) -> Result<Self, SchemaLoadError> {
        let p = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| SchemaLoadError::Io {
            path: p.clone(),
            source,
        })?;
        let v: Value = serde_json::from_str(&text).map_err(|source| SchemaLoadError::Json {
            path: p.clone(),
            source,
        })?;
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or_default();
        Self::from_json(&v, stem).map_err(|e| match e {
            SchemaLoadError::Shape(m) => SchemaLoadError::Shape(format!("{p}: {m}")),
            other => other,
        })
    }
}
