//! Mining JSON Schema hyperparameter specifications from the numpydoc
//! docstrings of Python machine-learning operators.

pub mod cnl;
pub mod config;
pub mod diagnostics;
pub mod eval;
pub mod literal;
pub mod numpydoc;
pub mod pipeline;
pub mod plan;
pub mod refine;
pub mod schema;
pub mod source;
pub mod text;

pub use config::{Config, ConfigError};
pub use diagnostics::{Diagnostic, DiagnosticKind};
pub use eval::{
    aggregate, compare, coverage, evaluate, render_table, Category, ClassRow, Counts, Coverage,
    EvalReport, Score,
};
pub use literal::{Literal, LiteralKind, LiteralValue};
pub use numpydoc::{
    find_section, parse_parameters, split_sections, ArgDoc, MalformedEntry, ParsedEntries, Section,
    SectionKind,
};
pub use pipeline::{mine_class, mine_source, MineOptions, MinedClass};
pub use plan::{greedy_pool, make_plan, module_path, ProbePlan};
pub use refine::{refine, ObservationSet, Overrides, RefineOptions, RefineReport};
pub use schema::{OperatorSchemas, SchemaDoc, SchemaLoadError, DRAFT04};
pub use source::{
    parse_ctor_signature, scan_source, ClassDoc, CtorDefaults, MalformedKind, MalformedSignature,
    MalformedSource, ScanOutput, Signature, SourceFile,
};
