//! Command implementations behind the `docmine` binary.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use docmine_core::diagnostics::DiagnosticKind;
use docmine_core::refine::InputError;
use docmine_core::{
    coverage, evaluate, greedy_pool, make_plan, mine_source, module_path, refine, render_table,
    Config, ConfigError, Diagnostic, EvalReport, ObservationSet, OperatorSchemas, Overrides,
    SchemaLoadError, SourceFile,
};
use serde::Serialize;
use walkdir::WalkDir;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Schema(#[from] SchemaLoadError),
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io(path.to_path_buf(), e)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    fs::write(path, text).map_err(io_err(path))
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Json,
    #[default]
    Table,
}

/// Python files under the inputs, each with the root its module path is
/// taken relative to. Sorted, so runs are reproducible.
fn python_files(inputs: &[PathBuf]) -> Result<Vec<(PathBuf, PathBuf)>, CliError> {
    let mut out = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let root = input.parent().unwrap_or(Path::new("")).to_path_buf();
            for entry in WalkDir::new(input).sort_by_file_name() {
                let entry = entry.map_err(|e| {
                    let path = e.path().unwrap_or(input).to_path_buf();
                    CliError::Io(path, e.into())
                })?;
                if entry.file_type().is_file()
                    && entry.path().extension().is_some_and(|x| x == "py")
                {
                    out.push((root.clone(), entry.into_path()));
                }
            }
        } else if input.is_file() {
            out.push((
                input.parent().unwrap_or(Path::new("")).to_path_buf(),
                input.clone(),
            ));
        } else {
            return Err(CliError::Usage(format!(
                "no such input: {}",
                input.display()
            )));
        }
    }
    Ok(out)
}

/// Where every class found in the inputs ended up.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct MineSummary {
    pub written: Vec<String>,
    pub excluded: Vec<String>,
    pub malformed: Vec<String>,
    #[serde(skip)]
    pub diagnostics: Vec<Diagnostic>,
}

/// Mines the inputs into `<out>/<Class>.json`, with `diagnostics.json`,
/// `classes.json` and one probe plan per class under `plans/`.
pub fn cmd_mine(
    inputs: &[PathBuf],
    cfg: &Config,
    out: &Path,
    write_schemas: bool,
) -> Result<MineSummary, CliError> {
    if inputs.is_empty() {
        return Err(CliError::Usage("no input paths".into()));
    }
    let opts = cfg.mine_options();
    let mut summary = MineSummary::default();
    let mut mined = Vec::new();
    let mut seen = BTreeSet::new();
    for (root, path) in python_files(inputs)? {
        log::info!("mining {}", path.display());
        let bytes = fs::read(&path).map_err(io_err(&path))?;
        let text = String::from_utf8_lossy(&bytes);
        let (classes, errors) = mine_source(&SourceFile::new(&path, text.as_ref()), &opts);
        for e in errors {
            if !e.class.is_empty() {
                summary.malformed.push(e.class.clone());
            }
            summary.diagnostics.push(e);
        }
        let module = module_path(&root, &path, cfg.module_prefix.as_deref());
        for m in classes {
            let class = m.schemas.class.clone();
            if !cfg.includes(&class) {
                summary.excluded.push(class);
                continue;
            }
            if !seen.insert(class.clone()) {
                summary.diagnostics.push(Diagnostic::new(
                    &class,
                    None,
                    DiagnosticKind::Conflict,
                    format!(
                        "class defined again in {}; first definition kept",
                        path.display()
                    ),
                ));
                summary.excluded.push(class);
                continue;
            }
            summary.diagnostics.extend(m.diagnostics);
            mined.push((format!("{module}.{class}"), m.schemas));
        }
    }
    let all: Vec<OperatorSchemas> = mined.iter().map(|(_, s)| s.clone()).collect();
    let pool = greedy_pool(&all);
    for (class_path, s) in &mined {
        if write_schemas {
            write_file(
                &out.join(format!("{}.json", s.class)),
                &s.to_pretty_string(),
            )?;
        }
        let plan = make_plan(s, class_path, &pool, 0);
        write_file(
            &out.join("plans").join(format!("{}.json", s.class)),
            &to_pretty(&plan),
        )?;
        summary.written.push(s.class.clone());
    }
    if write_schemas {
        write_file(
            &out.join("diagnostics.json"),
            &to_pretty(&summary.diagnostics),
        )?;
        write_file(&out.join("classes.json"), &to_pretty(&summary))?;
    }
    Ok(summary)
}

/// Schema files in a directory, sorted by name. Non-schema JSON such as
/// `diagnostics.json` is skipped.
pub fn load_schema_dir(dir: &Path) -> Result<Vec<OperatorSchemas>, CliError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err(dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .filter(|p| {
            let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or("");
            !["diagnostics", "classes", "refine_report", "report"].contains(&stem)
        })
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| OperatorSchemas::load(p).map_err(CliError::from))
        .collect()
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct RefineSummary {
    pub refined: Vec<String>,
    pub without_observations: Vec<String>,
    pub conflicts: Vec<docmine_core::refine::ConflictReport>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Refines every schema in `raw_dir`, reading `<obs_dir>/<Class>.json`
/// when present.
pub fn cmd_refine(
    raw_dir: &Path,
    obs_dir: Option<&Path>,
    overrides: Option<&Path>,
    cfg: &Config,
    out: &Path,
) -> Result<RefineSummary, CliError> {
    let ov = match overrides {
        Some(p) => Overrides::load(p)?,
        None => Overrides::default(),
    };
    let mut summary = RefineSummary::default();
    for raw in load_schema_dir(raw_dir)? {
        let obs_path = obs_dir.map(|d| d.join(format!("{}.json", raw.class)));
        let obs = match obs_path.filter(|p| p.is_file()) {
            Some(p) => Some(ObservationSet::load(&p)?),
            None => {
                summary.without_observations.push(raw.class.clone());
                None
            }
        };
        let (refined, report) = refine(&raw, obs.as_ref(), &ov, &cfg.refine);
        write_file(
            &out.join(format!("{}.json", refined.class)),
            &refined.to_pretty_string(),
        )?;
        summary.refined.push(refined.class);
        summary.conflicts.extend(report.conflicts);
        summary.diagnostics.extend(report.diagnostics);
    }
    write_file(&out.join("refine_report.json"), &to_pretty(&summary))?;
    Ok(summary)
}

/// Compares `generated` against `curated`. With `raw`, coverage is split
/// between what the parser found and what refinement added.
pub fn cmd_eval(
    generated: &Path,
    curated: &Path,
    raw: Option<&Path>,
) -> Result<EvalReport, CliError> {
    let cur = load_schema_dir(curated)?;
    if cur.is_empty() {
        return Err(CliError::Usage(format!(
            "no curated schemas in {}",
            curated.display()
        )));
    }
    let gen = load_schema_dir(generated)?;
    let mut report = evaluate(&gen, &cur);
    report.coverage = Some(match raw {
        Some(dir) => coverage(&load_schema_dir(dir)?, Some(&gen)),
        None => coverage(&gen, None),
    });
    Ok(report)
}

pub fn render_eval(report: &EvalReport, format: Format) -> String {
    match format {
        Format::Json => to_pretty(report),
        Format::Table => render_table(report),
    }
}

pub fn render_mine(summary: &MineSummary, format: Format) -> String {
    match format {
        Format::Json => to_pretty(summary),
        Format::Table => {
            let mut s = format!(
                "written {}  excluded {}  malformed {}  diagnostics {}\n",
                summary.written.len(),
                summary.excluded.len(),
                summary.malformed.len(),
                summary.diagnostics.len()
            );
            for k in [
                DiagnosticKind::ParseFailure,
                DiagnosticKind::Todo,
                DiagnosticKind::DefaultMismatch,
            ] {
                let n = docmine_core::diagnostics::count(&summary.diagnostics, k);
                s.push_str(&format!(
                    "  {}: {n}\n",
                    serde_json::to_value(k).unwrap().as_str().unwrap_or("")
                ));
            }
            s
        }
    }
}

pub fn render_refine(summary: &RefineSummary, format: Format) -> String {
    match format {
        Format::Json => to_pretty(summary),
        Format::Table => format!(
            "refined {}  without observations {}  conflicts {}  diagnostics {}\n",
            summary.refined.len(),
            summary.without_observations.len(),
            summary.conflicts.len(),
            summary.diagnostics.len()
        ),
    }
}

/// Exit status for `mine`: 0 if any schema was written, 2 if none.
pub fn mine_exit_code(summary: &MineSummary) -> i32 {
    if summary.written.is_empty() {
        2
    } else {
        0
    }
}
