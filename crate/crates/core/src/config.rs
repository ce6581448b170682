//! Run configuration, read from TOML.

use std::path::{Path, PathBuf};

use glob::Pattern;
use serde::Deserialize;

use crate::cnl::TriggerSet;
use crate::pipeline::MineOptions;
use crate::refine::RefineOptions;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Toml {
        path: PathBuf,
        source: toml::de::Error,
    },
    #[error("bad class glob {pattern:?}: {source}")]
    Glob {
        pattern: String,
        source: glob::PatternError,
    },
    #[error("bad trigger pattern {pattern:?}: {source}")]
    Trigger {
        pattern: String,
        source: regex::Error,
    },
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    library: Option<String>,
    #[serde(default)]
    include: Vec<String>,
    #[serde(default)]
    exclude: Vec<String>,
    #[serde(default)]
    extra_triggers: Vec<String>,
    blocklist: Option<Vec<String>>,
    scale_free: Option<Vec<String>>,
    loguniform_ratio: Option<f64>,
    overrides: Option<PathBuf>,
    observations: Option<PathBuf>,
    output: Option<PathBuf>,
    module_prefix: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Config {
    /// Subdirectory of the output directory that schemas are written to.
    pub library: String,
    pub include: Vec<Pattern>,
    pub exclude: Vec<Pattern>,
    pub triggers: TriggerSet,
    pub refine: RefineOptions,
    pub overrides: Option<PathBuf>,
    pub observations: Option<PathBuf>,
    pub output: Option<PathBuf>,
    /// Prepended to the file-derived module path in probe plans.
    pub module_prefix: Option<String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            library: "library".into(),
            include: Vec::new(),
            exclude: Vec::new(),
            triggers: TriggerSet::default(),
            refine: RefineOptions::default(),
            overrides: None,
            observations: None,
            output: None,
            module_prefix: None,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new(""));
        Config::from_toml(&text, base).map_err(|e| match e {
            ConfigError::Toml { source, .. } => ConfigError::Toml {
                path: path.to_path_buf(),
                source,
            },
            other => other,
        })
    }

    /// Parses config text; relative paths are joined onto `base`.
    pub fn from_toml(text: &str, base: &Path) -> Result<Config, ConfigError> {
        let raw: RawConfig = toml::from_str(text).map_err(|source| ConfigError::Toml {
            path: PathBuf::new(),
            source,
        })?;
        let globs = |pats: &[String]| -> Result<Vec<Pattern>, ConfigError> {
            pats.iter()
                .map(|p| {
                    Pattern::new(p).map_err(|source| ConfigError::Glob {
                        pattern: p.clone(),
                        source,
                    })
                })
                .collect()
        };
        let mut triggers: Vec<String> = crate::cnl::DEFAULT_TRIGGERS
            .iter()
            .map(|s| s.to_string())
            .collect();
        for t in &raw.extra_triggers {
            regex::Regex::new(t).map_err(|source| ConfigError::Trigger {
                pattern: t.clone(),
                source,
            })?;
        }
        triggers.extend(raw.extra_triggers);
        let mut refine = RefineOptions::default();
        if let Some(b) = raw.blocklist {
            refine.blocklist = b;
        }
        if let Some(s) = raw.scale_free {
            refine.scale_free = s;
        }
        if let Some(r) = raw.loguniform_ratio {
            refine.loguniform_ratio = r;
        }
        let resolve = |p: Option<PathBuf>| p.map(|p| base.join(p));
        Ok(Config {
            library: raw.library.unwrap_or_else(|| "library".into()),
            include: globs(&raw.include)?,
            exclude: globs(&raw.exclude)?,
            triggers: TriggerSet::new(&triggers).expect("patterns checked above"),
            refine,
            overrides: resolve(raw.overrides),
            observations: resolve(raw.observations),
            output: resolve(raw.output),
            module_prefix: raw.module_prefix,
        })
    }

    /// A class is included when it matches some include glob (or there are
    /// none) and no exclude glob.
    pub fn includes(&self, class: &str) -> bool {
        (self.include.is_empty() || self.include.iter().any(|p| p.matches(class)))
            && !self.exclude.iter().any(|p| p.matches(class))
    }

    pub fn mine_options(&self) -> MineOptions {
        MineOptions {
            triggers: self.triggers.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refine::DEFAULT_BLOCKLIST;

    #[test]
    fn paths_resolve_against_config_dir() {
        let c = Config::from_toml(
            "library = \"sklearn\"\noverrides = \"o.json\"\noutput = \"/abs/out\"\nexclude = [\"*CV\", \"Base*\"]\n",
            Path::new("/etc/docmine"),
        )
        .unwrap();
        assert_eq!(
            c.overrides.as_deref(),
            Some(Path::new("/etc/docmine/o.json"))
        );
        assert_eq!(c.output.as_deref(), Some(Path::new("/abs/out")));
        assert!(c.includes("LogisticRegression"));
        assert!(!c.includes("LogisticRegressionCV"));
        assert!(!c.includes("BaseEstimator"));
    }

    #[test]
    fn unknown_keys_are_errors() {
        let e = Config::from_toml("libary = \"x\"\n", Path::new(".")).unwrap_err();
        assert!(matches!(e, ConfigError::Toml { .. }));
    }

    #[test]
    fn include_list_restricts() {
        let c = Config::from_toml("include = [\"Logistic*\"]", Path::new(".")).unwrap();
        assert!(c.includes("LogisticRegression"));
        assert!(!c.includes("Ridge"));
    }

    #[test]
    fn extra_triggers_extend_defaults() {
        let c =
            Config::from_toml("extra_triggers = [\"(?i)ignored unless\"]", Path::new(".")).unwrap();
        assert!(c
            .triggers
            .matching("This is ignored unless x is set.")
            .is_some());
        assert!(c.triggers.matching("Only used when x.").is_some());
        assert!(Config::from_toml("extra_triggers = [\"(\"]", Path::new(".")).is_err());
    }

    #[test]
    fn refine_settings() {
        let c =
            Config::from_toml("blocklist = []\nloguniform_ratio = 10.0", Path::new(".")).unwrap();
        assert!(c.refine.blocklist.is_empty());
        assert_eq!(c.refine.loguniform_ratio, 10.0);
        assert_eq!(
            Config::default().refine.blocklist.len(),
            DEFAULT_BLOCKLIST.len()
        );
    }
}
