use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use docmine_cli::{
    cmd_eval, cmd_mine, cmd_refine, mine_exit_code, render_eval, render_mine, render_refine,
    CliError, Format,
};
use docmine_core::Config;

#[derive(Parser)]
#[command(
    name = "docmine",
    version,
    about = "Mine hyperparameter schemas from numpydoc docstrings"
)]
struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (default: the config's `output`, else `out`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Mine schemas from Python source files or directories.
    Mine { inputs: Vec<PathBuf> },
    /// Apply observations and overrides to mined schemas.
    Refine {
        raw_dir: PathBuf,
        /// Directory of `<Class>.json` observation files.
        #[arg(long)]
        observations: Option<PathBuf>,
        #[arg(long)]
        overrides: Option<PathBuf>,
    },
    /// Compare generated schemas against curated ones.
    Eval {
        generated: PathBuf,
        curated: PathBuf,
        /// Unrefined schemas, for attributing coverage to the refiner.
        #[arg(long)]
        raw: Option<PathBuf>,
    },
    /// Write probe plans only.
    Plan { inputs: Vec<PathBuf> },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Table => Format::Table,
    };
    let out_root = cli
        .out
        .clone()
        .or_else(|| cfg.output.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    match cli.command {
        Command::Mine { inputs } => {
            let s = cmd_mine(&inputs, &cfg, &out_root.join(&cfg.library), true)?;
            print!("{}", render_mine(&s, format));
            Ok(mine_exit_code(&s))
        }
        Command::Plan { inputs } => {
            let s = cmd_mine(&inputs, &cfg, &out_root.join(&cfg.library), false)?;
            print!("{}", render_mine(&s, format));
            Ok(mine_exit_code(&s))
        }
        Command::Refine {
            raw_dir,
            observations,
            overrides,
        } => {
            let obs = observations.or(cfg.observations.clone());
            let ov = overrides.or(cfg.overrides.clone());
            let s = cmd_refine(&raw_dir, obs.as_deref(), ov.as_deref(), &cfg, &out_root)?;
            print!("{}", render_refine(&s, format));
            Ok(0)
        }
        Command::Eval {
            generated,
            curated,
            raw,
        } => {
            let report = cmd_eval(&generated, &curated, raw.as_deref())?;
            print!("{}", render_eval(&report, format));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("DOCMINE_LOG", "warn")).init();
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("docmine: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
