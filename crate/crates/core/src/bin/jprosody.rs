//! Batch CLI over the prosody pipeline.
//!
//! Exit codes: 0 success, 1 usage, 2 parse/validation, 3 I/O,
//! 4 pattern-check failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use jprosody::annotate::{emit_baseline1, emit_baseline2, emit_proposed, parse_proposed_text};
use jprosody::f0::F0Params;
use jprosody::pipeline::{analyze, parse_config, render, run_experiment, PipelineError};
use jprosody::spmh::ProsodicTree;
use jprosody::tree::yield_pwords;
use jprosody::wellformedness::{apply_all, check_constraints, ConstraintConfig};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_PATTERN: u8 = 4;

#[derive(Parser)]
#[command(name = "jprosody", about = "Prosody compiler for Tokyo Japanese")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Baseline1,
    Baseline2,
    Proposed,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a TTS annotation for each input tree file
    Annotate {
        /// Tree files in the bracketed grammar
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum)]
        format: Format,
        /// Disable rhythmic-boost re-phrasing
        #[arg(long)]
        no_boost: bool,
    },
    /// Render an F0 contour from a tree file
    Contour {
        input: PathBuf,
        /// JSON file overriding F0 parameters and constraint toggles
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        no_boost: bool,
        /// Output path; `.json` or `.csv` decides the format
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the bundled items end to end and print a metrics table
    Experiment {
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        no_boost: bool,
        /// Also print the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Report per-phrase constraint status before and after rewriting
    Check {
        /// A tree file, or a proposed-format annotation (starts with `{`)
        input: PathBuf,
        #[arg(long)]
        no_boost: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("jprosody: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

#[derive(Debug)]
enum CliError {
    Io(PathBuf, std::io::Error),
    Pipeline(PathBuf, PipelineError),
    Config(PathBuf, PipelineError),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Pipeline(path, e) | CliError::Config(path, e) => {
                write!(f, "{}: {e}", path.display())
            }
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) => EXIT_IO,
            CliError::Pipeline(..) | CliError::Config(..) => EXIT_PARSE,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn load_params(
    params: Option<&PathBuf>,
    no_boost: bool,
) -> Result<(F0Params, ConstraintConfig), CliError> {
    let (f0, mut constraints) = match params {
        Some(path) => {
            let text = read(path)?;
            parse_config(&text).map_err(|e| CliError::Config(path.clone(), e))?
        }
        None => (F0Params::default(), ConstraintConfig::default()),
    };
    if no_boost {
        constraints.enable_boost_rephrasing = false;
    }
    Ok((f0, constraints))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Annotate {
            inputs,
            format,
            no_boost,
        } => {
            let (_, constraints) = load_params(None, no_boost)?;
            for path in &inputs {
                let text = read(path)?;
                let analysis = analyze(&text, &constraints)
                    .map_err(|e| CliError::Pipeline(path.clone(), e))?;
                let line = match format {
                    Format::Baseline1 => emit_baseline1(&yield_pwords(&analysis.tree)).text,
                    Format::Baseline2 => {
                        emit_baseline2(&analysis.tree)
                            .map_err(|e| CliError::Pipeline(path.clone(), e.into()))?
                            .text
                    }
                    Format::Proposed => emit_proposed(&analysis.rewritten).text,
                };
                println!("{line}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Contour {
            input,
            params,
            no_boost,
            out,
        } => {
            let (f0, constraints) = load_params(params.as_ref(), no_boost)?;
            let text = read(&input)?;
            let analysis =
                analyze(&text, &constraints).map_err(|e| CliError::Pipeline(input.clone(), e))?;
            let contour =
                render(&analysis, &f0).map_err(|e| CliError::Pipeline(input.clone(), e))?;
            let body = match out.extension().and_then(|e| e.to_str()) {
                Some("csv") => contour.to_csv(),
                _ => contour.to_json(),
            };
            fs::write(&out, body).map_err(|e| CliError::Io(out.clone(), e))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Experiment {
            params,
            no_boost,
            json,
        } => {
            let (f0, constraints) = load_params(params.as_ref(), no_boost)?;
            let report = run_experiment(&f0, &constraints)
                .map_err(|e| CliError::Pipeline(PathBuf::from("<fixtures>"), e))?;
            print!("{report}");
            if json {
                println!("{}", report.to_json());
            }
            if report.all_natural() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_PATTERN))
            }
        }
        Command::Check { input, no_boost } => {
            let (_, constraints) = load_params(None, no_boost)?;
            let text = read(&input)?;
            let (before, deps): (ProsodicTree, Vec<_>) = if text.trim_start().starts_with('{') {
                let ptree = parse_proposed_text(&text)
                    .map_err(|e| CliError::Pipeline(input.clone(), e.into()))?;
                let n = ptree.words().len();
                // No syntax available for a bare annotation: treat the
                // word chain as left-branching for the boost pass.
                let mut deps: Vec<Option<u8>> = vec![Some(1); n];
                if let Some(last) = deps.last_mut() {
                    *last = None;
                }
                (ptree, deps)
            } else {
                let analysis = analyze(&text, &constraints)
                    .map_err(|e| CliError::Pipeline(input.clone(), e))?;
                (analysis.projected, analysis.deps)
            };
            let after = apply_all(&before, &constraints, &deps);
            let mut ok = true;
            for (label, ptree) in [("before", &before), ("after", &after)] {
                for status in check_constraints(ptree) {
                    let state = if status.ok { "ok" } else { "violation" };
                    if label == "after" && !status.ok {
                        ok = false;
                    }
                    println!(
                        "{label}: [{}] accents={} {state}",
                        status.surfaces.join(" "),
                        status.accented_count
                    );
                }
            }
            if ok {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_PATTERN))
            }
        }
    }
}
