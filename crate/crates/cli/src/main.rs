//! `vdd`: score AI-generated image corpora against reference paintings.

mod config;
mod inputs;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use log::warn;
use vdd_core::distributions::{base_histogram, base_pyramid, count_histogram, population_pyramid};
use vdd_core::prompts::{list_prompts, prompt, truncate_prompt, StopwordList};
use vdd_core::report::{
    column_order, emit_histograms_csv, emit_overall_csv, emit_pyramids_csv, emit_results_doc,
    emit_score_table_md, format_decimal,
};
use vdd_core::{score_corpus, PromptId, StdEstimator, StdMode};

use config::ConfigArgs;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VALIDATION: u8 = 1;
    pub const IO: u8 = 2;
    pub const USAGE: u8 = 3;
}

/// An error carrying the exit code it should produce.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn validation(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: exit::VALIDATION,
            error: error.into(),
        }
    }

    pub fn io(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: exit::IO,
            error: error.into(),
        }
    }

    pub fn usage(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: exit::USAGE,
            error: error.into(),
        }
    }
}

pub type CliResult<T = ()> = Result<T, Failure>;

#[derive(Debug, Parser)]
#[command(
    name = "vdd",
    version,
    about = "Visual diversity scoring for generated image corpora"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check annotation (JSONL) and base (JSON) files against the schema.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Score generated corpora against the base paintings.
    Score {
        #[command(flatten)]
        input: InputArgs,
        /// Base painting annotations (JSON).
        #[arg(long)]
        base: PathBuf,
        #[arg(long, value_enum, default_value_t = ScoreFormat::Md)]
        format: ScoreFormat,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Gender × age population pyramids per generator and prompt.
    Pyramid {
        #[command(flatten)]
        input: InputArgs,
        /// Also emit pyramids for the base paintings.
        #[arg(long)]
        base: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Distribution of people per image for each generator and prompt.
    Hist {
        #[command(flatten)]
        input: InputArgs,
        /// Also emit histograms for the base paintings.
        #[arg(long)]
        base: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Inspect the built-in prompts.
    Prompts {
        #[command(subcommand)]
        action: PromptsAction,
    },
}

#[derive(Debug, clap::Args)]
struct InputArgs {
    /// Generated-image annotation files (JSONL); repeatable.
    #[arg(long, required = true, num_args = 1..)]
    generated: Vec<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum PromptsAction {
    /// List prompt ids, titles and lengths.
    List,
    /// Print a prompt's full text.
    Show { id: PromptId },
    /// Shorten a prompt to a character limit by dropping stopwords.
    Truncate {
        id: PromptId,
        /// Character limit of the target model.
        #[arg(long)]
        limit: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScoreFormat {
    /// Markdown tables per prompt.
    Md,
    /// Overall score per prompt and generator.
    Csv,
    /// Full JSON results document.
    Doc,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::from(exit::OK),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Validate { paths } => validate(&paths),
        Command::Score {
            input,
            base,
            format,
            config,
        } => {
            let cfg = config.resolve()?;
            let slices = inputs::load_generated(&input.generated)?;
            let bases = inputs::load_base_file(&base)?;
            let table = score_corpus(&slices, &bases, &cfg).map_err(Failure::validation)?;
            let text = match format {
                ScoreFormat::Md => emit_score_table_md(&table),
                ScoreFormat::Csv => emit_overall_csv(&table),
                ScoreFormat::Doc => {
                    let hists: Vec<_> = slices.values().map(|s| count_histogram(s, &cfg)).collect();
                    let mut pyramids: Vec<_> = slices
                        .values()
                        .map(|s| population_pyramid(s, &cfg))
                        .collect();
                    pyramids.extend(
                        table
                            .bases
                            .iter()
                            .map(|b| base_pyramid(&bases[&b.prompt], &cfg)),
                    );
                    emit_results_doc(&table, &hists, &pyramids)
                }
            };
            match &input.out {
                Some(path) => {
                    write_output(Some(path), &text)?;
                    let generators = table.generator_overall.iter().map(|g| &g.generator);
                    let mut summary = String::new();
                    for g in column_order(generators) {
                        let row = table.generator_overall.iter().find(|r| r.generator == g);
                        let value = row.map(|r| r.overall);
                        let shown = value.map_or("n/a".into(), |v| format_decimal(v, cfg.rounding));
                        summary.push_str(&format!("{g}\t{shown}\n"));
                    }
                    write_output(None, &summary)
                }
                None => write_output(None, &text),
            }
        }
        Command::Pyramid {
            input,
            base,
            config,
        } => {
            let cfg = config.resolve()?;
            let slices = inputs::load_generated(&input.generated)?;
            let mut pyramids: Vec<_> = slices
                .values()
                .map(|s| population_pyramid(s, &cfg))
                .collect();
            if let Some(path) = base {
                let bases = inputs::load_base_file(&path)?;
                pyramids.extend(bases.values().map(|b| base_pyramid(b, &cfg)));
            }
            pyramids.sort_by(|a, b| (a.prompt, &a.source).cmp(&(b.prompt, &b.source)));
            write_output(input.out.as_deref(), &emit_pyramids_csv(&pyramids))
        }
        Command::Hist {
            input,
            base,
            config,
        } => {
            let cfg = config.resolve()?;
            let slices = inputs::load_generated(&input.generated)?;
            let mut hists: Vec<_> = slices.values().map(|s| count_histogram(s, &cfg)).collect();
            if let Some(path) = base {
                let bases = inputs::load_base_file(&path)?;
                hists.extend(bases.values().map(|b| base_histogram(b, &cfg)));
            }
            write_output(
                input.out.as_deref(),
                &emit_histograms_csv(&hists, cfg.rounding),
            )
        }
        Command::Prompts { action } => prompts(action),
    }
}

fn validate(paths: &[PathBuf]) -> CliResult {
    let mut worst = exit::OK;
    for path in paths {
        match inputs::validate_file(path) {
            Ok(summary) => println!("{}: ok ({summary})", path.display()),
            Err(f) => {
                println!("{}: {:#}", path.display(), f.error);
                worst = worst.max(f.code);
            }
        }
    }
    match worst {
        exit::OK => Ok(()),
        code => Err(Failure {
            code,
            error: anyhow::anyhow!("validation failed"),
        }),
    }
}

fn prompts(action: PromptsAction) -> CliResult {
    let text = match action {
        PromptsAction::List => list_prompts()
            .iter()
            .map(|p| {
                format!(
                    "{}\t{}\t{} chars\n",
                    p.id,
                    p.title,
                    p.full_text.chars().count()
                )
            })
            .collect(),
        PromptsAction::Show { id } => {
            let p = prompt(id);
            format!("{}: {}\n\n{}\n", p.id, p.title, p.full_text)
        }
        PromptsAction::Truncate { id, limit } => {
            let p = prompt(id);
            let out = truncate_prompt(&p.full_text, limit, StopwordList::english())
                .map_err(Failure::usage)?;
            if out == p.full_text {
                warn!("prompt {id} already fits in {limit} characters");
            }
            format!("{out}\n")
        }
    };
    write_output(None, &text)
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(Failure::io),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .context("cannot write to stdout")
            .map_err(Failure::io),
    }
}

// Referenced by `config` for flag parsing.
pub(crate) fn parse_std_mode(s: &str) -> Result<StdMode, String> {
    s.parse()
        .map_err(|e: vdd_core::model::InvalidField| e.reason)
}

pub(crate) fn parse_std_estimator(s: &str) -> Result<StdEstimator, String> {
    match s {
        "sample" => Ok(StdEstimator::Sample),
        "population" => Ok(StdEstimator::Population),
        other => Err(format!("unknown estimator `{other}` (sample | population)")),
    }
}
