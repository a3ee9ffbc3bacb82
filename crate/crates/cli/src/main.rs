//! `ontoforge`: check, rank, lint, suggest, merge and export ontology files.
//!
//! Exit codes: 0 success, 1 invalid input, 2 lint findings at or above the
//! deny level, 3 I/O or usage error.

mod input;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ontoforge_core::dsl::{self, SourceDocument};
use ontoforge_core::export::{self, ExportFormat, ExportOptions};
use ontoforge_core::glossary::{coverage_report, suggest_edges};
use ontoforge_core::lint::{lint_document, LintConfig, Severity};
use ontoforge_core::merge::{merge, MergeError, MergePolicy};
use ontoforge_core::hierarchy::rank;
use serde_json::json;

use input::{load, Failure};

#[derive(Parser)]
#[command(name = "ontoforge", version, about = "Domain ontology design toolkit")]
struct Cli {
    /// Suppress summaries and reports on standard error.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a file.
    Check { path: PathBuf },
    /// Print the level of every concept.
    Rank {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = TableFormat::Tsv)]
        format: TableFormat,
    },
    /// Check the hierarchy against the design heuristics.
    Lint {
        path: PathBuf,
        /// TOML lint configuration.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Lowest severity that makes the command fail.
        #[arg(long, value_enum, default_value_t = DenyLevel::Error)]
        deny: DenyLevel,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Propose edges from terms found in definitions.
    Suggest {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = TableFormat::Tsv)]
        format: TableFormat,
    },
    /// Report the definition status of every concept.
    Coverage {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = TableFormat::Tsv)]
        format: TableFormat,
    },
    /// Join two fragments through their shared categorical-level concepts.
    Merge {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value_t = Policy::Strict)]
        policy: Policy,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a formal description of the ontology.
    Export {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Turtle)]
        format: Format,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Namespace for concept IRIs (Turtle).
        #[arg(long)]
        base_iri: Option<String>,
        /// Language tag of labels (Turtle).
        #[arg(long)]
        lang: Option<String>,
        /// Show concept levels on DOT nodes.
        #[arg(long)]
        levels: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Tsv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum DenyLevel {
    Info,
    Warning,
    Error,
    Never,
}

impl DenyLevel {
    fn threshold(self) -> Option<Severity> {
        match self {
            DenyLevel::Info => Some(Severity::Info),
            DenyLevel::Warning => Some(Severity::Warning),
            DenyLevel::Error => Some(Severity::Error),
            DenyLevel::Never => None,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Strict,
    #[value(alias = "prefer_left")]
    PreferLeft,
    #[value(alias = "prefer_right")]
    PreferRight,
}

impl From<Policy> for MergePolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Strict => MergePolicy::Strict,
            Policy::PreferLeft => MergePolicy::PreferLeft,
            Policy::PreferRight => MergePolicy::PreferRight,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Turtle,
    Dot,
    Json,
}

impl From<Format> for ExportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Turtle => ExportFormat::Turtle,
            Format::Dot => ExportFormat::Dot,
            Format::Json => ExportFormat::Json,
        }
    }
}

pub(crate) const EXIT_INVALID: u8 = 1;
pub(crate) const EXIT_DENIED: u8 = 2;
pub(crate) const EXIT_IO: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_IO)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("{failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let quiet = cli.quiet;
    let mut out = String::new();
    let code = match cli.command {
        Command::Check { path } => {
            let o = load(&path, quiet)?;
            if !quiet {
                out = format!("{} concepts, {} edges\n", o.concept_count(), o.edge_count());
            }
            0
        }
        Command::Rank { path, format } => {
            let ranking = rank(&load(&path, quiet)?);
            out = match format {
                TableFormat::Tsv => ranking.rows().map(|(l, id)| format!("{l}\t{id}\n")).collect(),
                TableFormat::Json => {
                    let levels: Vec<_> = ranking
                        .by_level
                        .iter()
                        .map(|(level, ids)| json!({ "level": level, "concepts": ids }))
                        .collect();
                    to_json(&json!({ "depth": ranking.depth(), "levels": levels }))
                }
            };
            0
        }
        Command::Lint {
            path,
            config,
            deny,
            format,
        } => {
            let config = match &config {
                Some(p) => {
                    let text = read(p)?;
                    LintConfig::from_toml(&text).map_err(|e| Failure::Config(p.clone(), e))?
                }
                None => LintConfig::default(),
            };
            let doc = input::parse_source(&path, quiet)?;
            let diags = lint_document(&doc, &config).map_err(|e| Failure::Lower(path.clone(), Box::new(e)))?;
            out = match format {
                ReportFormat::Text => diags.iter().map(|d| format!("{d}\n")).collect(),
                ReportFormat::Json => to_json(&diags),
            };
            let denied = deny
                .threshold()
                .is_some_and(|t| diags.iter().any(|d| d.severity >= t));
            if denied {
                EXIT_DENIED
            } else {
                0
            }
        }
        Command::Suggest { path, format } => {
            let suggestions = suggest_edges(&load(&path, quiet)?);
            out = match format {
                TableFormat::Tsv => suggestions
                    .iter()
                    .map(|s| format!("{}\t{}\t{}\t{}\n", s.source, s.relation, s.target, s.evidence))
                    .collect(),
                TableFormat::Json => to_json(&suggestions),
            };
            0
        }
        Command::Coverage { path, format } => {
            let rows = coverage_report(&load(&path, quiet)?);
            out = match format {
                TableFormat::Tsv => rows.iter().map(|(id, s)| format!("{id}\t{s}\n")).collect(),
                TableFormat::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|(id, s)| json!({ "concept_id": id, "status": s }))
                        .collect();
                    to_json(&rows)
                }
            };
            0
        }
        Command::Merge {
            left,
            right,
            policy,
            output,
        } => {
            let a = load(&left, quiet)?;
            let b = load(&right, quiet)?;
            let (merged, report) = merge(&a, &b, policy.into()).map_err(|e| match e {
                MergeError::Model(e) => Failure::Model(format!("{} + {}", left.display(), right.display()), e),
                e => Failure::Merge(e),
            })?;
            if !quiet {
                eprint!("{}", to_json(&report));
            }
            let text = dsl::serialize(&SourceDocument::from_ontology(&merged));
            emit(output.as_deref(), &text, &mut out)?;
            0
        }
        Command::Export {
            path,
            format,
            output,
            base_iri,
            lang,
            levels,
        } => {
            let o = load(&path, quiet)?;
            let opt = ExportOptions {
                format: format.into(),
                base_iri,
                include_levels: levels,
                language: lang,
            };
            let text = export::export(&o, &opt).map_err(Failure::Export)?;
            emit(output.as_deref(), &text, &mut out)?;
            0
        }
    };
    io::stdout()
        .write_all(out.as_bytes())
        .map_err(|e| Failure::Io(PathBuf::from("<stdout>"), e))?;
    Ok(code)
}

fn to_json<T: serde::Serialize + ?Sized>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report values serialize");
    text.push('\n');
    text
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

/// Writes `text` to `output`, or queues it for standard output.
fn emit(output: Option<&Path>, text: &str, stdout: &mut String) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(p.to_path_buf(), e)),
        None => {
            stdout.push_str(text);
            Ok(())
        }
    }
}
