use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use ontoforge_core::dsl::{self, LowerError, ParseError, SourceDocument};
use ontoforge_core::export::{import_json, ExportError, ImportError};
use ontoforge_core::lint::ConfigError;
use ontoforge_core::merge::MergeError;
use ontoforge_core::{ModelError, Ontology};

use crate::{EXIT_INVALID, EXIT_IO};

/// A command failure, rendered as a compiler-style diagnostic.
#[derive(Debug)]
pub enum Failure {
    Io(PathBuf, io::Error),
    Config(PathBuf, ConfigError),
    Parse(PathBuf, ParseError),
    Lower(PathBuf, Box<LowerError>),
    Import(PathBuf, ImportError),
    Model(String, ModelError),
    Merge(MergeError),
    Export(ExportError),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(..) | Failure::Config(..) | Failure::Export(_) => EXIT_IO,
            _ => EXIT_INVALID,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Io(p, e) => write!(f, "{}: error: {e}", p.display()),
            Failure::Config(p, e) => write!(f, "{}: error: {e}", p.display()),
            Failure::Parse(p, e) => write!(f, "{}:{}: error: {e}", p.display(), e.span()),
            Failure::Lower(p, e) => {
                let spans = e.spans();
                let message = match e.as_ref() {
                    LowerError::UnresolvedConceptName { name, .. } => {
                        format!("unresolved concept name {name:?}")
                    }
                    LowerError::Invalid { source, .. } => source.to_string(),
                };
                match spans.split_first() {
                    Some((first, rest)) => {
                        write!(f, "{}:{first}: error: {message}", p.display())?;
                        for s in rest {
                            write!(f, "\n{}:{s}: note: related location", p.display())?;
                        }
                        Ok(())
                    }
                    None => write!(f, "{}: error: {message}", p.display()),
                }
            }
            Failure::Import(p, e) => write!(f, "{}: error: {e}", p.display()),
            Failure::Model(what, e) => write!(f, "{what}: error: {e}"),
            Failure::Merge(e) => write!(f, "error: {e}"),
            Failure::Export(e) => write!(f, "error: {e}"),
        }
    }
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn import(path: &Path, text: &str, quiet: bool) -> Result<Ontology, Failure> {
    let imported = import_json(text).map_err(|e| Failure::Import(path.to_path_buf(), e))?;
    if !quiet {
        for note in &imported.notes {
            eprintln!("{}: note: {note}", path.display());
        }
    }
    Ok(imported.ontology)
}

/// Loads a validated ontology from a `.onto` source or a canonical JSON file.
pub fn load(path: &Path, quiet: bool) -> Result<Ontology, Failure> {
    let text = read(path)?;
    if is_json(path) {
        return import(path, &text, quiet);
    }
    let doc = dsl::parse(&text).map_err(|e| Failure::Parse(path.to_path_buf(), e))?;
    dsl::lower(&doc).map_err(|e| Failure::Lower(path.to_path_buf(), Box::new(e)))
}

/// Parses a file without validating it; JSON input is validated on import.
pub fn parse_source(path: &Path, quiet: bool) -> Result<SourceDocument, Failure> {
    let text = read(path)?;
    if is_json(path) {
        return Ok(SourceDocument::from_ontology(&import(path, &text, quiet)?));
    }
    dsl::parse(&text).map_err(|e| Failure::Parse(path.to_path_buf(), e))
}
