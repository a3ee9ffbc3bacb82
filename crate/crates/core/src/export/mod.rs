//! Formal descriptions of an ontology: Turtle, DOT and canonical JSON.
//!
//! Every exporter is a pure function of the ontology and its options, and
//! emits statements in a fixed sort order, so equal inputs give identical
//! bytes.

mod dot;
mod json;
mod turtle;

use std::fmt;
use std::str::FromStr;

use crate::model::{slugify, Ontology};

pub use dot::export_dot;
pub use json::{export_json, import_json, ImportError, JsonImport};
pub use turtle::export_turtle;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExportFormat {
    #[default]
    Turtle,
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "turtle" | "ttl" => Ok(ExportFormat::Turtle),
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            _ => Err(format!("unknown export format {s:?} (turtle, dot, json)")),
        }
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExportFormat::Turtle => "turtle",
            ExportFormat::Dot => "dot",
            ExportFormat::Json => "json",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExportOptions {
    pub format: ExportFormat,
    /// Namespace for concept IRIs; `urn:onto:<ontology-id>/` when unset.
    pub base_iri: Option<String>,
    /// Annotate DOT nodes with their computed level.
    pub include_levels: bool,
    /// Language tag of labels and definitions in Turtle; `ru` when unset.
    pub language: Option<String>,
}

impl ExportOptions {
    pub fn new(format: ExportFormat) -> Self {
        ExportOptions {
            format,
            ..Default::default()
        }
    }

    pub fn base_iri_for(&self, o: &Ontology) -> String {
        match &self.base_iri {
            Some(iri) => iri.clone(),
            None => {
                let slug = slugify(o.name());
                let slug = if slug.is_empty() { "ontology".to_string() } else { slug };
                format!("urn:onto:{slug}/")
            }
        }
    }

    pub fn language(&self) -> &str {
        self.language.as_deref().unwrap_or("ru")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExportError {
    #[error("invalid base IRI {0:?}: must be an absolute IRI ending in '/' or '#'")]
    InvalidBaseIri(String),
    #[error("invalid language tag {0:?}")]
    InvalidLanguageTag(String),
}

/// Checks that `iri` is an absolute IRI prefix ending in `/` or `#`.
pub fn validate_base_iri(iri: &str) -> Result<(), ExportError> {
    let bad = || ExportError::InvalidBaseIri(iri.to_string());
    let (scheme, rest) = iri.split_once(':').ok_or_else(bad)?;
    let mut sc = scheme.chars();
    let scheme_ok = sc.next().is_some_and(|c| c.is_ascii_alphabetic())
        && sc.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'));
    let rest_ok = !rest.is_empty()
        && !rest
            .chars()
            .any(|c| c.is_whitespace() || c.is_control() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\'));
    if scheme_ok && rest_ok && (iri.ends_with('/') || iri.ends_with('#')) {
        Ok(())
    } else {
        Err(bad())
    }
}

/// Renders `o` in the format selected by `opt`.
pub fn export(o: &Ontology, opt: &ExportOptions) -> Result<String, ExportError> {
    match opt.format {
        ExportFormat::Turtle => export_turtle(o, opt),
        ExportFormat::Dot => Ok(export_dot(o, opt)),
        ExportFormat::Json => Ok(export_json(o)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_iri_validation() {
        for ok in ["urn:onto:x/", "http://example.org/onto#", "https://example.org/a/b/"] {
            assert_eq!(validate_base_iri(ok), Ok(()), "{ok}");
        }
        for bad in ["urn:onto:x", "no-scheme/", "http://exa mple.org/", "1http://x/", ":x/", "http://x/<y>/"] {
            assert!(validate_base_iri(bad).is_err(), "{bad}");
        }
    }
}
