//! The `.onto` source format.
//!
//! ```text
//! # comment
//! ontology "Вычислительная техника"
//! relation uses "использовать" hierarchical
//! concept "Информатика" { category; def: "Наука об информации." }
//! concept "Вычислительная техника" {
//!   kind: generic_vs_specific=generic concrete_vs_abstract=abstract
//!   attrs: назначение, "элементная база"
//! }
//! edge "Вычислительная техника" -categorical-> "Информатика"
//! ```
//!
//! [`parse`] keeps statements in source order with their positions;
//! [`serialize`] writes the canonical form (relations, then concepts sorted
//! by id, then edges sorted by source, relation and target); [`lower`]
//! resolves names and builds a validated [`Ontology`](crate::Ontology).

mod lower;
mod parser;
mod writer;

use std::fmt;

use crate::model::{slugify, ConceptKind, Ontology};

pub use lower::{lower, LowerError};
pub use parser::{parse, ParseError};
pub use writer::serialize;

/// 1-based line and column (in characters) of a source element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl Span {
    pub fn new(line: u32, col: u32) -> Self {
        Span { line, col }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// `relation <id> "<label>" [partial_order] [hierarchical]`
#[derive(Clone, Debug, Eq)]
pub struct RelationDecl {
    pub id: String,
    pub label: String,
    pub partial_order: bool,
    pub hierarchical: bool,
    pub span: Span,
}

/// `concept "<name>" { ... }`
#[derive(Clone, Debug, Default, Eq)]
pub struct ConceptBlock {
    pub name: String,
    pub kind: ConceptKind,
    pub category: bool,
    pub attributes: Vec<String>,
    pub definition: Option<String>,
    /// The definition was authored by the ontology developer.
    pub manual: bool,
    pub span: Span,
}

/// `edge "<source>" -<relation>-> "<target>"`
#[derive(Clone, Debug, Eq)]
pub struct EdgeStmt {
    pub source: String,
    pub relation: String,
    pub target: String,
    pub span: Span,
}

// Structural equality ignores source positions.

impl PartialEq for RelationDecl {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
            && self.label == other.label
            && self.partial_order == other.partial_order
            && self.hierarchical == other.hierarchical
    }
}

impl PartialEq for ConceptBlock {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.kind == other.kind
            && self.category == other.category
            && self.attributes == other.attributes
            && self.definition == other.definition
            && self.manual == other.manual
    }
}

impl PartialEq for EdgeStmt {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.relation == other.relation && self.target == other.target
    }
}

/// A parsed `.onto` file.
#[derive(Clone, Debug, Default, Eq)]
pub struct SourceDocument {
    pub ontology_name: String,
    pub header_span: Span,
    pub relations: Vec<RelationDecl>,
    pub concepts: Vec<ConceptBlock>,
    pub edges: Vec<EdgeStmt>,
}

impl PartialEq for SourceDocument {
    fn eq(&self, other: &Self) -> bool {
        self.ontology_name == other.ontology_name
            && self.relations == other.relations
            && self.concepts == other.concepts
            && self.edges == other.edges
    }
}

impl SourceDocument {
    pub fn new(ontology_name: impl Into<String>) -> Self {
        SourceDocument {
            ontology_name: ontology_name.into(),
            ..Default::default()
        }
    }

    /// The document with its statements in canonical order.
    pub fn canonicalized(&self) -> SourceDocument {
        let mut doc = self.clone();
        doc.relations.sort_by(|a, b| a.id.cmp(&b.id).then_with(|| a.label.cmp(&b.label)));
        doc.concepts
            .sort_by_cached_key(|c| (slugify(&c.name), c.name.clone()));
        doc.edges.sort_by_cached_key(|e| {
            (
                slugify(&e.source),
                e.relation.clone(),
                slugify(&e.target),
                e.source.clone(),
                e.target.clone(),
            )
        });
        doc
    }

    /// Source text form of an ontology. Built-in relations are not declared.
    pub fn from_ontology(o: &Ontology) -> SourceDocument {
        let relations = o
            .relations()
            .user_declared()
            .map(|r| RelationDecl {
                id: r.id.to_string(),
                label: r.label.clone(),
                partial_order: r.is_partial_order,
                hierarchical: r.is_hierarchical,
                span: Span::default(),
            })
            .collect();
        let concepts = o
            .concepts()
            .map(|c| {
                let def = o.definition(c.id());
                ConceptBlock {
                    name: c.name().to_string(),
                    kind: *c.kind(),
                    category: c.is_category(),
                    attributes: c.attributes().to_vec(),
                    definition: def.map(|d| d.text.clone()),
                    manual: def.is_some_and(|d| d.manual),
                    span: Span::default(),
                }
            })
            .collect();
        let name_of = |id| o.concept(id).expect("validated edge").name().to_string();
        let edges = o
            .edges()
            .map(|e| EdgeStmt {
                source: name_of(&e.source),
                relation: e.relation.to_string(),
                target: name_of(&e.target),
                span: Span::default(),
            })
            .collect();
        SourceDocument {
            ontology_name: o.name().to_string(),
            header_span: Span::default(),
            relations,
            concepts,
            edges,
        }
        .canonicalized()
    }
}
