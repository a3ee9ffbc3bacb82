//! Domain ontology toolkit.
//!
//! An ontology is a triple of concepts, typed relations between them and a
//! glossary interpreting the concepts. This crate parses the `.onto` source
//! format, validates the resulting ontograph, ranks concepts by the
//! above-below relation, lints the hierarchy, merges fragments through
//! categorical-level concepts and exports Turtle, DOT and JSON.
//!
//! ```
//! use ontoforge_core::{dsl, hierarchy};
//!
//! let doc = dsl::parse(
//!     "ontology \"demo\"\n\
//!      concept \"Информатика\" { category }\n\
//!      concept \"Программирование\" {}\n\
//!      edge \"Программирование\" -genus_species-> \"Информатика\"\n",
//! )
//! .unwrap();
//! let onto = dsl::lower(&doc).unwrap();
//! let ranking = hierarchy::rank(&onto);
//! assert_eq!(ranking.level(&"programmirovanie".into()), Some(2));
//! ```

pub mod dsl;
pub mod export;
pub mod glossary;
pub mod hierarchy;
pub mod lint;
pub mod merge;
pub mod model;

pub use dsl::{lower, parse, serialize, SourceDocument};
pub use export::{export_dot, export_json, export_turtle, import_json, ExportFormat, ExportOptions};
pub use glossary::Definition;
pub use hierarchy::{rank, Ranking};
pub use lint::{lint, Diagnostic, LintConfig, RuleCode, Severity};
pub use merge::{merge, MergePolicy, MergeReport};
pub use model::{
    build_ontology, Concept, ConceptId, ConceptKind, Edge, ModelError, Ontology, RelationId,
    RelationRegistry, RelationType,
};
