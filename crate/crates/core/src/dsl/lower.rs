use std::collections::BTreeMap;
use std::fmt;

use super::{SourceDocument, Span};
use crate::glossary::Definition;
use crate::model::{
    Concept, ConceptId, Edge, ModelError, Ontology, OntologyParts, RelationId, RelationRegistry,
    RelationType,
};

/// A lowering failure with the source positions it concerns.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LowerError {
    #[error("{span}: unresolved concept name {name:?}")]
    UnresolvedConceptName { name: String, span: Span },
    #[error("{}: {source}", SpanList(.spans))]
    Invalid { source: ModelError, spans: Vec<Span> },
}

impl LowerError {
    pub fn spans(&self) -> Vec<Span> {
        match self {
            LowerError::UnresolvedConceptName { span, .. } => vec![*span],
            LowerError::Invalid { spans, .. } => spans.clone(),
        }
    }

    pub fn model_error(&self) -> Option<&ModelError> {
        match self {
            LowerError::Invalid { source, .. } => Some(source),
            LowerError::UnresolvedConceptName { .. } => None,
        }
    }
}

struct SpanList<'a>(&'a [Span]);

impl fmt::Display for SpanList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

fn invalid(source: ModelError, spans: Vec<Span>) -> LowerError {
    LowerError::Invalid { source, spans }
}

/// Resolves names to concept ids and builds the ontology.
///
/// Edge endpoints are matched by derived id, so an endpoint may differ from
/// the concept block's name in case or punctuation.
pub fn lower(doc: &SourceDocument) -> Result<Ontology, LowerError> {
    let mut relations = RelationRegistry::builtin();
    for decl in &doc.relations {
        relations
            .declare(RelationType::new(
                &decl.id,
                &decl.label,
                decl.partial_order,
                decl.hierarchical,
            ))
            .map_err(|e| invalid(e, vec![decl.span]))?;
    }

    let mut concepts = Vec::with_capacity(doc.concepts.len());
    let mut concept_spans: BTreeMap<ConceptId, Span> = BTreeMap::new();
    let mut glossary = BTreeMap::new();
    for block in &doc.concepts {
        let concept = Concept::new(&block.name)
            .map_err(|e| invalid(e, vec![block.span]))?
            .with_kind(block.kind)
            .with_attributes(&block.attributes)
            .with_category(block.category);
        let id = concept.id().clone();
        if let Some(first) = concept_spans.get(&id) {
            return Err(invalid(ModelError::DuplicateConceptId(id), vec![*first, block.span]));
        }
        concept_spans.insert(id.clone(), block.span);
        if let Some(text) = &block.definition {
            let def = if block.manual {
                Definition::manual(text)
            } else {
                Definition::new(text)
            };
            glossary.insert(id, def);
        }
        concepts.push(concept);
    }

    let mut edges = Vec::with_capacity(doc.edges.len());
    let mut edge_spans: BTreeMap<Edge, Span> = BTreeMap::new();
    for stmt in &doc.edges {
        let resolve = |name: &str| {
            ConceptId::from_name(name)
                .filter(|id| concept_spans.contains_key(id))
                .ok_or_else(|| LowerError::UnresolvedConceptName {
                    name: name.to_string(),
                    span: stmt.span,
                })
        };
        let edge = Edge {
            source: resolve(&stmt.source)?,
            relation: RelationId::new(&stmt.relation),
            target: resolve(&stmt.target)?,
        };
        if let Some(first) = edge_spans.get(&edge) {
            return Err(invalid(ModelError::DuplicateEdge(edge), vec![*first, stmt.span]));
        }
        edge_spans.insert(edge.clone(), stmt.span);
        edges.push(edge);
    }

    let parts = OntologyParts {
        name: doc.ontology_name.clone(),
        relations,
        concepts,
        edges,
        glossary,
    };
    Ontology::build(parts).map_err(|e| {
        let spans = match &e {
            ModelError::EmptyConceptSet => vec![doc.header_span],
            ModelError::SelfLoop(edge)
            | ModelError::DanglingEdgeEndpoint(edge)
            | ModelError::DuplicateEdge(edge) => edge_spans.get(edge).copied().into_iter().collect(),
            ModelError::UnknownRelation(rel) => edge_spans
                .iter()
                .filter(|(edge, _)| &edge.relation == rel)
                .map(|(_, span)| *span)
                .min()
                .into_iter()
                .collect(),
            ModelError::DuplicateConceptId(id) | ModelError::UnknownGlossaryConcept(id) => {
                concept_spans.get(id).copied().into_iter().collect()
            }
            ModelError::HierarchicalCycle(path) => path
                .windows(2)
                .filter_map(|w| {
                    edge_spans
                        .iter()
                        .filter(|(edge, _)| edge.source == w[0] && edge.target == w[1])
                        .map(|(_, span)| *span)
                        .min()
                })
                .collect(),
            _ => Vec::new(),
        };
        invalid(e, spans)
    })
}
