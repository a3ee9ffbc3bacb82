//! The ontology triple: concepts, typed relations between them, and the
//! glossary of definitions that interprets them.
//!
//! An [`Ontology`] can only be obtained through [`Ontology::build`] (or
//! [`build_ontology`] for the built-in relation set), which checks every
//! structural invariant. Once built it is never mutated; operations that
//! change an ontology return a new, revalidated value.

mod id;
mod kind;
mod relation;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use id::{slugify, ConceptId};
pub use kind::{
    ConceptKind, ConcreteAbstract, GenericSpecific, KindError, SingularGeneral, UnknownAxisValue,
    WholePart, AXES,
};
pub use relation::{
    RelationId, RelationRegistry, RelationType, BUILTIN_RELATIONS, CATEGORICAL, CONTAINED_IN,
    DEVELOPED_BY, GENUS_SPECIES, IS_CHARACTERISTIC_OF, PARTICIPANT, REGULATES, SET_ELEMENT,
    WHOLE_PART,
};

use crate::glossary::{self, Definition};

/// Structural problems rejected by [`Ontology::build`].
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("the concept set is empty")]
    EmptyConceptSet,
    #[error("concept name {0:?} is empty or has no identifier characters")]
    InvalidConceptName(String),
    #[error("duplicate concept id {0}")]
    DuplicateConceptId(ConceptId),
    #[error("edge {0} has an endpoint that is not a concept of the ontology")]
    DanglingEdgeEndpoint(Edge),
    #[error("edge {0} connects a concept to itself")]
    SelfLoop(Edge),
    #[error("unknown relation {0}")]
    UnknownRelation(RelationId),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("glossary entry for unknown concept {0}")]
    UnknownGlossaryConcept(ConceptId),
    #[error("hierarchical cycle {}", format_path(.0))]
    HierarchicalCycle(Vec<ConceptId>),
    #[error("invalid relation id {0:?}")]
    InvalidRelationId(String),
    #[error("relation {0} is a partial order but not hierarchical")]
    PartialOrderNotHierarchical(RelationId),
    #[error("relation {0} is declared twice with different properties")]
    RelationRedefined(RelationId),
}

fn format_path(path: &[ConceptId]) -> String {
    path.iter().map(ConceptId::as_str).collect::<Vec<_>>().join(" -> ")
}

/// A node of the ontograph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Concept {
    id: ConceptId,
    name: String,
    kind: ConceptKind,
    attributes: Vec<String>,
    is_category: bool,
    defined: bool,
}

impl Concept {
    /// Creates a concept, deriving its id from the trimmed name.
    pub fn new(name: &str) -> Result<Self, ModelError> {
        let name = name.trim();
        let id = ConceptId::from_name(name)
            .ok_or_else(|| ModelError::InvalidConceptName(name.to_string()))?;
        Ok(Concept {
            id,
            name: name.to_string(),
            kind: ConceptKind::default(),
            attributes: Vec::new(),
            is_category: false,
            defined: false,
        })
    }

    pub fn with_kind(mut self, kind: ConceptKind) -> Self {
        self.kind = kind;
        self
    }

    /// Replaces the attribute list; blanks and repeats are dropped, first
    /// occurrence wins.
    pub fn with_attributes<I, S>(mut self, attrs: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.attributes.clear();
        for attr in attrs {
            let attr = attr.as_ref().trim();
            if !attr.is_empty() && !self.attributes.iter().any(|a| a == attr) {
                self.attributes.push(attr.to_string());
            }
        }
        self
    }

    pub fn with_category(mut self, is_category: bool) -> Self {
        self.is_category = is_category;
        self
    }

    pub fn id(&self) -> &ConceptId {
        &self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &ConceptKind {
        &self.kind
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    /// Member of the categorical-level ontology.
    pub fn is_category(&self) -> bool {
        self.is_category
    }

    /// Has a glossary entry. Kept in sync by [`Ontology::build`].
    pub fn is_defined(&self) -> bool {
        self.defined
    }
}

/// A directed typed arc. For hierarchical relations the source is the more
/// specific (lower) concept and the target the more general one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub source: ConceptId,
    pub relation: RelationId,
    pub target: ConceptId,
}

impl Edge {
    pub fn new(
        source: impl Into<ConceptId>,
        relation: impl Into<RelationId>,
        target: impl Into<ConceptId>,
    ) -> Self {
        Edge {
            source: source.into(),
            relation: relation.into(),
            target: target.into(),
        }
    }
}

impl From<String> for ConceptId {
    fn from(s: String) -> Self {
        ConceptId::from_slug(s)
    }
}

impl From<&ConceptId> for ConceptId {
    fn from(id: &ConceptId) -> Self {
        id.clone()
    }
}

impl From<&RelationId> for RelationId {
    fn from(id: &RelationId) -> Self {
        id.clone()
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -{}-> {}", self.source, self.relation, self.target)
    }
}

/// The validated ontology triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ontology {
    name: String,
    concepts: BTreeMap<ConceptId, Concept>,
    edges: BTreeSet<Edge>,
    relations: RelationRegistry,
    glossary: BTreeMap<ConceptId, Definition>,
}

/// The unvalidated ingredients of an [`Ontology`].
#[derive(Clone, Debug, Default)]
pub struct OntologyParts {
    pub name: String,
    pub relations: RelationRegistry,
    pub concepts: Vec<Concept>,
    pub edges: Vec<Edge>,
    pub glossary: BTreeMap<ConceptId, Definition>,
}

/// Builds an ontology over the built-in relation registry.
pub fn build_ontology(
    name: &str,
    concepts: Vec<Concept>,
    edges: Vec<Edge>,
    glossary: BTreeMap<ConceptId, Definition>,
) -> Result<Ontology, ModelError> {
    Ontology::build(OntologyParts {
        name: name.to_string(),
        relations: RelationRegistry::builtin(),
        concepts,
        edges,
        glossary,
    })
}

impl Ontology {
    /// Validates `parts` and assembles the ontology.
    ///
    /// Concept `defined` flags are recomputed from the glossary, and every
    /// definition's references and attributes are recomputed against the
    /// final concept set. The first violated invariant is reported.
    pub fn build(parts: OntologyParts) -> Result<Ontology, ModelError> {
        let OntologyParts {
            name,
            relations,
            concepts,
            edges,
            glossary,
        } = parts;

        if concepts.is_empty() {
            return Err(ModelError::EmptyConceptSet);
        }
        let mut concept_map = BTreeMap::new();
        for concept in concepts {
            if concept.name.trim().is_empty() || concept.id.as_str().is_empty() {
                return Err(ModelError::InvalidConceptName(concept.name));
            }
            if concept_map.contains_key(&concept.id) {
                return Err(ModelError::DuplicateConceptId(concept.id));
            }
            concept_map.insert(concept.id.clone(), concept);
        }

        let mut edge_set = BTreeSet::new();
        for edge in edges {
            if edge.source == edge.target {
                return Err(ModelError::SelfLoop(edge));
            }
            if !concept_map.contains_key(&edge.source) || !concept_map.contains_key(&edge.target) {
                return Err(ModelError::DanglingEdgeEndpoint(edge));
            }
            if !relations.contains(&edge.relation) {
                return Err(ModelError::UnknownRelation(edge.relation));
            }
            if edge_set.contains(&edge) {
                return Err(ModelError::DuplicateEdge(edge));
            }
            edge_set.insert(edge);
        }

        if let Some(id) = glossary.keys().find(|id| !concept_map.contains_key(*id)) {
            return Err(ModelError::UnknownGlossaryConcept(id.clone()));
        }

        if let Some(cycle) = find_hierarchical_cycle(&concept_map, &edge_set, &relations) {
            return Err(ModelError::HierarchicalCycle(cycle));
        }

        for (id, concept) in concept_map.iter_mut() {
            concept.defined = glossary.contains_key(id);
        }
        let known_terms = glossary::known_terms(concept_map.values());
        let index = glossary::TermIndex::new(&known_terms);
        let glossary = glossary
            .into_iter()
            .map(|(id, def)| {
                let concept = &concept_map[&id];
                let referenced = index.references(&def.text, &id);
                let def = Definition {
                    concept_id: id.clone(),
                    referenced,
                    attributes: concept.attributes.clone(),
                    ..def
                };
                (id, def)
            })
            .collect();

        Ok(Ontology {
            name,
            concepts: concept_map,
            edges: edge_set,
            relations,
            glossary,
        })
    }

    /// Runs validation again on a copy of this ontology.
    pub fn revalidate(&self) -> Result<Ontology, ModelError> {
        Ontology::build(self.to_parts())
    }

    /// Decomposes the ontology into buildable parts.
    pub fn to_parts(&self) -> OntologyParts {
        OntologyParts {
            name: self.name.clone(),
            relations: self.relations.clone(),
            concepts: self.concepts.values().cloned().collect(),
            edges: self.edges.iter().cloned().collect(),
            glossary: self.glossary.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn concept(&self, id: &ConceptId) -> Option<&Concept> {
        self.concepts.get(id)
    }

    /// Concepts ordered by id.
    pub fn concepts(&self) -> impl Iterator<Item = &Concept> {
        self.concepts.values()
    }

    pub fn concept_ids(&self) -> impl Iterator<Item = &ConceptId> {
        self.concepts.keys()
    }

    pub fn concept_count(&self) -> usize {
        self.concepts.len()
    }

    /// Edges ordered by (source, relation, target).
    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, edge: &Edge) -> bool {
        self.edges.contains(edge)
    }

    pub fn relations(&self) -> &RelationRegistry {
        &self.relations
    }

    pub fn glossary(&self) -> &BTreeMap<ConceptId, Definition> {
        &self.glossary
    }

    pub fn definition(&self, id: &ConceptId) -> Option<&Definition> {
        self.glossary.get(id)
    }

    /// Edges whose relation takes part in the above-below ranking.
    pub fn hierarchical_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges
            .iter()
            .filter(|e| self.relations.is_hierarchical(&e.relation))
    }

    /// Edges whose relation is a partial order (attribute inheritance).
    pub fn partial_order_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges
            .iter()
            .filter(|e| self.relations.is_partial_order(&e.relation))
    }

    /// Concepts with no concept above them: no outgoing hierarchical edge.
    pub fn roots(&self) -> Vec<ConceptId> {
        let has_parent: BTreeSet<&ConceptId> =
            self.hierarchical_edges().map(|e| &e.source).collect();
        self.concepts
            .keys()
            .filter(|id| !has_parent.contains(id))
            .cloned()
            .collect()
    }

    /// Concepts with nothing below them: no incoming hierarchical edge.
    pub fn leaves(&self) -> Vec<ConceptId> {
        let has_child: BTreeSet<&ConceptId> =
            self.hierarchical_edges().map(|e| &e.target).collect();
        self.concepts
            .keys()
            .filter(|id| !has_child.contains(id))
            .cloned()
            .collect()
    }
}

pub fn roots(o: &Ontology) -> Vec<ConceptId> {
    o.roots()
}

pub fn leaves(o: &Ontology) -> Vec<ConceptId> {
    o.leaves()
}

/// Depth-first search over hierarchical edges, visiting concepts and
/// successors in id order so the reported cycle is deterministic. The
/// returned path starts and ends at the same concept.
fn find_hierarchical_cycle(
    concepts: &BTreeMap<ConceptId, Concept>,
    edges: &BTreeSet<Edge>,
    relations: &RelationRegistry,
) -> Option<Vec<ConceptId>> {
    let mut successors: BTreeMap<&ConceptId, BTreeSet<&ConceptId>> = BTreeMap::new();
    for e in edges.iter().filter(|e| relations.is_hierarchical(&e.relation)) {
        successors.entry(&e.source).or_default().insert(&e.target);
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        OnStack,
        Done,
    }
    let mut mark: BTreeMap<&ConceptId, Mark> = concepts.keys().map(|id| (id, Mark::New)).collect();
    let empty = BTreeSet::new();

    for start in concepts.keys() {
        if mark[start] != Mark::New {
            continue;
        }
        // stack of (node, remaining successors)
        let mut path: Vec<&ConceptId> = vec![start];
        let mut iters = vec![successors.get(start).unwrap_or(&empty).iter()];
        mark.insert(start, Mark::OnStack);
        while let Some(it) = iters.last_mut() {
            match it.next() {
                Some(&next) => match mark[next] {
                    Mark::New => {
                        mark.insert(next, Mark::OnStack);
                        path.push(next);
                        iters.push(successors.get(next).unwrap_or(&empty).iter());
                    }
                    Mark::OnStack => {
                        let pos = path.iter().position(|id| *id == next).expect("on stack");
                        let mut cycle: Vec<ConceptId> =
                            path[pos..].iter().map(|id| (*id).clone()).collect();
                        cycle.push(next.clone());
                        return Some(cycle);
                    }
                    Mark::Done => {}
                },
                None => {
                    let node = path.pop().expect("path tracks iterators");
                    mark.insert(node, Mark::Done);
                    iters.pop();
                }
            }
        }
    }
    None
}
