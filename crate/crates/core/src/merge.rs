//! Joining ontology fragments through shared categorical-level concepts.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::glossary::Definition;
use crate::model::{Concept, ConceptId, Edge, ModelError, Ontology, OntologyParts, RelationType};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MergePolicy {
    /// Any conflict fails the merge.
    #[default]
    Strict,
    PreferLeft,
    PreferRight,
}

impl FromStr for MergePolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(MergePolicy::Strict),
            "prefer_left" | "prefer-left" => Ok(MergePolicy::PreferLeft),
            "prefer_right" | "prefer-right" => Ok(MergePolicy::PreferRight),
            _ => Err(format!("unknown merge policy {s:?} (strict, prefer_left, prefer_right)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConflictKind {
    DefinitionMismatch,
    KindMismatch,
    RelationFlagMismatch,
}

impl fmt::Display for ConflictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConflictKind::DefinitionMismatch => "definition_mismatch",
            ConflictKind::KindMismatch => "kind_mismatch",
            ConflictKind::RelationFlagMismatch => "relation_flag_mismatch",
        })
    }
}

/// A disagreement about an element present in both fragments. `subject` is
/// a concept id or, for relation conflicts, a relation id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conflict {
    pub kind: ConflictKind,
    pub subject: String,
    pub left: String,
    pub right: String,
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}: {:?} vs {:?}", self.kind, self.subject, self.left, self.right)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ResultStats {
    pub concepts: usize,
    pub edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MergeReport {
    /// Category concepts present in both fragments.
    pub joined_on: Vec<ConceptId>,
    /// Conflicts found; resolved by policy unless the merge is strict.
    pub conflicts: Vec<Conflict>,
    pub result_stats: ResultStats,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MergeError {
    #[error("merge conflicts: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    MergeConflict(Vec<Conflict>),
    #[error("edge {0} targets a concept outside the categorical level")]
    TargetNotCategory(Edge),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn describe_definition(d: Option<&Definition>) -> String {
    match d {
        None => "<none>".to_string(),
        Some(d) if d.manual => format!("{} (manual)", d.text),
        Some(d) => d.text.clone(),
    }
}

fn describe_relation(r: &RelationType) -> String {
    format!(
        "{:?} partial_order={} hierarchical={}",
        r.label, r.is_partial_order, r.is_hierarchical
    )
}

/// Unions two fragments by concept id and edge triple.
///
/// Attributes of shared concepts are unioned left first; unspecified kind
/// axes are filled from the other side. Differing definitions, conflicting
/// kind axes and relation types declared differently are conflicts: fatal
/// under [`MergePolicy::Strict`], otherwise resolved in favour of the
/// preferred side. The union is revalidated, so a merge that closes a
/// hierarchical cycle fails.
pub fn merge(
    a: &Ontology,
    b: &Ontology,
    policy: MergePolicy,
) -> Result<(Ontology, MergeReport), MergeError> {
    let prefer_right = policy == MergePolicy::PreferRight;
    let mut conflicts = Vec::new();

    let mut relations = a.relations().clone();
    for rel in b.relations().iter() {
        match a.relations().get(&rel.id) {
            Some(existing) if existing != rel => {
                conflicts.push(Conflict {
                    kind: ConflictKind::RelationFlagMismatch,
                    subject: rel.id.to_string(),
                    left: describe_relation(existing),
                    right: describe_relation(rel),
                });
            }
            Some(_) => {}
            None => relations.declare(rel.clone())?,
        }
    }
    if prefer_right {
        let mut right_first = b.relations().clone();
        for rel in a.relations().iter() {
            if right_first.get(&rel.id).is_none() {
                right_first.declare(rel.clone())?;
            }
        }
        relations = right_first;
    }

    let mut concepts: BTreeMap<ConceptId, Concept> = BTreeMap::new();
    let mut glossary: BTreeMap<ConceptId, Definition> = BTreeMap::new();
    let mut joined_on = Vec::new();
    for ca in a.concepts() {
        let id = ca.id();
        let Some(cb) = b.concept(id) else {
            concepts.insert(id.clone(), ca.clone());
            if let Some(d) = a.definition(id) {
                glossary.insert(id.clone(), d.clone());
            }
            continue;
        };
        if ca.is_category() && cb.is_category() {
            joined_on.push(id.clone());
        }

        let (da, db) = (a.definition(id), b.definition(id));
        let definitions_differ = match (da, db) {
            (Some(x), Some(y)) => x.text != y.text || x.manual != y.manual,
            _ => false,
        };
        if definitions_differ {
            conflicts.push(Conflict {
                kind: ConflictKind::DefinitionMismatch,
                subject: id.to_string(),
                left: describe_definition(da),
                right: describe_definition(db),
            });
        }
        let axes = ca.kind().conflicting_axes(cb.kind());
        if !axes.is_empty() {
            conflicts.push(Conflict {
                kind: ConflictKind::KindMismatch,
                subject: id.to_string(),
                left: ca.kind().to_string(),
                right: cb.kind().to_string(),
            });
        }

        let (first, second) = if prefer_right { (cb, ca) } else { (ca, cb) };
        let merged = Concept::new(first.name())?
            .with_kind(first.kind().fill_from(second.kind()))
            .with_attributes(ca.attributes().iter().chain(cb.attributes()))
            .with_category(ca.is_category() || cb.is_category());
        concepts.insert(id.clone(), merged);

        let definition = match (da, db) {
            (Some(x), Some(y)) => Some(if prefer_right { y } else { x }),
            (x, y) => x.or(y),
        };
        if let Some(d) = definition {
            glossary.insert(id.clone(), d.clone());
        }
    }
    for cb in b.concepts().filter(|c| a.concept(c.id()).is_none()) {
        concepts.insert(cb.id().clone(), cb.clone());
        if let Some(d) = b.definition(cb.id()) {
            glossary.insert(cb.id().clone(), d.clone());
        }
    }

    if policy == MergePolicy::Strict && !conflicts.is_empty() {
        return Err(MergeError::MergeConflict(conflicts));
    }

    let mut edges: Vec<Edge> = a.edges().cloned().collect();
    edges.extend(b.edges().filter(|e| !a.contains_edge(e)).cloned());

    let merged = Ontology::build(OntologyParts {
        name: if prefer_right { b.name() } else { a.name() }.to_string(),
        relations,
        concepts: concepts.into_values().collect(),
        edges,
        glossary,
    })?;

    let mut notes = Vec::new();
    if joined_on.is_empty() {
        notes.push("no shared category concepts; result is a disjoint union".to_string());
    }
    let report = MergeReport {
        joined_on,
        conflicts,
        result_stats: ResultStats {
            concepts: merged.concept_count(),
            edges: merged.edge_count(),
        },
        notes,
    };
    Ok((merged, report))
}

/// Adds edges that attach domain concepts to categorical-level concepts.
pub fn link_to_categories(o: &Ontology, category_edges: &[Edge]) -> Result<Ontology, MergeError> {
    for e in category_edges {
        if let Some(target) = o.concept(&e.target) {
            if !target.is_category() {
                return Err(MergeError::TargetNotCategory(e.clone()));
            }
        }
    }
    if category_edges.is_empty() {
        return Ok(o.clone());
    }
    let mut parts = o.to_parts();
    parts.edges.extend(category_edges.iter().cloned());
    Ok(Ontology::build(parts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{lower, parse};
    use crate::model::{CATEGORICAL, GENUS_SPECIES};

    fn onto(src: &str) -> Ontology {
        lower(&parse(src).unwrap()).unwrap()
    }

    const BASE: &str = "ontology \"t\"\n\
        concept \"Информатика\" { category; def: \"Наука.\" }\n\
        concept \"Вычислительная техника\" { category }\n\
        concept \"Программирование\" { attrs: язык }\n\
        edge \"Программирование\" -genus_species-> \"Информатика\"\n";

    #[test]
    fn merge_with_itself_is_identity() {
        let o = onto(BASE);
        let (m, report) = merge(&o, &o, MergePolicy::Strict).unwrap();
        assert_eq!(m, o);
        assert!(report.conflicts.is_empty());
        assert_eq!(report.joined_on.len(), 2);
        assert_eq!(report.result_stats, ResultStats { concepts: 3, edges: 1 });
    }

    #[test]
    fn definition_mismatch_is_fatal_when_strict() {
        let a = onto(BASE);
        let b = onto(&BASE.replace("Наука.", "Другая формулировка."));
        let err = merge(&a, &b, MergePolicy::Strict).unwrap_err();
        let MergeError::MergeConflict(conflicts) = err else { panic!("{err}") };
        assert_eq!(conflicts.len(), 1);
        assert_eq!(conflicts[0].kind, ConflictKind::DefinitionMismatch);
        assert_eq!(conflicts[0].subject, "informatika");

        let (left, _) = merge(&a, &b, MergePolicy::PreferLeft).unwrap();
        assert_eq!(left.definition(&"informatika".into()).unwrap().text, "Наука.");
        let (right, report) = merge(&a, &b, MergePolicy::PreferRight).unwrap();
        assert_eq!(right.definition(&"informatika".into()).unwrap().text, "Другая формулировка.");
        assert_eq!(report.conflicts.len(), 1);
    }

    #[test]
    fn kind_and_relation_conflicts() {
        let a = onto("ontology \"a\"\nrelation uses \"x\"\nconcept \"A\" { kind: whole_vs_part=whole }");
        let b = onto("ontology \"b\"\nrelation uses \"x\" hierarchical\nconcept \"A\" { kind: whole_vs_part=part }");
        let MergeError::MergeConflict(conflicts) = merge(&a, &b, MergePolicy::Strict).unwrap_err() else {
            panic!()
        };
        let kinds: Vec<ConflictKind> = conflicts.iter().map(|c| c.kind).collect();
        assert_eq!(kinds, [ConflictKind::RelationFlagMismatch, ConflictKind::KindMismatch]);
        let (m, _) = merge(&a, &b, MergePolicy::PreferRight).unwrap();
        assert!(m.relations().is_hierarchical(&"uses".into()));
        assert_eq!(m.name(), "b");
    }

    #[test]
    fn attributes_union_left_first() {
        let a = onto("ontology \"a\"\nconcept \"A\" { attrs: x, y }");
        let b = onto("ontology \"b\"\nconcept \"A\" { attrs: z, x; kind: whole_vs_part=part }");
        let (m, report) = merge(&a, &b, MergePolicy::Strict).unwrap();
        let c = m.concept(&"a".into()).unwrap();
        assert_eq!(c.attributes(), ["x", "y", "z"]);
        assert_eq!(c.kind().whole_vs_part, crate::model::WholePart::Part);
        assert!(report.joined_on.is_empty());
        assert_eq!(report.notes.len(), 1);
    }

    #[test]
    fn union_closing_a_cycle_fails() {
        let a = onto("ontology \"a\"\nconcept \"A\" {}\nconcept \"B\" {}\nedge \"A\" -genus_species-> \"B\"");
        let b = onto("ontology \"b\"\nconcept \"A\" {}\nconcept \"B\" {}\nedge \"B\" -whole_part-> \"A\"");
        assert!(matches!(
            merge(&a, &b, MergePolicy::Strict),
            Err(MergeError::Model(ModelError::HierarchicalCycle(_)))
        ));
    }

    #[test]
    fn linking_to_categories() {
        let o = onto(
            "ontology \"t\"\nconcept \"Информатика\" { category }\nconcept \"Вычислительная техника\" {}\nconcept \"Программирование\" {}",
        );
        let ok = Edge::new("vychislitelnaya-tekhnika", CATEGORICAL, "informatika");
        let linked = link_to_categories(&o, std::slice::from_ref(&ok)).unwrap();
        assert!(linked.contains_edge(&ok));

        let bad = Edge::new("programmirovanie", GENUS_SPECIES, "vychislitelnaya-tekhnika");
        assert_eq!(link_to_categories(&o, std::slice::from_ref(&bad)), Err(MergeError::TargetNotCategory(bad)));
        assert_eq!(link_to_categories(&o, &[]).unwrap(), o);
    }
}
