//! Glossary definitions and dictionary scanning of definition text.
//!
//! A definition names the concepts it is built from. Those references are
//! found by a case-insensitive, longest-match-first scan of the text against
//! the names of all known concepts; whole words only, no morphology.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::model::{Concept, ConceptId, Edge, Ontology, RelationId, GENUS_SPECIES};

/// A glossary entry: the interpretation of one concept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub concept_id: ConceptId,
    pub text: String,
    /// Concepts mentioned in `text`, in order of first occurrence.
    pub referenced: Vec<ConceptId>,
    pub attributes: Vec<String>,
    /// Authored by the ontology developer rather than taken from a dictionary.
    pub manual: bool,
}

impl Definition {
    /// A dictionary definition. `concept_id`, `referenced` and `attributes`
    /// are filled in when the ontology is built.
    pub fn new(text: impl Into<String>) -> Self {
        Definition {
            concept_id: ConceptId::from_slug(String::new()),
            text: text.into(),
            referenced: Vec::new(),
            attributes: Vec::new(),
            manual: false,
        }
    }

    pub fn manual(text: impl Into<String>) -> Self {
        Definition {
            manual: true,
            ..Definition::new(text)
        }
    }
}

/// Name-to-id dictionary of the given concepts.
pub fn known_terms<'a>(concepts: impl IntoIterator<Item = &'a Concept>) -> BTreeMap<String, ConceptId> {
    concepts
        .into_iter()
        .map(|c| (c.name().to_string(), c.id().clone()))
        .collect()
}

/// One dictionary hit in a text. Offsets are byte positions in the original
/// (unfolded) text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermMatch {
    pub id: ConceptId,
    pub start: usize,
    pub end: usize,
    pub text: String,
}

impl fmt::Display for TermMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}:{}", self.start, self.end, self.text)
    }
}

fn is_word(c: char) -> bool {
    c.is_alphanumeric()
}

/// Case-folded dictionary, built once and reused for many texts.
pub struct TermIndex<'a> {
    /// Folded term and its concept, longest first.
    terms: Vec<(Vec<char>, &'a ConceptId)>,
    /// Indices into `terms` by first folded char, preserving that order.
    by_first: HashMap<char, Vec<usize>>,
}

impl<'a> TermIndex<'a> {
    pub fn new(known_terms: &'a BTreeMap<String, ConceptId>) -> Self {
        let mut terms: Vec<(Vec<char>, &ConceptId)> = known_terms
            .iter()
            .map(|(name, id)| (name.trim().chars().flat_map(char::to_lowercase).collect::<Vec<_>>(), id))
            .filter(|(t, _)| !t.is_empty())
            .collect();
        terms.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.cmp(b)));
        let mut by_first: HashMap<char, Vec<usize>> = HashMap::new();
        for (i, (t, _)) in terms.iter().enumerate() {
            by_first.entry(t[0]).or_default().push(i);
        }
        TermIndex { terms, by_first }
    }

    /// Every non-overlapping match in `text`, scanning left to right and
    /// taking the longest term at each position. Terms mapping to `self_id`
    /// are skipped.
    pub fn scan(&self, text: &str, self_id: &ConceptId) -> Vec<TermMatch> {
        // (folded char, byte start, byte end) of the original char it came from
        let folded: Vec<(char, usize, usize)> = text
            .char_indices()
            .flat_map(|(i, c)| c.to_lowercase().map(move |lc| (lc, i, i + c.len_utf8())))
            .collect();

        let word: Vec<bool> = folded.iter().map(|f| is_word(f.0)).collect();

        let n = folded.len();
        let mut out = Vec::new();
        let mut i = 0;
        while i < n {
            let starts_word = i == 0 || !word[i - 1] || !word[i];
            let hit = starts_word
                .then(|| self.by_first.get(&folded[i].0))
                .flatten()
                .and_then(|candidates| {
                    candidates.iter().map(|&k| &self.terms[k]).find(|(term, id)| {
                        let end = i + term.len();
                        *id != self_id
                            && end <= n
                            && folded[i..end].iter().map(|f| f.0).eq(term.iter().copied())
                            && (end == n || !word[end] || !is_word(term[term.len() - 1]))
                    })
                });
            match hit {
                Some((term, id)) => {
                    let start = folded[i].1;
                    let end = folded[i + term.len() - 1].2;
                    out.push(TermMatch {
                        id: (*id).clone(),
                        start,
                        end,
                        text: text[start..end].to_string(),
                    });
                    i += term.len();
                    // a char folding to several chars must not be split
                    while i < n && folded[i].1 < end {
                        i += 1;
                    }
                }
                None => i += 1,
            }
        }
        out
    }

    /// Ids mentioned in `text`, duplicate-free, in order of first
    /// occurrence, never including `self_id`.
    pub fn references(&self, text: &str, self_id: &ConceptId) -> Vec<ConceptId> {
        let mut seen = BTreeSet::new();
        self.scan(text, self_id)
            .into_iter()
            .filter(|m| seen.insert(m.id.clone()))
            .map(|m| m.id)
            .collect()
    }
}

/// One-off [`TermIndex::scan`].
pub fn scan_terms(
    text: &str,
    known_terms: &BTreeMap<String, ConceptId>,
    self_id: &ConceptId,
) -> Vec<TermMatch> {
    TermIndex::new(known_terms).scan(text, self_id)
}

/// One-off [`TermIndex::references`].
pub fn extract_references(
    def_text: &str,
    known_terms: &BTreeMap<String, ConceptId>,
    self_id: &ConceptId,
) -> Vec<ConceptId> {
    TermIndex::new(known_terms).references(def_text, self_id)
}

/// An edge proposed from a definition's references.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuggestedEdge {
    pub source: ConceptId,
    pub relation: RelationId,
    pub target: ConceptId,
    pub evidence: TermMatch,
}

impl SuggestedEdge {
    pub fn edge(&self) -> Edge {
        Edge::new(&self.source, &self.relation, &self.target)
    }
}

/// Proposes `defined -genus_species-> referenced` for every reference whose
/// pair of concepts is not already joined by an edge in either direction.
pub fn suggest_edges(o: &Ontology) -> Vec<SuggestedEdge> {
    let connected: BTreeSet<(&ConceptId, &ConceptId)> = o
        .edges()
        .flat_map(|e| [(&e.source, &e.target), (&e.target, &e.source)])
        .collect();
    let terms = known_terms(o.concepts());
    let index = TermIndex::new(&terms);

    let mut out = Vec::new();
    for (id, def) in o.glossary() {
        let mut seen = BTreeSet::new();
        for m in index.scan(&def.text, id) {
            if &m.id == id || !seen.insert(m.id.clone()) || connected.contains(&(id, &m.id)) {
                continue;
            }
            out.push(SuggestedEdge {
                source: id.clone(),
                relation: RelationId::new(GENUS_SPECIES),
                target: m.id.clone(),
                evidence: m,
            });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverageStatus {
    /// Dictionary definition.
    Defined,
    /// Definition authored by the developer.
    Manual,
    Undefined,
}

impl fmt::Display for CoverageStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverageStatus::Defined => "defined",
            CoverageStatus::Manual => "manual",
            CoverageStatus::Undefined => "undefined",
        })
    }
}

/// One row per concept, ordered by id.
pub fn coverage_report(o: &Ontology) -> Vec<(ConceptId, CoverageStatus)> {
    o.concepts()
        .map(|c| {
            let status = match o.definition(c.id()) {
                Some(d) if d.manual => CoverageStatus::Manual,
                Some(_) => CoverageStatus::Defined,
                None => CoverageStatus::Undefined,
            };
            (c.id().clone(), status)
        })
        .collect()
}
