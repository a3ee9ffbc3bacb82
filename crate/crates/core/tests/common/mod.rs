//! Random ontologies for property tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use ontoforge_core::glossary::Definition;
use ontoforge_core::model::{
    Concept, ConceptId, ConceptKind, Edge, Ontology, OntologyParts, RelationId, RelationRegistry,
    RelationType, BUILTIN_RELATIONS,
};
use proptest::prelude::*;

pub const NAMES: [&str; 12] = [
    "Альфа",
    "Бета",
    "Гамма",
    "Дельта",
    "Эпсилон",
    "Дзета",
    "Lambda",
    "Mu",
    "Тета «кавычки» \"q\"",
    "Йота-каппа",
    "Омега system",
    "Сигма\\слэш",
];

const ATTRS: [&str; 5] = ["масса", "цвет", "a1", "число ядер", "speed"];

/// Relations drawn by the generator: the builtin set plus two user ones.
pub fn relations() -> RelationRegistry {
    let mut r = RelationRegistry::builtin();
    r.declare(RelationType::new("influences", "влиять", false, false)).unwrap();
    r.declare(RelationType::new("refines", "уточнять", true, true)).unwrap();
    r
}

pub fn relation_ids() -> Vec<RelationId> {
    BUILTIN_RELATIONS
        .iter()
        .map(|(id, ..)| RelationId::new(*id))
        .chain([RelationId::new("influences"), RelationId::new("refines")])
        .collect()
}

#[derive(Clone, Debug)]
pub struct Spec {
    pub names: Vec<&'static str>,
    /// `(from, to, relation index)`; hierarchical arcs are oriented so the
    /// source has the larger index, which keeps the hierarchy acyclic.
    pub edges: Vec<(usize, usize, usize)>,
    pub attrs: Vec<Vec<&'static str>>,
    pub kinds: Vec<[u8; 4]>,
    pub category: Vec<bool>,
    pub defs: Vec<Option<(Vec<usize>, bool)>>,
}

fn kind_from(axes: [u8; 4]) -> ConceptKind {
    const VALUES: [[&str; 2]; 4] = [
        ["generic", "specific"],
        ["whole", "part"],
        ["singular", "general"],
        ["concrete", "abstract"],
    ];
    const KEYS: [&str; 4] = [
        "generic_vs_specific",
        "whole_vs_part",
        "singular_vs_general",
        "concrete_vs_abstract",
    ];
    let mut k = ConceptKind::default();
    for i in 0..4 {
        if axes[i] > 0 {
            k.set(KEYS[i], VALUES[i][usize::from(axes[i] - 1)]).unwrap();
        }
    }
    k
}

impl Spec {
    pub fn edge_list(&self) -> Vec<Edge> {
        let rels = relation_ids();
        let registry = relations();
        let mut out = BTreeSet::new();
        for &(a, b, r) in &self.edges {
            let rel = &rels[r];
            let (s, t) = if registry.is_hierarchical(rel) {
                (a.max(b), a.min(b))
            } else {
                (a, b)
            };
            if s != t {
                out.insert(Edge::new(self.id(s), rel, self.id(t)));
            }
        }
        out.into_iter().collect()
    }

    pub fn id(&self, i: usize) -> ConceptId {
        ConceptId::from_name(self.names[i]).unwrap()
    }

    pub fn parts(&self) -> OntologyParts {
        let concepts = (0..self.names.len())
            .map(|i| {
                Concept::new(self.names[i])
                    .unwrap()
                    .with_kind(kind_from(self.kinds[i]))
                    .with_attributes(self.attrs[i].iter())
                    .with_category(self.category[i])
            })
            .collect();
        let mut glossary = BTreeMap::new();
        for (i, d) in self.defs.iter().enumerate() {
            if let Some((mentions, manual)) = d {
                let mut text = String::from("Определение:");
                for &m in mentions {
                    text.push(' ');
                    text.push_str(NAMES[m]);
                    text.push(',');
                }
                text.push_str(" и т. д.\n\tконец.");
                let def = if *manual {
                    Definition::manual(text)
                } else {
                    Definition::new(text)
                };
                glossary.insert(self.id(i), def);
            }
        }
        OntologyParts {
            name: "Тестовая онтология".to_string(),
            relations: relations(),
            concepts,
            edges: self.edge_list(),
            glossary,
        }
    }

    pub fn build(&self) -> Ontology {
        Ontology::build(self.parts()).expect("generated ontologies are valid")
    }
}

pub fn spec(max_concepts: usize) -> impl Strategy<Value = Spec> {
    (1..=max_concepts).prop_flat_map(|n| {
        let rel_count = relation_ids().len();
        (
            Just(NAMES.to_vec()).prop_shuffle(),
            prop::collection::vec((0..n, 0..n, 0..rel_count), 0..=3 * n),
            prop::collection::vec(prop::sample::subsequence(ATTRS.to_vec(), 0..=2), n),
            prop::collection::vec(prop::array::uniform4(0u8..3), n),
            prop::collection::vec(prop::bool::weighted(0.25), n),
            prop::collection::vec(
                prop::option::weighted(0.7, (prop::collection::vec(0..NAMES.len(), 0..3), any::<bool>())),
                n,
            ),
        )
            .prop_map(move |(names, edges, attrs, kinds, category, defs)| Spec {
                names: names[..n].to_vec(),
                edges,
                attrs,
                kinds,
                category,
                defs,
            })
    })
}

pub fn ontology(max_concepts: usize) -> impl Strategy<Value = Ontology> {
    spec(max_concepts).prop_map(|s| s.build())
}

pub fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/computing-fragment.onto")
}

pub fn fixture() -> Ontology {
    let text = std::fs::read_to_string(fixture_path()).unwrap();
    ontoforge_core::dsl::lower(&ontoforge_core::dsl::parse(&text).unwrap()).unwrap()
}
