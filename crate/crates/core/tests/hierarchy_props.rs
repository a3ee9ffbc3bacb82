mod common;

use std::collections::{BTreeMap, BTreeSet};

use ontoforge_core::hierarchy::{effective_attributes, multi_parents, rank};
use ontoforge_core::model::{ConceptId, Edge, Ontology, OntologyParts};
use proptest::prelude::*;

/// Longest upward hierarchical path from `c`, by enumerating every path.
fn longest_path_up(o: &Ontology, c: &ConceptId) -> u32 {
    o.hierarchical_edges()
        .filter(|e| &e.source == c)
        .map(|e| 1 + longest_path_up(o, &e.target))
        .max()
        .unwrap_or(0)
}

/// Every ancestor reachable along partial-order edges, with the length of
/// the shortest such path, by relaxing distances until they stop changing.
fn partial_order_distances(o: &Ontology, c: &ConceptId) -> BTreeMap<ConceptId, usize> {
    let mut dist = BTreeMap::from([(c.clone(), 0usize)]);
    loop {
        let mut changed = false;
        for e in o.partial_order_edges() {
            if let Some(&d) = dist.get(&e.source) {
                let better = dist.get(&e.target).is_none_or(|&t| d + 1 < t);
                if better {
                    dist.insert(e.target.clone(), d + 1);
                    changed = true;
                }
            }
        }
        if !changed {
            return dist;
        }
    }
}

fn expected_attributes(o: &Ontology, c: &ConceptId) -> Vec<String> {
    let mut ancestors: Vec<(usize, ConceptId)> = partial_order_distances(o, c)
        .into_iter()
        .map(|(id, d)| (d, id))
        .collect();
    ancestors.sort();
    let mut out: Vec<String> = Vec::new();
    for (_, id) in ancestors {
        for a in o.concept(&id).unwrap().attributes() {
            if !out.contains(a) {
                out.push(a.clone());
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rank_matches_exhaustive_longest_path(o in common::ontology(12)) {
        let r = rank(&o);
        for id in o.concept_ids() {
            prop_assert_eq!(r.level(id), Some(1 + longest_path_up(&o, id)), "{}", id);
        }
    }

    #[test]
    fn ranking_invariants(o in common::ontology(12)) {
        let r = rank(&o);
        for e in o.hierarchical_edges() {
            prop_assert!(r.level(&e.source) > r.level(&e.target));
        }
        let used: BTreeSet<u32> = r.levels.values().copied().collect();
        prop_assert_eq!(used, (1..=r.depth()).collect::<BTreeSet<_>>());
        prop_assert_eq!(r.rows().count(), o.concept_count());
    }

    #[test]
    fn adding_a_hierarchical_edge_never_lowers_a_level(
        s in common::spec(12),
        pick in (any::<prop::sample::Index>(), any::<prop::sample::Index>(), any::<prop::sample::Index>()),
    ) {
        let o = s.build();
        let n = s.names.len();
        prop_assume!(n >= 2);
        let (a, b) = (pick.0.index(n), pick.1.index(n));
        prop_assume!(a != b);
        let hier = ["genus_species", "whole_part", "categorical", "set_element", "refines"];
        let rel = hier[pick.2.index(hier.len())];
        let mut parts = o.to_parts();
        parts.edges.push(Edge::new(s.id(a.max(b)), rel, s.id(a.min(b))));
        parts.edges.sort();
        parts.edges.dedup();
        let bigger = Ontology::build(parts).unwrap();
        let (before, after) = (rank(&o), rank(&bigger));
        for id in o.concept_ids() {
            prop_assert!(after.level(id) >= before.level(id));
        }
    }

    #[test]
    fn effective_attributes_match_closure_oracle(o in common::ontology(12)) {
        for id in o.concept_ids() {
            let got = effective_attributes(&o, id).unwrap();
            prop_assert_eq!(&got, &expected_attributes(&o, id));
            let own = o.concept(id).unwrap().attributes();
            prop_assert_eq!(&got[..own.len()], own);
        }
    }

    #[test]
    fn effective_attributes_ignore_edge_order(s in common::spec(12), seed in any::<u64>()) {
        let o = s.build();
        let mut parts: OntologyParts = o.to_parts();
        let len = parts.edges.len();
        if len > 1 {
            let k = (seed as usize) % len;
            parts.edges.rotate_left(k);
            parts.edges.reverse();
        }
        let shuffled = Ontology::build(parts).unwrap();
        prop_assert_eq!(&shuffled, &o);
        for id in o.concept_ids() {
            prop_assert_eq!(effective_attributes(&shuffled, id), effective_attributes(&o, id));
        }
    }

    #[test]
    fn multi_parents_lists_partial_order_fan_in(o in common::ontology(12)) {
        let mut parents: BTreeMap<ConceptId, BTreeSet<ConceptId>> = BTreeMap::new();
        for e in o.partial_order_edges() {
            parents.entry(e.source.clone()).or_default().insert(e.target.clone());
        }
        let expected: Vec<(ConceptId, Vec<ConceptId>)> = parents
            .into_iter()
            .filter(|(_, p)| p.len() >= 2)
            .map(|(c, p)| (c, p.into_iter().collect()))
            .collect();
        prop_assert_eq!(multi_parents(&o), expected);
    }
}

#[test]
fn diamond_takes_the_longest_path() {
    // D -> B -> A, D -> C -> A plus a shortcut D -> A
    let o = ontoforge_core::build_ontology(
        "d",
        ["A", "B", "C", "D"]
            .iter()
            .map(|n| ontoforge_core::Concept::new(n).unwrap())
            .collect(),
        vec![
            Edge::new("b", "genus_species", "a"),
            Edge::new("c", "whole_part", "a"),
            Edge::new("d", "genus_species", "b"),
            Edge::new("d", "categorical", "c"),
            Edge::new("d", "genus_species", "a"),
        ],
        BTreeMap::new(),
    )
    .unwrap();
    let r = rank(&o);
    assert_eq!(r.level(&"d".into()), Some(3));
    assert_eq!(longest_path_up(&o, &"d".into()), 2);
}
