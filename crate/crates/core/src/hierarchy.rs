//! Above-below ranking, subclass structure and attribute inheritance.
//!
//! A concept's level is one more than the length of the longest
//! hierarchical path from it up to a root, so every concept sits strictly
//! below everything it is attached to. Attribute inheritance is narrower:
//! it follows partial-order relations only.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::model::{ConceptId, Ontology};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HierarchyError {
    #[error("unknown concept {0}")]
    UnknownConcept(ConceptId),
}

/// Level assignment for every concept; level 1 is the top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ranking {
    pub levels: BTreeMap<ConceptId, u32>,
    /// `(level, concept ids)` ascending by level, ids sorted.
    pub by_level: Vec<(u32, Vec<ConceptId>)>,
}

impl Ranking {
    pub fn level(&self, id: &ConceptId) -> Option<u32> {
        self.levels.get(id).copied()
    }

    pub fn depth(&self) -> u32 {
        self.by_level.last().map_or(0, |(l, _)| *l)
    }

    /// `(level, id)` rows ordered by level, then id.
    pub fn rows(&self) -> impl Iterator<Item = (u32, &ConceptId)> {
        self.by_level
            .iter()
            .flat_map(|(level, ids)| ids.iter().map(move |id| (*level, id)))
    }
}

/// Ranks every concept by longest hierarchical path to a root.
pub fn rank(o: &Ontology) -> Ranking {
    let mut out_degree: BTreeMap<&ConceptId, usize> = o.concept_ids().map(|id| (id, 0)).collect();
    let mut children: BTreeMap<&ConceptId, Vec<&ConceptId>> = BTreeMap::new();
    for e in o.hierarchical_edges() {
        *out_degree.get_mut(&e.source).expect("validated endpoint") += 1;
        children.entry(&e.target).or_default().push(&e.source);
    }

    let mut levels: BTreeMap<ConceptId, u32> = BTreeMap::new();
    let mut ready: VecDeque<&ConceptId> = out_degree
        .iter()
        .filter(|(_, d)| **d == 0)
        .map(|(id, _)| *id)
        .collect();
    let mut level_of: BTreeMap<&ConceptId, u32> = ready.iter().map(|id| (*id, 1)).collect();

    // Kahn elimination from the roots downwards; a concept is final once all
    // of its parents are.
    while let Some(node) = ready.pop_front() {
        let level = level_of[node];
        levels.insert(node.clone(), level);
        for &child in children.get(node).map(Vec::as_slice).unwrap_or(&[]) {
            let entry = level_of.entry(child).or_insert(0);
            *entry = (*entry).max(level + 1);
            let d = out_degree.get_mut(child).expect("validated endpoint");
            *d -= 1;
            if *d == 0 {
                ready.push_back(child);
            }
        }
    }
    debug_assert_eq!(levels.len(), o.concept_count(), "hierarchy is acyclic");

    let mut grouped: BTreeMap<u32, Vec<ConceptId>> = BTreeMap::new();
    for (id, level) in &levels {
        grouped.entry(*level).or_default().push(id.clone());
    }
    Ranking {
        levels,
        by_level: grouped.into_iter().collect(),
    }
}

fn require(o: &Ontology, c: &ConceptId) -> Result<(), HierarchyError> {
    if o.concept(c).is_some() {
        Ok(())
    } else {
        Err(HierarchyError::UnknownConcept(c.clone()))
    }
}

/// Concepts attached directly below `c` by a hierarchical edge.
pub fn direct_subclasses(o: &Ontology, c: &ConceptId) -> Result<Vec<ConceptId>, HierarchyError> {
    require(o, c)?;
    let subs: BTreeSet<&ConceptId> = o
        .hierarchical_edges()
        .filter(|e| &e.target == c)
        .map(|e| &e.source)
        .collect();
    Ok(subs.into_iter().cloned().collect())
}

/// Own attributes followed by those inherited along partial-order edges.
///
/// Ancestors are visited nearest generation first (parents, then
/// grandparents, ...), ties broken by id. Whole-part and other
/// non-partial-order relations do not propagate attributes.
pub fn effective_attributes(o: &Ontology, c: &ConceptId) -> Result<Vec<String>, HierarchyError> {
    require(o, c)?;
    let mut parents: BTreeMap<&ConceptId, BTreeSet<&ConceptId>> = BTreeMap::new();
    for e in o.partial_order_edges() {
        parents.entry(&e.source).or_default().insert(&e.target);
    }

    let mut generation: BTreeMap<&ConceptId, usize> = BTreeMap::new();
    let mut queue = VecDeque::from([(c, 0usize)]);
    generation.insert(c, 0);
    while let Some((node, g)) = queue.pop_front() {
        for &p in parents.get(node).into_iter().flatten() {
            if !generation.contains_key(p) {
                generation.insert(p, g + 1);
                queue.push_back((p, g + 1));
            }
        }
    }
    let mut ancestors: Vec<(usize, &ConceptId)> = generation
        .into_iter()
        .filter(|(id, _)| *id != c)
        .map(|(id, g)| (g, id))
        .collect();
    ancestors.sort();

    let mut attrs: Vec<String> = Vec::new();
    let own = o.concept(c).expect("checked above");
    for attr in own
        .attributes()
        .iter()
        .chain(ancestors.iter().flat_map(|(_, id)| o.concept(id).expect("validated").attributes()))
    {
        if !attrs.contains(attr) {
            attrs.push(attr.clone());
        }
    }
    Ok(attrs)
}

/// Concepts with two or more distinct partial-order parents.
pub fn multi_parents(o: &Ontology) -> Vec<(ConceptId, Vec<ConceptId>)> {
    let mut parents: BTreeMap<&ConceptId, BTreeSet<&ConceptId>> = BTreeMap::new();
    for e in o.partial_order_edges() {
        parents.entry(&e.source).or_default().insert(&e.target);
    }
    parents
        .into_iter()
        .filter(|(_, ps)| ps.len() >= 2)
        .map(|(c, ps)| (c.clone(), ps.into_iter().cloned().collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_ontology, Concept, Edge, GENUS_SPECIES, PARTICIPANT, WHOLE_PART};

    fn onto(specs: &[(&str, &[&str])], edges: &[(&str, &str, &str)]) -> Ontology {
        let concepts = specs
            .iter()
            .map(|(n, attrs)| Concept::new(n).unwrap().with_attributes(attrs.iter()))
            .collect();
        let edges = edges.iter().map(|(s, r, t)| Edge::new(*s, *r, *t)).collect();
        build_ontology("t", concepts, edges, BTreeMap::new()).unwrap()
    }

    fn ids(v: &[&str]) -> Vec<ConceptId> {
        v.iter().map(|s| ConceptId::from(*s)).collect()
    }

    #[test]
    fn chain_levels() {
        let o = onto(
            &[("A", &[]), ("B", &[]), ("C", &[])],
            &[("c", GENUS_SPECIES, "b"), ("b", GENUS_SPECIES, "a")],
        );
        let r = rank(&o);
        assert_eq!(r.level(&"a".into()), Some(1));
        assert_eq!(r.level(&"b".into()), Some(2));
        assert_eq!(r.level(&"c".into()), Some(3));
        assert_eq!(r.depth(), 3);
    }

    #[test]
    fn longest_path_not_shortest() {
        // D reaches A directly and through B.
        let o = onto(
            &[("A", &[]), ("B", &[]), ("D", &[])],
            &[("d", GENUS_SPECIES, "b"), ("b", GENUS_SPECIES, "a"), ("d", WHOLE_PART, "a")],
        );
        assert_eq!(rank(&o).level(&"d".into()), Some(3));
    }

    #[test]
    fn non_hierarchical_edges_do_not_rank() {
        let o = onto(&[("A", &[]), ("B", &[])], &[("b", PARTICIPANT, "a")]);
        let r = rank(&o);
        assert_eq!(r.by_level, vec![(1, ids(&["a", "b"]))]);
    }

    #[test]
    fn subclasses() {
        let o = onto(
            &[("A", &[]), ("B", &[]), ("C", &[])],
            &[("b", GENUS_SPECIES, "a"), ("c", WHOLE_PART, "a"), ("c", GENUS_SPECIES, "a")],
        );
        assert_eq!(direct_subclasses(&o, &"a".into()).unwrap(), ids(&["b", "c"]));
        assert!(direct_subclasses(&o, &"b".into()).unwrap().is_empty());
        assert_eq!(
            direct_subclasses(&o, &"zz".into()),
            Err(HierarchyError::UnknownConcept("zz".into()))
        );
    }

    #[test]
    fn inheritance_follows_partial_order_only() {
        let gs = onto(&[("A", &["a1"]), ("B", &["b1"])], &[("b", GENUS_SPECIES, "a")]);
        assert_eq!(effective_attributes(&gs, &"b".into()).unwrap(), ["b1", "a1"]);
        let wp = onto(&[("A", &["a1"]), ("B", &["b1"])], &[("b", WHOLE_PART, "a")]);
        assert_eq!(effective_attributes(&wp, &"b".into()).unwrap(), ["b1"]);
    }

    #[test]
    fn inheritance_chain_and_dedup() {
        let o = onto(
            &[("A", &["a1", "shared"]), ("B", &["b1", "shared"]), ("C", &["c1"])],
            &[("c", GENUS_SPECIES, "b"), ("b", GENUS_SPECIES, "a")],
        );
        assert_eq!(
            effective_attributes(&o, &"c".into()).unwrap(),
            ["c1", "b1", "shared", "a1"]
        );
    }

    #[test]
    fn multiple_parents() {
        let both = onto(
            &[("A", &["a1"]), ("B", &["b1"]), ("C", &[])],
            &[("c", GENUS_SPECIES, "a"), ("c", GENUS_SPECIES, "b")],
        );
        assert_eq!(multi_parents(&both), vec![("c".into(), ids(&["a", "b"]))]);
        assert_eq!(effective_attributes(&both, &"c".into()).unwrap(), ["a1", "b1"]);

        let mixed = onto(
            &[("A", &[]), ("B", &[]), ("C", &[])],
            &[("c", GENUS_SPECIES, "a"), ("c", WHOLE_PART, "b")],
        );
        assert!(multi_parents(&mixed).is_empty());
    }
}
