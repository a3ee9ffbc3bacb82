//! Typed semantic relations and the relation registry.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ModelError;

/// Identifier of a relation type, e.g. `genus_species`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RelationId(String);

impl RelationId {
    pub fn new(id: impl Into<String>) -> Self {
        RelationId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Relation ids are ASCII identifiers: a letter or `_` followed by
    /// letters, digits or `_`.
    pub fn is_valid(id: &str) -> bool {
        let mut chars = id.chars();
        matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for RelationId {
    fn from(s: &str) -> Self {
        RelationId(s.to_string())
    }
}

pub const GENUS_SPECIES: &str = "genus_species";
pub const WHOLE_PART: &str = "whole_part";
pub const CATEGORICAL: &str = "categorical";
pub const SET_ELEMENT: &str = "set_element";
pub const PARTICIPANT: &str = "participant";
pub const REGULATES: &str = "regulates";
pub const IS_CHARACTERISTIC_OF: &str = "is_characteristic_of";
pub const DEVELOPED_BY: &str = "developed_by";
pub const CONTAINED_IN: &str = "contained_in";

/// `(id, source label, partial order, hierarchical)` for every built-in relation.
pub const BUILTIN_RELATIONS: [(&str, &str, bool, bool); 9] = [
    (GENUS_SPECIES, "род-вид", true, true),
    (WHOLE_PART, "целое-часть", false, true),
    (CATEGORICAL, "категорное_отношение", false, true),
    (SET_ELEMENT, "множество-элемент", false, true),
    (PARTICIPANT, "участник", false, false),
    (REGULATES, "регламентировать", false, false),
    (IS_CHARACTERISTIC_OF, "быть_характеристикой", false, false),
    (DEVELOPED_BY, "разработать", false, false),
    (CONTAINED_IN, "содержаться_в", false, false),
];

/// A relation type. Hierarchical relations take part in the above-below
/// ranking; partial-order relations additionally carry attribute inheritance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationType {
    pub id: RelationId,
    pub label: String,
    pub is_partial_order: bool,
    pub is_hierarchical: bool,
}

impl RelationType {
    pub fn new(
        id: impl Into<String>,
        label: impl Into<String>,
        is_partial_order: bool,
        is_hierarchical: bool,
    ) -> Self {
        RelationType {
            id: RelationId::new(id),
            label: label.into(),
            is_partial_order,
            is_hierarchical,
        }
    }

    pub fn is_builtin(&self) -> bool {
        BUILTIN_RELATIONS
            .iter()
            .any(|(id, label, po, h)| {
                *id == self.id.as_str()
                    && *label == self.label
                    && *po == self.is_partial_order
                    && *h == self.is_hierarchical
            })
    }
}

/// Relation types keyed by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationRegistry {
    types: BTreeMap<RelationId, RelationType>,
}

impl Default for RelationRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl RelationRegistry {
    /// The nine built-in relation types.
    pub fn builtin() -> Self {
        let types = BUILTIN_RELATIONS
            .iter()
            .map(|&(id, label, po, h)| {
                let rel = RelationType::new(id, label, po, h);
                (rel.id.clone(), rel)
            })
            .collect();
        RelationRegistry { types }
    }

    /// Adds a user-declared relation type. Re-declaring an existing id is
    /// accepted only when the declaration is identical.
    pub fn declare(&mut self, rel: RelationType) -> Result<(), ModelError> {
        if !RelationId::is_valid(rel.id.as_str()) {
            return Err(ModelError::InvalidRelationId(rel.id.to_string()));
        }
        if rel.is_partial_order && !rel.is_hierarchical {
            return Err(ModelError::PartialOrderNotHierarchical(rel.id));
        }
        match self.types.get(&rel.id) {
            Some(existing) if *existing == rel => Ok(()),
            Some(_) => Err(ModelError::RelationRedefined(rel.id)),
            None => {
                self.types.insert(rel.id.clone(), rel);
                Ok(())
            }
        }
    }

    pub fn get(&self, id: &RelationId) -> Option<&RelationType> {
        self.types.get(id)
    }

    pub fn contains(&self, id: &RelationId) -> bool {
        self.types.contains_key(id)
    }

    pub fn is_hierarchical(&self, id: &RelationId) -> bool {
        self.types.get(id).is_some_and(|r| r.is_hierarchical)
    }

    pub fn is_partial_order(&self, id: &RelationId) -> bool {
        self.types.get(id).is_some_and(|r| r.is_partial_order)
    }

    /// All relation types ordered by id.
    pub fn iter(&self) -> impl Iterator<Item = &RelationType> {
        self.types.values()
    }

    /// Relation types that are not part of the built-in set.
    pub fn user_declared(&self) -> impl Iterator<Item = &RelationType> {
        self.types.values().filter(|r| !r.is_builtin())
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_registry_flags() {
        let reg = RelationRegistry::builtin();
        assert_eq!(reg.len(), 9);
        assert!(reg.is_partial_order(&"genus_species".into()));
        assert!(!reg.is_partial_order(&"whole_part".into()));
        assert!(reg.is_hierarchical(&"whole_part".into()));
        assert!(!reg.is_hierarchical(&"participant".into()));
        for rel in reg.iter() {
            assert!(!rel.is_partial_order || rel.is_hierarchical, "{}", rel.id);
            assert!(rel.is_builtin());
        }
    }

    #[test]
    fn declare_rejects_inconsistent_flags() {
        let mut reg = RelationRegistry::builtin();
        assert_eq!(
            reg.declare(RelationType::new("broader", "шире", true, false)),
            Err(ModelError::PartialOrderNotHierarchical("broader".into()))
        );
        assert_eq!(
            reg.declare(RelationType::new("whole_part", "целое-часть", true, true)),
            Err(ModelError::RelationRedefined("whole_part".into()))
        );
        assert!(matches!(
            reg.declare(RelationType::new("bad id", "x", false, false)),
            Err(ModelError::InvalidRelationId(_))
        ));
        reg.declare(RelationType::new("whole_part", "целое-часть", false, true)).unwrap();
        reg.declare(RelationType::new("uses", "использовать", false, false)).unwrap();
        assert_eq!(reg.len(), 10);
        assert_eq!(reg.user_declared().count(), 1);
    }
}
