use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::glossary::Definition;
use crate::model::{
    Concept, ConceptId, ConceptKind, Edge, ModelError, Ontology, OntologyParts, RelationId,
    RelationRegistry, RelationType,
};

/// Canonical JSON: keys sorted, two-space indentation, trailing newline.
pub fn export_json(o: &Ontology) -> String {
    let relations: Vec<Value> = o
        .relations()
        .iter()
        .map(|r| {
            json!({
                "id": r.id.as_str(),
                "label": r.label,
                "partial_order": r.is_partial_order,
                "hierarchical": r.is_hierarchical,
            })
        })
        .collect();
    let concepts: Vec<Value> = o
        .concepts()
        .map(|c| {
            let kind: Map<String, Value> = c
                .kind()
                .pairs()
                .iter()
                .map(|(axis, value)| (axis.to_string(), Value::from(*value)))
                .collect();
            json!({
                "id": c.id().as_str(),
                "name": c.name(),
                "kind": kind,
                "attributes": c.attributes(),
                "is_category": c.is_category(),
                "defined": c.is_defined(),
            })
        })
        .collect();
    let edges: Vec<Value> = o
        .edges()
        .map(|e| {
            json!({
                "source": e.source.as_str(),
                "relation": e.relation.as_str(),
                "target": e.target.as_str(),
            })
        })
        .collect();
    let glossary: Map<String, Value> = o
        .glossary()
        .iter()
        .map(|(id, d)| {
            let referenced: Vec<&str> = d.referenced.iter().map(ConceptId::as_str).collect();
            (
                id.to_string(),
                json!({
                    "text": d.text,
                    "referenced": referenced,
                    "attributes": d.attributes,
                    "manual": d.manual,
                }),
            )
        })
        .collect();
    let doc = json!({
        "name": o.name(),
        "relations": relations,
        "concepts": concepts,
        "edges": edges,
        "glossary": glossary,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    text.push('\n');
    text
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ImportError {
    #[error("schema error at {path}: {message}")]
    SchemaError { path: String, message: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// An imported ontology plus notes about ignored input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonImport {
    pub ontology: Ontology,
    pub notes: Vec<String>,
}

fn schema(path: &str, message: impl Into<String>) -> ImportError {
    ImportError::SchemaError {
        path: path.to_string(),
        message: message.into(),
    }
}

struct Reader {
    notes: Vec<String>,
}

impl Reader {
    /// The object at `path`, noting any key outside `known`.
    fn object<'v>(&mut self, v: &'v Value, path: &str, known: &[&str]) -> Result<&'v Map<String, Value>, ImportError> {
        let map = v.as_object().ok_or_else(|| schema(path, "expected an object"))?;
        for key in map.keys().filter(|k| !known.contains(&k.as_str())) {
            self.notes.push(format!("ignored unknown field {path}.{key}"));
        }
        Ok(map)
    }

    fn field<'v>(map: &'v Map<String, Value>, path: &str, key: &str) -> Result<&'v Value, ImportError> {
        map.get(key).ok_or_else(|| schema(path, format!("missing field {key:?}")))
    }

    fn string<'v>(map: &'v Map<String, Value>, path: &str, key: &str) -> Result<&'v str, ImportError> {
        Self::field(map, path, key)?
            .as_str()
            .ok_or_else(|| schema(&format!("{path}.{key}"), "expected a string"))
    }

    fn boolean(map: &Map<String, Value>, path: &str, key: &str) -> Result<bool, ImportError> {
        Self::field(map, path, key)?
            .as_bool()
            .ok_or_else(|| schema(&format!("{path}.{key}"), "expected a boolean"))
    }

    fn array<'v>(map: &'v Map<String, Value>, path: &str, key: &str) -> Result<&'v Vec<Value>, ImportError> {
        Self::field(map, path, key)?
            .as_array()
            .ok_or_else(|| schema(&format!("{path}.{key}"), "expected an array"))
    }

    fn strings(map: &Map<String, Value>, path: &str, key: &str) -> Result<Vec<String>, ImportError> {
        Self::array(map, path, key)?
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| schema(&format!("{path}.{key}[{i}]"), "expected a string"))
            })
            .collect()
    }
}

/// Reads the document written by [`export_json`] and rebuilds the ontology.
/// Unknown fields are ignored and reported in [`JsonImport::notes`]; derived
/// data (`defined`, `referenced`, glossary attributes) is recomputed.
pub fn import_json(text: &str) -> Result<JsonImport, ImportError> {
    let root: Value = serde_json::from_str(text).map_err(|e| schema("$", e.to_string()))?;
    let mut r = Reader { notes: Vec::new() };
    let top = r.object(&root, "$", &["name", "relations", "concepts", "edges", "glossary"])?;
    let name = Reader::string(top, "$", "name")?.to_string();

    let mut relations = RelationRegistry::builtin();
    for (i, v) in Reader::array(top, "$", "relations")?.iter().enumerate() {
        let path = format!("$.relations[{i}]");
        let m = r.object(v, &path, &["id", "label", "partial_order", "hierarchical"])?;
        relations.declare(RelationType::new(
            Reader::string(m, &path, "id")?,
            Reader::string(m, &path, "label")?,
            Reader::boolean(m, &path, "partial_order")?,
            Reader::boolean(m, &path, "hierarchical")?,
        ))?;
    }

    let mut concepts = Vec::new();
    for (i, v) in Reader::array(top, "$", "concepts")?.iter().enumerate() {
        let path = format!("$.concepts[{i}]");
        let m = r.object(v, &path, &["id", "name", "kind", "attributes", "is_category", "defined"])?;
        let concept = Concept::new(Reader::string(m, &path, "name")?)?;
        let id = Reader::string(m, &path, "id")?;
        if id != concept.id().as_str() {
            return Err(schema(
                &format!("{path}.id"),
                format!("id {id:?} does not match name-derived id {:?}", concept.id().as_str()),
            ));
        }
        Reader::boolean(m, &path, "defined")?;
        let kind_path = format!("{path}.kind");
        let kind_map = Reader::field(m, &path, "kind")?
            .as_object()
            .ok_or_else(|| schema(&kind_path, "expected an object"))?;
        let mut kind = ConceptKind::default();
        for (axis, value) in kind_map {
            let value = value
                .as_str()
                .ok_or_else(|| schema(&format!("{kind_path}.{axis}"), "expected a string"))?;
            kind.set(axis, value)
                .map_err(|e| schema(&format!("{kind_path}.{axis}"), e.to_string()))?;
        }
        concepts.push(
            concept
                .with_kind(kind)
                .with_attributes(Reader::strings(m, &path, "attributes")?)
                .with_category(Reader::boolean(m, &path, "is_category")?),
        );
    }

    let mut edges = Vec::new();
    for (i, v) in Reader::array(top, "$", "edges")?.iter().enumerate() {
        let path = format!("$.edges[{i}]");
        let m = r.object(v, &path, &["source", "relation", "target"])?;
        edges.push(Edge {
            source: ConceptId::from_slug(Reader::string(m, &path, "source")?),
            relation: RelationId::new(Reader::string(m, &path, "relation")?),
            target: ConceptId::from_slug(Reader::string(m, &path, "target")?),
        });
    }

    let mut glossary = BTreeMap::new();
    let entries = Reader::field(top, "$", "glossary")?
        .as_object()
        .ok_or_else(|| schema("$.glossary", "expected an object"))?;
    for (id, v) in entries {
        let path = format!("$.glossary.{id}");
        let m = r.object(v, &path, &["text", "referenced", "attributes", "manual"])?;
        let text = Reader::string(m, &path, "text")?;
        let def = if Reader::boolean(m, &path, "manual")? {
            Definition::manual(text)
        } else {
            Definition::new(text)
        };
        for key in ["referenced", "attributes"] {
            if m.contains_key(key) {
                Reader::strings(m, &path, key)?;
            }
        }
        glossary.insert(ConceptId::from_slug(id.as_str()), def);
    }

    let ontology = Ontology::build(OntologyParts {
        name,
        relations,
        concepts,
        edges,
        glossary,
    })?;
    Ok(JsonImport {
        ontology,
        notes: r.notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{lower, parse};

    fn sample() -> Ontology {
        lower(
            &parse(
                "ontology \"t\"\nrelation uses \"использовать\"\n\
                 concept \"A\" { kind: whole_vs_part=whole; attrs: x, y; category; def: \"Основа для B.\"; manual }\n\
                 concept \"B\" {}\nedge \"B\" -uses-> \"A\"\nedge \"B\" -genus_species-> \"A\"",
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn round_trip_is_lossless() {
        let o = sample();
        let text = export_json(&o);
        let back = import_json(&text).unwrap();
        assert_eq!(back.ontology, o);
        assert!(back.notes.is_empty());
        assert_eq!(export_json(&back.ontology), text);
    }

    #[test]
    fn keys_sorted_and_empty_glossary_present() {
        let o = lower(&parse("ontology \"t\"\nconcept \"A\" {}").unwrap()).unwrap();
        let text = export_json(&o);
        assert!(text.contains("\"glossary\": {}"));
        assert!(text.ends_with("}\n"));
        let order: Vec<usize> = ["\n  \"concepts\"", "\n  \"edges\"", "\n  \"glossary\"", "\n  \"name\"", "\n  \"relations\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn malformed_json_is_a_root_schema_error() {
        assert!(matches!(
            import_json("{ not json"),
            Err(ImportError::SchemaError { path, .. }) if path == "$"
        ));
        assert!(matches!(
            import_json("[]"),
            Err(ImportError::SchemaError { path, .. }) if path == "$"
        ));
    }

    #[test]
    fn unknown_fields_are_noted() {
        let mut v: Value = serde_json::from_str(&export_json(&sample())).unwrap();
        v["comment"] = json!("hi");
        v["concepts"][0]["colour"] = json!("red");
        let back = import_json(&v.to_string()).unwrap();
        assert_eq!(back.ontology, sample());
        assert_eq!(
            back.notes,
            vec![
                "ignored unknown field $.comment".to_string(),
                "ignored unknown field $.concepts[0].colour".to_string()
            ]
        );
    }

    #[test]
    fn schema_paths() {
        let mut v: Value = serde_json::from_str(&export_json(&sample())).unwrap();
        v["concepts"][1]["is_category"] = json!("yes");
        assert!(matches!(
            import_json(&v.to_string()),
            Err(ImportError::SchemaError { path, .. }) if path == "$.concepts[1].is_category"
        ));
        let mut v: Value = serde_json::from_str(&export_json(&sample())).unwrap();
        v["edges"][0]["target"] = json!("b");
        assert!(matches!(import_json(&v.to_string()), Err(ImportError::Model(ModelError::SelfLoop(_)))));
    }
}
