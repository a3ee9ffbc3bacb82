use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{validate_base_iri, ExportError, ExportOptions};
use crate::model::{Ontology, RelationId, GENUS_SPECIES, WHOLE_PART};

const PREFIXES: [(&str, &str); 4] = [
    ("owl", "http://www.w3.org/2002/07/owl#"),
    ("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"),
    ("rdfs", "http://www.w3.org/2000/01/rdf-schema#"),
    ("skos", "http://www.w3.org/2004/02/skos/core#"),
];

fn literal(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn valid_language_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    parts
        .next()
        .is_some_and(|p| (1..=8).contains(&p.len()) && p.chars().all(|c| c.is_ascii_alphabetic()))
        && parts.all(|p| (1..=8).contains(&p.len()) && p.chars().all(|c| c.is_ascii_alphanumeric()))
}

/// Local name of the object property for a relation.
fn property_name(rel: &RelationId) -> String {
    if rel.as_str() == WHOLE_PART {
        "partOf".to_string()
    } else {
        rel.to_string()
    }
}

/// Object of a triple, with its full IRI used as the sort key.
struct Term {
    key: String,
    text: String,
}

/// OWL-style Turtle. Concepts become classes, genus-species edges subclass
/// axioms, every other relation an object property asserted between the two
/// classes. Whole-part uses `partOf`. Triples are grouped by subject and
/// sorted by subject IRI, then predicate IRI, then object.
pub fn export_turtle(o: &Ontology, opt: &ExportOptions) -> Result<String, ExportError> {
    let base = opt.base_iri_for(o);
    validate_base_iri(&base)?;
    let lang = opt.language();
    if !valid_language_tag(lang) {
        return Err(ExportError::InvalidLanguageTag(lang.to_string()));
    }
    let rel_ns = format!("{base}relation/");
    let meta_ns = format!("{base}meta/");

    let full = |prefix: &str, local: &str| -> String {
        let ns = match prefix {
            "onto" => base.as_str(),
            "rel" => rel_ns.as_str(),
            "meta" => meta_ns.as_str(),
            p => PREFIXES.iter().find(|(k, _)| *k == p).map(|(_, v)| *v).expect("known prefix"),
        };
        format!("{ns}{local}")
    };

    // subject full IRI -> (subject text, predicate full IRI -> (predicate text, objects))
    type Objects = BTreeMap<String, String>;
    type Predicates = BTreeMap<String, (String, Objects)>;
    let mut graph: BTreeMap<String, (String, Predicates)> = BTreeMap::new();
    let mut add = |s: (String, String), p: (String, String), obj: Term| {
        let entry = graph.entry(s.0).or_insert_with(|| (s.1, BTreeMap::new()));
        let pred = entry.1.entry(p.0).or_insert_with(|| (p.1, BTreeMap::new()));
        pred.1.insert(obj.key, obj.text);
    };
    let named = |prefix: &str, local: &str| (full(prefix, local), format!("{prefix}:{local}"));
    let iri_term = |prefix: &str, local: &str| {
        let (key, text) = named(prefix, local);
        Term { key, text }
    };
    let lit = |value: &str, tagged: bool| {
        let text = if tagged {
            format!("{}@{lang}", literal(value))
        } else {
            literal(value)
        };
        Term { key: text.clone(), text }
    };
    let rdf_type = (full("rdf", "type"), "a".to_string());

    let ontology_subject = (base.clone(), format!("<{base}>"));
    add(ontology_subject.clone(), rdf_type.clone(), iri_term("owl", "Ontology"));
    add(ontology_subject, named("rdfs", "label"), lit(o.name(), false));

    let mut used_properties: BTreeMap<String, &RelationId> = BTreeMap::new();
    for e in o.edges().filter(|e| e.relation.as_str() != GENUS_SPECIES) {
        used_properties.insert(property_name(&e.relation), &e.relation);
    }
    for (local, rel) in &used_properties {
        let subject = named("rel", local);
        add(subject.clone(), rdf_type.clone(), iri_term("owl", "ObjectProperty"));
        if let Some(rt) = o.relations().get(rel) {
            add(subject, named("rdfs", "label"), lit(&rt.label, true));
        }
    }
    if o.concepts().any(|c| !c.attributes().is_empty()) {
        let subject = named("meta", "attribute");
        add(subject.clone(), rdf_type.clone(), iri_term("owl", "AnnotationProperty"));
        add(subject, named("rdfs", "label"), lit("attribute", false));
    }
    if o.concepts().any(|c| c.is_category()) {
        let subject = named("meta", "categoryLevel");
        add(subject.clone(), rdf_type.clone(), iri_term("owl", "AnnotationProperty"));
        add(subject, named("rdfs", "label"), lit("categorical-level concept", false));
    }

    for c in o.concepts() {
        let subject = named("onto", c.id().as_str());
        add(subject.clone(), rdf_type.clone(), iri_term("owl", "Class"));
        add(subject.clone(), named("rdfs", "label"), lit(c.name(), true));
        for attr in c.attributes() {
            add(subject.clone(), named("meta", "attribute"), lit(attr, true));
        }
        if c.is_category() {
            add(
                subject.clone(),
                named("meta", "categoryLevel"),
                Term {
                    key: "true".into(),
                    text: "true".into(),
                },
            );
        }
        if let Some(def) = o.definition(c.id()) {
            add(subject, named("skos", "definition"), lit(&def.text, true));
        }
    }

    for e in o.edges() {
        let subject = named("onto", e.source.as_str());
        let predicate = if e.relation.as_str() == GENUS_SPECIES {
            named("rdfs", "subClassOf")
        } else {
            named("rel", &property_name(&e.relation))
        };
        add(subject, predicate, iri_term("onto", e.target.as_str()));
    }

    let mut out = String::new();
    let mut prefixes: Vec<(&str, &str)> = PREFIXES.to_vec();
    prefixes.extend([("meta", meta_ns.as_str()), ("onto", base.as_str()), ("rel", rel_ns.as_str())]);
    prefixes.sort();
    for (prefix, ns) in prefixes {
        let _ = writeln!(out, "@prefix {prefix}: <{ns}> .");
    }

    for (subject_text, predicates) in graph.values() {
        out.push('\n');
        out.push_str(subject_text);
        // rdf:type first, the rest by predicate IRI
        let mut preds: Vec<&(String, Objects)> = predicates.values().collect();
        preds.sort_by_key(|(text, _)| text != "a");
        let n = preds.len();
        for (i, (pred_text, objects)) in preds.into_iter().enumerate() {
            let objs: Vec<&str> = objects.values().map(String::as_str).collect();
            let sep = if i + 1 == n { " ." } else { " ;" };
            if i == 0 {
                let _ = write!(out, " {pred_text} {}{sep}", objs.join(", "));
            } else {
                let _ = write!(out, "\n    {pred_text} {}{sep}", objs.join(", "));
            }
        }
        out.push('\n');
    }
    Ok(out)
}
