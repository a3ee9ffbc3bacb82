mod common;

use ontoforge_core::dsl::{lower, parse, serialize, SourceDocument};
use ontoforge_core::export::{export_json, import_json};
use ontoforge_core::Ontology;
use proptest::prelude::*;

fn source_round_trip(o: &Ontology) -> Result<(), TestCaseError> {
    let text = serialize(&SourceDocument::from_ontology(o));
    let doc = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
    prop_assert_eq!(serialize(&doc), text.clone(), "serialize is not a fixpoint");
    let back = lower(&doc).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&back, o);
    Ok(())
}

fn json_round_trip(o: &Ontology) -> Result<(), TestCaseError> {
    let text = export_json(o);
    let back = import_json(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(back.notes.is_empty());
    prop_assert_eq!(&back.ontology, o);
    prop_assert_eq!(export_json(&back.ontology), text);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn source_format_round_trips(o in common::ontology(12)) {
        source_round_trip(&o)?;
    }

    #[test]
    fn json_round_trips(o in common::ontology(12)) {
        json_round_trip(&o)?;
    }

    #[test]
    fn statement_order_does_not_matter(o in common::ontology(12)) {
        let doc = SourceDocument::from_ontology(&o);
        let mut reversed = doc.clone();
        reversed.concepts.reverse();
        reversed.edges.reverse();
        reversed.relations.reverse();
        prop_assert_eq!(serialize(&reversed.canonicalized()), serialize(&doc));
        prop_assert_eq!(lower(&reversed).unwrap(), o);
    }
}

#[test]
fn fixture_round_trips() {
    let o = common::fixture();
    source_round_trip(&o).unwrap();
    json_round_trip(&o).unwrap();
}

#[test]
fn fixture_source_is_stable_under_reformatting() {
    let text = std::fs::read_to_string(common::fixture_path()).unwrap();
    let canonical = serialize(&parse(&text).unwrap().canonicalized());
    assert_eq!(serialize(&parse(&canonical).unwrap()), canonical);
    assert_eq!(lower(&parse(&canonical).unwrap()).unwrap(), common::fixture());
}
