//! Helpers shared by the command-line test targets.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ontoforge_core::glossary::Definition;
use ontoforge_core::model::{build_ontology, Concept, ConceptId, Edge, Ontology};
use proptest::prelude::*;

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ontoforge"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("UTF-8 stdout")
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("UTF-8 stderr")
}

pub fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/computing-fragment.onto")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// A scratch directory under the target dir, emptied on creation.
pub fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().expect("UTF-8 path")
}

pub const HIERARCHICAL: [&str; 4] = ["genus_species", "whole_part", "categorical", "set_element"];
pub const OTHER: [&str; 5] = ["participant", "regulates", "is_characteristic_of", "developed_by", "contained_in"];

/// Random DAG ontology over concepts `C0..Cn`: hierarchical arcs always
/// point from a larger to a smaller index, other arcs anywhere.
#[derive(Clone, Debug)]
pub struct Dag {
    pub n: usize,
    pub edges: Vec<(usize, &'static str, usize)>,
    pub attrs: Vec<Vec<String>>,
    pub defs: Vec<Option<String>>,
    pub category: Vec<bool>,
}

pub fn name(i: usize) -> String {
    format!("Понятие {i}")
}

pub fn id(i: usize) -> ConceptId {
    ConceptId::from_name(&name(i)).unwrap()
}

impl Dag {
    pub fn ontology(&self) -> Ontology {
        let concepts = (0..self.n)
            .map(|i| {
                Concept::new(&name(i))
                    .unwrap()
                    .with_attributes(self.attrs[i].iter())
                    .with_category(self.category[i])
            })
            .collect();
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|&(s, r, t)| Edge::new(id(s), r, id(t)))
            .collect();
        edges.sort();
        edges.dedup();
        let glossary = self
            .defs
            .iter()
            .enumerate()
            .filter_map(|(i, d)| d.as_ref().map(|t| (id(i), Definition::new(t.clone()))))
            .collect();
        build_ontology("Случайная онтология", concepts, edges, glossary).expect("generated DAGs are valid")
    }
}

/// DAGs with up to `max_n` concepts; `relations` limits the arc types.
pub fn dag(max_n: usize, relations: &'static [&'static str]) -> impl Strategy<Value = Dag> {
    (1..=max_n).prop_flat_map(move |n| {
        (
            prop::collection::vec((0..n, prop::sample::select(relations), 0..n), 0..=3 * n),
            prop::collection::vec(prop::collection::vec("[a-zа-я]{1,6}", 0..3), n),
            prop::collection::vec(prop::option::of(prop::collection::vec(0..n, 0..3)), n),
            prop::collection::vec(prop::bool::weighted(0.2), n),
        )
            .prop_map(move |(raw, attrs, defs, category)| {
                let edges = raw
                    .into_iter()
                    .filter(|(a, _, b)| a != b)
                    .map(|(a, r, b)| {
                        if HIERARCHICAL.contains(&r) {
                            (a.max(b), r, a.min(b))
                        } else {
                            (a, r, b)
                        }
                    })
                    .collect();
                let defs = defs
                    .into_iter()
                    .map(|d| {
                        d.map(|mentions| {
                            let names: Vec<String> = mentions.into_iter().map(name).collect();
                            format!("Определяется через: {}.", names.join(", "))
                        })
                    })
                    .collect();
                Dag {
                    n,
                    edges,
                    attrs,
                    defs,
                    category,
                }
            })
    })
}

pub const ALL_RELATIONS: [&str; 9] = [
    "genus_species",
    "whole_part",
    "categorical",
    "set_element",
    "participant",
    "regulates",
    "is_characteristic_of",
    "developed_by",
    "contained_in",
];
