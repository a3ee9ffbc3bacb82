use std::fmt::Write as _;

use super::ExportOptions;
use crate::hierarchy::rank;
use crate::model::Ontology;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Graphviz drawing of the ontograph: one node per concept, one arc per
/// edge; hierarchical arcs solid, the rest dashed.
pub fn export_dot(o: &Ontology, opt: &ExportOptions) -> String {
    let ranking = opt.include_levels.then(|| rank(o));
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(o.name()));
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=box];\n");
    for c in o.concepts() {
        let mut label = c.name().to_string();
        if let Some(level) = ranking.as_ref().and_then(|r| r.level(c.id())) {
            let _ = write!(label, " (L{level})");
        }
        let style = if c.is_category() { ", style=bold" } else { "" };
        let _ = writeln!(out, "  {} [label={}{style}];", quote(c.id().as_str()), quote(&label));
    }
    for e in o.edges() {
        let style = if o.relations().is_hierarchical(&e.relation) {
            "solid"
        } else {
            "dashed"
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}, style={style}];",
            quote(e.source.as_str()),
            quote(e.target.as_str()),
            quote(e.relation.as_str())
        );
    }
    out.push_str("}\n");
    out
}
