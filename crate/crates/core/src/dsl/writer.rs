use std::fmt::Write as _;

use super::SourceDocument;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Canonical text of a document: LF line endings, two-space indentation,
/// statements in canonical order. Equal documents give identical bytes.
pub fn serialize(doc: &SourceDocument) -> String {
    let doc = doc.canonicalized();
    let mut out = String::new();
    let _ = writeln!(out, "ontology {}", quote(&doc.ontology_name));

    if !doc.relations.is_empty() {
        out.push('\n');
        for r in &doc.relations {
            let _ = write!(out, "relation {} {}", r.id, quote(&r.label));
            if r.partial_order {
                out.push_str(" partial_order");
            }
            if r.hierarchical {
                out.push_str(" hierarchical");
            }
            out.push('\n');
        }
    }

    for c in &doc.concepts {
        out.push('\n');
        let _ = write!(out, "concept {} {{", quote(&c.name));
        let mut items = Vec::new();
        let kind = c.kind.specified_pairs();
        if !kind.is_empty() {
            let pairs: Vec<String> = kind.iter().map(|(a, v)| format!("{a}={v}")).collect();
            items.push(format!("kind: {}", pairs.join(" ")));
        }
        if c.category {
            items.push("category".to_string());
        }
        if !c.attributes.is_empty() {
            let attrs: Vec<String> = c.attributes.iter().map(|a| quote(a)).collect();
            items.push(format!("attrs: {}", attrs.join(", ")));
        }
        if let Some(def) = &c.definition {
            items.push(format!("def: {}", quote(def)));
        }
        if c.manual {
            items.push("manual".to_string());
        }
        if items.is_empty() {
            out.push_str("}\n");
        } else {
            out.push('\n');
            for item in items {
                let _ = writeln!(out, "  {item}");
            }
            out.push_str("}\n");
        }
    }

    if !doc.edges.is_empty() {
        out.push('\n');
        for e in &doc.edges {
            let _ = writeln!(
                out,
                "edge {} -{}-> {}",
                quote(&e.source),
                e.relation,
                quote(&e.target)
            );
        }
    }
    out
}
