use std::collections::BTreeSet;

use super::{ConceptBlock, EdgeStmt, RelationDecl, SourceDocument, Span};
use crate::model::ConceptKind;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: expected {expected}")]
    SyntaxError {
        line: u32,
        col: u32,
        expected: String,
    },
    #[error("{line}:{col}: duplicate {name}")]
    DuplicateBlock { name: String, line: u32, col: u32 },
    #[error("{line}:{col}: unknown directive {word:?}")]
    UnknownDirective { word: String, line: u32, col: u32 },
}

impl ParseError {
    pub fn span(&self) -> Span {
        match self {
            ParseError::SyntaxError { line, col, .. }
            | ParseError::DuplicateBlock { line, col, .. }
            | ParseError::UnknownDirective { line, col, .. } => Span::new(*line, *col),
        }
    }
}

/// Parses `.onto` source text. A leading byte-order mark is ignored.
pub fn parse(text: &str) -> Result<SourceDocument, ParseError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    Parser::new(text).document()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: u32,
    col: u32,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn span(&self) -> Span {
        Span::new(self.line, self.col)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error<T>(&self, expected: impl Into<String>) -> Result<T, ParseError> {
        Err(self.error_at(self.span(), expected))
    }

    fn error_at(&self, span: Span, expected: impl Into<String>) -> ParseError {
        ParseError::SyntaxError {
            line: span.line,
            col: span.col,
            expected: expected.into(),
        }
    }

    fn skip_comment(&mut self) {
        if self.peek() == Some('#') {
            while !matches!(self.peek(), None | Some('\n')) {
                self.bump();
            }
        }
    }

    /// Spaces and tabs (and `\r`) within a line, plus a trailing comment.
    fn skip_inline(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\r')) {
            self.bump();
        }
        self.skip_comment();
    }

    /// All whitespace, newlines and comments.
    fn skip_blank(&mut self) {
        loop {
            self.skip_inline();
            if self.peek() == Some('\n') {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn end_of_statement(&mut self) -> Result<(), ParseError> {
        self.skip_inline();
        match self.peek() {
            None => Ok(()),
            Some('\n') => {
                self.bump();
                Ok(())
            }
            Some(_) => self.error("end of line"),
        }
    }

    fn word(&mut self) -> String {
        let mut w = String::new();
        while let Some(c) = self.peek().filter(|c| is_ident_char(*c)) {
            w.push(c);
            self.bump();
        }
        w
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => Ok(self.word()),
            _ => self.error(what),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("`{c}`"))
        }
    }

    fn string(&mut self, what: &str) -> Result<String, ParseError> {
        if self.peek() != Some('"') {
            return self.error(what);
        }
        self.bump();
        let mut s = String::new();
        loop {
            match self.peek() {
                None | Some('\n') => return self.error("closing `\"`"),
                Some('"') => {
                    self.bump();
                    return Ok(s);
                }
                Some('\\') => {
                    let at = self.span();
                    self.bump();
                    let escaped = match self.peek() {
                        Some('"') => '"',
                        Some('\\') => '\\',
                        Some('n') => '\n',
                        Some('t') => '\t',
                        Some('r') => '\r',
                        _ => return Err(self.error_at(at, "escape sequence (\\\" \\\\ \\n \\t \\r)")),
                    };
                    self.bump();
                    s.push(escaped);
                }
                Some(c) => {
                    self.bump();
                    s.push(c);
                }
            }
        }
    }

    fn document(mut self) -> Result<SourceDocument, ParseError> {
        let mut doc = SourceDocument::default();
        let mut seen_header = false;
        let mut concept_names = BTreeSet::new();
        let mut relation_ids = BTreeSet::new();

        loop {
            self.skip_blank();
            if self.peek().is_none() {
                break;
            }
            let at = self.span();
            let directive = self.word();
            if directive.is_empty() {
                return self.error("directive (ontology, relation, concept, edge)");
            }
            if !seen_header && directive != "ontology" {
                if matches!(directive.as_str(), "relation" | "concept" | "edge") {
                    return Err(self.error_at(at, "`ontology \"<name>\"` header first"));
                }
                return Err(ParseError::UnknownDirective {
                    word: directive,
                    line: at.line,
                    col: at.col,
                });
            }
            self.skip_inline();
            match directive.as_str() {
                "ontology" => {
                    if seen_header {
                        return Err(ParseError::DuplicateBlock {
                            name: "ontology header".into(),
                            line: at.line,
                            col: at.col,
                        });
                    }
                    seen_header = true;
                    doc.ontology_name = self.string("ontology name string")?;
                    doc.header_span = at;
                }
                "relation" => {
                    let rel = self.relation(at)?;
                    if !relation_ids.insert(rel.id.clone()) {
                        return Err(ParseError::DuplicateBlock {
                            name: format!("relation {}", rel.id),
                            line: at.line,
                            col: at.col,
                        });
                    }
                    doc.relations.push(rel);
                }
                "concept" => {
                    let block = self.concept(at)?;
                    if !concept_names.insert(block.name.clone()) {
                        return Err(ParseError::DuplicateBlock {
                            name: format!("concept {:?}", block.name),
                            line: at.line,
                            col: at.col,
                        });
                    }
                    doc.concepts.push(block);
                }
                "edge" => doc.edges.push(self.edge(at)?),
                _ => {
                    return Err(ParseError::UnknownDirective {
                        word: directive,
                        line: at.line,
                        col: at.col,
                    })
                }
            }
            self.end_of_statement()?;
        }
        if !seen_header {
            return self.error("`ontology \"<name>\"` header");
        }
        Ok(doc)
    }

    fn relation(&mut self, span: Span) -> Result<RelationDecl, ParseError> {
        let id = self.ident("relation id")?;
        self.skip_inline();
        let label = self.string("relation label string")?;
        let mut rel = RelationDecl {
            id,
            label,
            partial_order: false,
            hierarchical: false,
            span,
        };
        loop {
            self.skip_inline();
            if matches!(self.peek(), None | Some('\n')) {
                return Ok(rel);
            }
            let at = self.span();
            match self.word().as_str() {
                "partial_order" if !rel.partial_order => rel.partial_order = true,
                "hierarchical" if !rel.hierarchical => rel.hierarchical = true,
                _ => return Err(self.error_at(at, "`partial_order`, `hierarchical` or end of line")),
            }
        }
    }

    fn edge(&mut self, span: Span) -> Result<EdgeStmt, ParseError> {
        let source = self.string("source concept name string")?;
        self.skip_inline();
        self.expect('-')?;
        let relation = self.ident("relation id")?;
        if self.peek() == Some('-') && self.peek_at(1) == Some('>') {
            self.bump();
            self.bump();
        } else {
            return self.error("`->`");
        }
        self.skip_inline();
        let target = self.string("target concept name string")?;
        Ok(EdgeStmt {
            source,
            relation,
            target,
            span,
        })
    }

    fn concept(&mut self, span: Span) -> Result<ConceptBlock, ParseError> {
        let name = self.string("concept name string")?;
        self.skip_inline();
        self.expect('{')?;
        let mut block = ConceptBlock {
            name,
            span,
            ..Default::default()
        };
        let mut seen = BTreeSet::new();
        let mut manual_at = None;
        loop {
            self.skip_blank();
            match self.peek() {
                Some('}') => {
                    self.bump();
                    break;
                }
                Some(';') => {
                    self.bump();
                    continue;
                }
                None => return self.error("`}`"),
                _ => {}
            }
            let at = self.span();
            let key = self.word();
            if key.is_empty() {
                return self.error("concept item (kind, category, attrs, def, manual) or `}`");
            }
            if !seen.insert(key.clone()) {
                return Err(self.error_at(at, format!("at most one `{key}` item")));
            }
            match key.as_str() {
                "category" => block.category = true,
                "manual" => {
                    block.manual = true;
                    manual_at = Some(at);
                }
                "kind" => {
                    self.colon()?;
                    block.kind = self.kind()?;
                }
                "attrs" => {
                    self.colon()?;
                    block.attributes = self.attrs()?;
                }
                "def" => {
                    self.colon()?;
                    block.definition = Some(self.string("definition string")?);
                }
                _ => {
                    return Err(self.error_at(at, "concept item (kind, category, attrs, def, manual)"))
                }
            }
            self.skip_inline();
            if !matches!(self.peek(), Some(';' | '\n' | '}')) {
                return self.error("`;`, newline or `}`");
            }
        }
        if let (Some(at), None) = (manual_at, &block.definition) {
            return Err(self.error_at(at, "`def` alongside `manual`"));
        }
        Ok(block)
    }

    fn colon(&mut self) -> Result<(), ParseError> {
        self.skip_inline();
        self.expect(':')?;
        self.skip_inline();
        Ok(())
    }

    fn kind(&mut self) -> Result<ConceptKind, ParseError> {
        let mut kind = ConceptKind::default();
        let mut axes = BTreeSet::new();
        loop {
            self.skip_inline();
            if matches!(self.peek(), None | Some(';' | '\n' | '}')) {
                if axes.is_empty() {
                    return self.error("kind axis (e.g. generic_vs_specific=generic)");
                }
                return Ok(kind);
            }
            let at = self.span();
            let axis = self.ident("kind axis")?;
            self.expect('=')?;
            let value_at = self.span();
            let value = self.ident("kind value")?;
            if !axes.insert(axis.clone()) {
                return Err(self.error_at(at, format!("axis {axis} only once")));
            }
            if let Err(e) = kind.set(&axis, &value) {
                let where_ = match e {
                    crate::model::KindError::UnknownAxis(_) => at,
                    crate::model::KindError::UnknownValue(_) => value_at,
                };
                return Err(self.error_at(where_, e.to_string()));
            }
        }
    }

    fn attrs(&mut self) -> Result<Vec<String>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_inline();
            let attr = if self.peek() == Some('"') {
                self.string("attribute")?
            } else {
                let mut bare = String::new();
                while let Some(c) = self.peek().filter(|c| !matches!(c, ',' | ';' | '}' | '\n' | '#' | '"' | '\r')) {
                    bare.push(c);
                    self.bump();
                }
                let bare = bare.trim_end().to_string();
                if bare.is_empty() {
                    return self.error("attribute name");
                }
                bare
            };
            out.push(attr);
            self.skip_inline();
            if self.peek() == Some(',') {
                self.bump();
            } else {
                return Ok(out);
            }
        }
    }
}
