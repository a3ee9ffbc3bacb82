//! Stable concept identifiers.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Identifier of a concept: a lowercase ASCII slug derived from its name.
///
/// Cyrillic letters are transliterated, whitespace, hyphens and underscores
/// become a single `-`, and any other punctuation is dropped.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConceptId(String);

impl ConceptId {
    /// Derives the identifier for a concept name. Returns `None` when the
    /// name has no letters or digits to build a slug from.
    pub fn from_name(name: &str) -> Option<Self> {
        let slug = slugify(name);
        if slug.is_empty() {
            None
        } else {
            Some(ConceptId(slug))
        }
    }

    /// Wraps an already-derived slug without re-deriving it.
    pub fn from_slug(slug: impl Into<String>) -> Self {
        ConceptId(slug.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ConceptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for ConceptId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl From<&str> for ConceptId {
    fn from(s: &str) -> Self {
        ConceptId(s.to_string())
    }
}

/// Lowercases, transliterates and joins the words of `name` with `-`.
pub fn slugify(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    let mut pending_sep = false;
    for ch in name.chars() {
        if ch.is_whitespace() || ch == '-' || ch == '_' {
            pending_sep = true;
            continue;
        }
        let mark = out.len();
        if pending_sep && mark > 0 {
            out.push('-');
        }
        let word_start = out.len();
        for lower in ch.to_lowercase() {
            if lower.is_ascii_alphanumeric() {
                out.push(lower);
            } else if let Some(t) = transliterate(lower) {
                out.push_str(t);
            }
        }
        // Hard and soft signs transliterate to nothing but still belong to the word.
        if out.len() == word_start && !ch.is_alphanumeric() {
            out.truncate(mark);
            continue;
        }
        pending_sep = false;
    }
    out
}

fn transliterate(c: char) -> Option<&'static str> {
    let s = match c {
        'а' => "a",
        'б' => "b",
        'в' => "v",
        'г' => "g",
        'д' => "d",
        'е' | 'ё' | 'э' => "e",
        'ж' => "zh",
        'з' => "z",
        'и' => "i",
        'й' => "y",
        'к' => "k",
        'л' => "l",
        'м' => "m",
        'н' => "n",
        'о' => "o",
        'п' => "p",
        'р' => "r",
        'с' => "s",
        'т' => "t",
        'у' => "u",
        'ф' => "f",
        'х' => "kh",
        'ц' => "c",
        'ч' => "ch",
        'ш' => "sh",
        'щ' => "shch",
        'ъ' | 'ь' => "",
        'ы' => "y",
        'ю' => "yu",
        'я' => "ya",
        // Ukrainian and Belarusian letters
        'і' => "i",
        'ї' => "yi",
        'є' => "ye",
        'ґ' => "g",
        'ў' => "u",
        _ => return None,
    };
    Some(s)
}
