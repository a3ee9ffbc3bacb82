//! Concept classification along the four semantic dichotomies.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

macro_rules! axis {
    ($(#[$meta:meta])* $name:ident, $key:literal, $a:ident = $a_str:literal, $b:ident = $b_str:literal) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(rename_all = "snake_case")]
        pub enum $name {
            $a,
            $b,
            #[default]
            Unspecified,
        }

        impl $name {
            pub const KEY: &'static str = $key;

            pub fn as_str(self) -> &'static str {
                match self {
                    $name::$a => $a_str,
                    $name::$b => $b_str,
                    $name::Unspecified => "unspecified",
                }
            }

            pub fn is_specified(self) -> bool {
                self != $name::Unspecified
            }
        }

        impl FromStr for $name {
            type Err = UnknownAxisValue;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $a_str => Ok($name::$a),
                    $b_str => Ok($name::$b),
                    "unspecified" => Ok($name::Unspecified),
                    _ => Err(UnknownAxisValue {
                        axis: $key,
                        value: s.to_string(),
                    }),
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

axis!(
    /// Genus (родовое) versus species (видовое) concept.
    GenericSpecific, "generic_vs_specific", Generic = "generic", Specific = "specific"
);
axis!(
    /// Whole versus part concept.
    WholePart, "whole_vs_part", Whole = "whole", Part = "part"
);
axis!(
    /// Singular (единичное) versus general (общее) concept.
    SingularGeneral, "singular_vs_general", Singular = "singular", General = "general"
);
axis!(
    /// Concrete versus abstract concept.
    ConcreteAbstract, "concrete_vs_abstract", Concrete = "concrete", Abstract = "abstract"
);

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown value {value:?} for axis {axis}")]
pub struct UnknownAxisValue {
    pub axis: &'static str,
    pub value: String,
}

/// Classification flags of a concept. Every axis defaults to `unspecified`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConceptKind {
    pub generic_vs_specific: GenericSpecific,
    pub whole_vs_part: WholePart,
    pub singular_vs_general: SingularGeneral,
    pub concrete_vs_abstract: ConcreteAbstract,
}

/// Names of the four axes in canonical order.
pub const AXES: [&str; 4] = [
    GenericSpecific::KEY,
    WholePart::KEY,
    SingularGeneral::KEY,
    ConcreteAbstract::KEY,
];

impl ConceptKind {
    pub fn is_unspecified(&self) -> bool {
        *self == ConceptKind::default()
    }

    /// Sets one axis from its textual key and value.
    pub fn set(&mut self, axis: &str, value: &str) -> Result<(), KindError> {
        match axis {
            GenericSpecific::KEY => self.generic_vs_specific = value.parse()?,
            WholePart::KEY => self.whole_vs_part = value.parse()?,
            SingularGeneral::KEY => self.singular_vs_general = value.parse()?,
            ConcreteAbstract::KEY => self.concrete_vs_abstract = value.parse()?,
            _ => return Err(KindError::UnknownAxis(axis.to_string())),
        }
        Ok(())
    }

    /// `(axis, value)` pairs for every axis, in canonical order.
    pub fn pairs(&self) -> [(&'static str, &'static str); 4] {
        [
            (GenericSpecific::KEY, self.generic_vs_specific.as_str()),
            (WholePart::KEY, self.whole_vs_part.as_str()),
            (SingularGeneral::KEY, self.singular_vs_general.as_str()),
            (ConcreteAbstract::KEY, self.concrete_vs_abstract.as_str()),
        ]
    }

    /// Pairs for the axes that are not `unspecified`.
    pub fn specified_pairs(&self) -> Vec<(&'static str, &'static str)> {
        self.pairs()
            .into_iter()
            .filter(|(_, v)| *v != "unspecified")
            .collect()
    }

    /// Axes on which both kinds are specified but disagree.
    pub fn conflicting_axes(&self, other: &ConceptKind) -> Vec<&'static str> {
        self.pairs()
            .into_iter()
            .zip(other.pairs())
            .filter(|((_, a), (_, b))| *a != "unspecified" && *b != "unspecified" && a != b)
            .map(|((axis, _), _)| axis)
            .collect()
    }

    /// Fills the unspecified axes of `self` from `other`.
    pub fn fill_from(&self, other: &ConceptKind) -> ConceptKind {
        fn pick<T: Copy + PartialEq + Default>(a: T, b: T) -> T {
            if a == T::default() {
                b
            } else {
                a
            }
        }
        ConceptKind {
            generic_vs_specific: pick(self.generic_vs_specific, other.generic_vs_specific),
            whole_vs_part: pick(self.whole_vs_part, other.whole_vs_part),
            singular_vs_general: pick(self.singular_vs_general, other.singular_vs_general),
            concrete_vs_abstract: pick(self.concrete_vs_abstract, other.concrete_vs_abstract),
        }
    }
}

impl fmt::Display for ConceptKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = self.specified_pairs();
        if pairs.is_empty() {
            return f.write_str("unspecified");
        }
        for (i, (axis, value)) in pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{axis}={value}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KindError {
    #[error("unknown kind axis {0:?}")]
    UnknownAxis(String),
    #[error(transparent)]
    UnknownValue(#[from] UnknownAxisValue),
}
