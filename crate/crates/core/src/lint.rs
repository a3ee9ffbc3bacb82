//! Hierarchy and naming checks with stable rule codes.
//!
//! | code | severity | fires on |
//! |------|----------|----------|
//! | L1 | warning | a concept with exactly one direct subclass |
//! | L2 | warning | a concept with more direct subclasses than `fanout_max` |
//! | L3 | warning | direct subclasses of one concept at different levels |
//! | L4 | error   | an empty concept set (document linting only) |
//! | L5 | warning | a concept without a glossary definition |
//! | L6 | info    | a concept not attached to any categorical-level concept |
//! | L7 | warning | a name that looks plural or contains an abbreviation |
//! | L8 | info    | more concepts than `concept_budget` |

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use regex::Regex;
use serde::{Deserialize, Serialize, Serializer};

use crate::dsl::{lower, LowerError, SourceDocument};
use crate::hierarchy::rank;
use crate::model::{ConceptId, Ontology};

/// Upper bound for `fanout_max`; larger values are clamped to it.
pub const FANOUT_CEILING: usize = 12;
pub const DEFAULT_FANOUT_MAX: usize = 7;
pub const DEFAULT_ABBREVIATION_REGEX: &str = r"\p{Lu}{2,}";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleCode {
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    L7,
    L8,
}

impl RuleCode {
    pub const ALL: [RuleCode; 8] = [
        RuleCode::L1,
        RuleCode::L2,
        RuleCode::L3,
        RuleCode::L4,
        RuleCode::L5,
        RuleCode::L6,
        RuleCode::L7,
        RuleCode::L8,
    ];

    pub fn severity(self) -> Severity {
        match self {
            RuleCode::L4 => Severity::Error,
            RuleCode::L6 | RuleCode::L8 => Severity::Info,
            _ => Severity::Warning,
        }
    }
}

impl fmt::Display for RuleCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for RuleCode {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleCode::ALL
            .into_iter()
            .find(|r| r.to_string() == s)
            .ok_or_else(|| ConfigError::UnknownRule(s.to_string()))
    }
}

impl Serialize for RuleCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Info => "info",
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

impl FromStr for Severity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "info" => Ok(Severity::Info),
            "warning" => Ok(Severity::Warning),
            "error" => Ok(Severity::Error),
            _ => Err(format!("unknown severity {s:?} (info, warning, error)")),
        }
    }
}

/// What a diagnostic is about.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subject {
    Concept(ConceptId),
    Ontology,
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Concept(id) => write!(f, "{id}"),
            Subject::Ontology => f.write_str("ontology"),
        }
    }
}

impl Serialize for Subject {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub rule: RuleCode,
    pub severity: Severity,
    pub subject: Subject,
    pub message: String,
    pub suggestion: Option<String>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.rule, self.severity, self.subject, self.message)
    }
}

/// Suffixes marking a plural word, and longer endings that override them.
#[derive(Clone, Debug, PartialEq, Eq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PluralTable {
    #[serde(default)]
    pub suffixes: Vec<String>,
    #[serde(default)]
    pub exceptions: Vec<String>,
}

impl PluralTable {
    fn new(suffixes: &[&str], exceptions: &[&str]) -> Self {
        PluralTable {
            suffixes: suffixes.iter().map(|s| s.to_string()).collect(),
            exceptions: exceptions.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// The matching suffix when `word` looks plural.
    pub fn plural_suffix(&self, word: &str) -> Option<&str> {
        let word = word.to_lowercase();
        if self.exceptions.iter().any(|e| word.ends_with(e.as_str())) {
            return None;
        }
        self.suffixes
            .iter()
            .filter(|s| word.ends_with(s.as_str()) && word.chars().count() > s.chars().count())
            .max_by_key(|s| s.len())
            .map(String::as_str)
    }
}

/// Lint settings. `plural` is keyed by script: `cyrillic` tables are applied
/// to the first word of a name, `latin` tables to the last.
#[derive(Clone, Debug)]
pub struct LintConfig {
    pub fanout_max: usize,
    pub concept_budget: Option<usize>,
    pub abbreviation_regex: Regex,
    pub plural: BTreeMap<String, PluralTable>,
    pub rules: BTreeMap<RuleCode, bool>,
}

impl Default for LintConfig {
    fn default() -> Self {
        let mut plural = BTreeMap::new();
        plural.insert(
            "cyrillic".to_string(),
            PluralTable::new(&["ые", "ие", "ы", "и"], &["ние", "тие", "ствие"]),
        );
        plural.insert(
            "latin".to_string(),
            PluralTable::new(&["s"], &["ss", "us", "is", "ics", "ous", "sis"]),
        );
        LintConfig {
            fanout_max: DEFAULT_FANOUT_MAX,
            concept_budget: None,
            abbreviation_regex: Regex::new(DEFAULT_ABBREVIATION_REGEX).expect("valid default regex"),
            plural,
            rules: RuleCode::ALL.into_iter().map(|r| (r, true)).collect(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("invalid lint config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("unknown rule code {0:?}")]
    UnknownRule(String),
    #[error("fanout_max must be at least 1")]
    FanoutTooSmall,
    #[error("invalid abbreviation_regex: {0}")]
    Regex(#[from] regex::Error),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    fanout_max: Option<usize>,
    concept_budget: Option<usize>,
    abbreviation_regex: Option<String>,
    #[serde(default)]
    plural: BTreeMap<String, PluralTable>,
    #[serde(default)]
    rules: BTreeMap<String, bool>,
}

impl LintConfig {
    /// Reads a TOML config; unspecified keys keep their defaults.
    ///
    /// ```toml
    /// fanout_max = 9
    /// concept_budget = 40
    /// abbreviation_regex = '\p{Lu}{3,}'
    /// [plural.latin]
    /// suffixes = ["s"]
    /// [rules]
    /// L6 = false
    /// ```
    pub fn from_toml(text: &str) -> Result<LintConfig, ConfigError> {
        let raw: RawConfig = toml::from_str(text)?;
        let mut config = LintConfig::default();
        if let Some(n) = raw.fanout_max {
            if n == 0 {
                return Err(ConfigError::FanoutTooSmall);
            }
            config.fanout_max = n;
        }
        config.concept_budget = raw.concept_budget;
        if let Some(re) = raw.abbreviation_regex {
            config.abbreviation_regex = Regex::new(&re)?;
        }
        config.plural.extend(raw.plural);
        for (code, on) in raw.rules {
            config.rules.insert(code.parse()?, on);
        }
        Ok(config)
    }

    /// `fanout_max` clamped to [`FANOUT_CEILING`].
    pub fn effective_fanout_max(&self) -> usize {
        self.fanout_max.clamp(1, FANOUT_CEILING)
    }

    pub fn enabled(&self, rule: RuleCode) -> bool {
        self.rules.get(&rule).copied().unwrap_or(true)
    }

    /// Turns every rule off except `only`.
    pub fn only(rules: &[RuleCode]) -> LintConfig {
        let mut config = LintConfig::default();
        for r in RuleCode::ALL {
            config.rules.insert(r, rules.contains(&r));
        }
        config
    }
}

fn diag(rule: RuleCode, subject: Subject, message: String, suggestion: Option<String>) -> Diagnostic {
    Diagnostic {
        rule,
        severity: rule.severity(),
        subject,
        message,
        suggestion,
    }
}

fn is_cyrillic(c: char) -> bool {
    matches!(c, '\u{0400}'..='\u{04FF}' | '\u{0500}'..='\u{052F}')
}

fn naming_problems(name: &str, config: &LintConfig) -> Vec<String> {
    let mut problems = Vec::new();
    let words: Vec<&str> = name
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .collect();
    let script_word = match name.chars().find(|c| c.is_alphabetic()) {
        Some(c) if is_cyrillic(c) => words.first().map(|w| ("cyrillic", *w)),
        Some(c) if c.is_ascii_alphabetic() => words.last().map(|w| ("latin", *w)),
        _ => None,
    };
    if let Some((script, word)) = script_word {
        let upper = word.chars().filter(|c| c.is_uppercase()).count();
        // an all-caps word is an abbreviation, not a plural
        if upper < 2 {
            if let Some(suffix) = config.plural.get(script).and_then(|t| t.plural_suffix(word)) {
                problems.push(format!("name looks plural ({word:?} ends in {suffix:?})"));
            }
        }
    }
    let abbreviations: Vec<&str> = config
        .abbreviation_regex
        .find_iter(name)
        .map(|m| m.as_str())
        .collect();
    if !abbreviations.is_empty() {
        problems.push(format!("name contains abbreviation {}", abbreviations.join(", ")));
    }
    problems
}

/// Checks `o` against every enabled rule. The report is sorted by rule, then
/// subject.
pub fn lint(o: &Ontology, config: &LintConfig) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut children: BTreeMap<&ConceptId, BTreeSet<&ConceptId>> = BTreeMap::new();
    for e in o.hierarchical_edges() {
        children.entry(&e.target).or_default().insert(&e.source);
    }

    if config.enabled(RuleCode::L1) {
        for (parent, subs) in &children {
            if subs.len() == 1 {
                let only = subs.iter().next().expect("one subclass");
                out.push(diag(
                    RuleCode::L1,
                    Subject::Concept((*parent).clone()),
                    format!("has only one direct subclass ({only})"),
                    Some("add the missing sibling subclasses or fold the subclass into its parent".into()),
                ));
            }
        }
    }

    if config.enabled(RuleCode::L2) {
        let limit = config.effective_fanout_max();
        for (parent, subs) in &children {
            if subs.len() > limit {
                out.push(diag(
                    RuleCode::L2,
                    Subject::Concept((*parent).clone()),
                    format!("has {} direct subclasses (limit {limit})", subs.len()),
                    Some("introduce intermediate classes".into()),
                ));
            }
        }
    }

    if config.enabled(RuleCode::L3) {
        let ranking = rank(o);
        for (parent, subs) in &children {
            let levels: BTreeSet<u32> = subs.iter().filter_map(|s| ranking.level(s)).collect();
            if levels.len() > 1 {
                let listed: Vec<String> = subs
                    .iter()
                    .map(|s| format!("{s} (L{})", ranking.level(s).unwrap_or(0)))
                    .collect();
                out.push(diag(
                    RuleCode::L3,
                    Subject::Concept((*parent).clone()),
                    format!("direct subclasses sit at different levels: {}", listed.join(", ")),
                    Some("attach the deeper subclasses to an intermediate class".into()),
                ));
            }
        }
    }

    if config.enabled(RuleCode::L4) && o.concept_count() == 0 {
        out.push(empty_concept_set());
    }

    if config.enabled(RuleCode::L5) {
        for c in o.concepts().filter(|c| o.definition(c.id()).is_none()) {
            out.push(diag(
                RuleCode::L5,
                Subject::Concept(c.id().clone()),
                "has no glossary definition".into(),
                Some("add a `def:` item, marked `manual` when authored by hand".into()),
            ));
        }
    }

    if config.enabled(RuleCode::L6) {
        let attached = attached_to_categories(o);
        for c in o.concepts().filter(|c| !attached.contains(c.id())) {
            out.push(diag(
                RuleCode::L6,
                Subject::Concept(c.id().clone()),
                "is not attached to any categorical-level concept".into(),
                Some("link it, or one of its ancestors, to a `category` concept".into()),
            ));
        }
    }

    if config.enabled(RuleCode::L7) {
        for c in o.concepts() {
            let problems = naming_problems(c.name(), config);
            if !problems.is_empty() {
                out.push(diag(
                    RuleCode::L7,
                    Subject::Concept(c.id().clone()),
                    problems.join("; "),
                    Some("use singular names and spell abbreviations out".into()),
                ));
            }
        }
    }

    if config.enabled(RuleCode::L8) {
        if let Some(budget) = config.concept_budget {
            if o.concept_count() > budget {
                out.push(diag(
                    RuleCode::L8,
                    Subject::Ontology,
                    format!("has {} concepts (budget {budget})", o.concept_count()),
                    Some("drop concepts the target tasks do not need".into()),
                ));
            }
        }
    }

    out.sort_by(|a, b| {
        (a.rule, a.subject.to_string()).cmp(&(b.rule, b.subject.to_string()))
    });
    out
}

fn empty_concept_set() -> Diagnostic {
    diag(
        RuleCode::L4,
        Subject::Ontology,
        "the concept set is empty".into(),
        Some("declare at least one concept".into()),
    )
}

/// Category concepts and every concept with a hierarchical path up to one.
fn attached_to_categories(o: &Ontology) -> BTreeSet<ConceptId> {
    let mut children: BTreeMap<&ConceptId, Vec<&ConceptId>> = BTreeMap::new();
    for e in o.hierarchical_edges() {
        children.entry(&e.target).or_default().push(&e.source);
    }
    let mut seen: BTreeSet<ConceptId> = BTreeSet::new();
    let mut queue: VecDeque<&ConceptId> = o.concepts().filter(|c| c.is_category()).map(|c| c.id()).collect();
    while let Some(id) = queue.pop_front() {
        if seen.insert(id.clone()) {
            queue.extend(children.get(id).into_iter().flatten().copied());
        }
    }
    seen
}

/// Lints a parsed document. An empty document yields L4 (when enabled)
/// instead of a lowering error.
pub fn lint_document(doc: &SourceDocument, config: &LintConfig) -> Result<Vec<Diagnostic>, LowerError> {
    if doc.concepts.is_empty() {
        return Ok(if config.enabled(RuleCode::L4) {
            vec![empty_concept_set()]
        } else {
            Vec::new()
        });
    }
    Ok(lint(&lower(doc)?, config))
}
