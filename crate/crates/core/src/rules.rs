//! Affix rules and the tab-separated rule-file format.
//!
//! A rule file holds one rule per line:
//!
//! ```text
//! kind<TAB>pattern[<TAB>replacement[<TAB>min_stem]]
//! ```
//!
//! `kind` is `P` (prefix) or `S` (suffix). An empty or missing replacement
//! means plain stripping; a missing `min_stem` falls back to the rule set
//! default. Lines starting with `#` are comments, except for the directives
//! `#!exception<TAB>word` and `#!default_min_stem<TAB>n`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::num::NonZeroUsize;

use serde::Serialize;
use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use crate::grapheme;

/// The rule file shipped with the crate: the suggestive affix list plus the
/// affixes and recodings needed by the reference output table.
pub const DEFAULT_RULES: &str = include_str!("../data/default.rules");

/// Companion rules that map group-1 oblique/plural noun endings back to the
/// alif-final citation form. Used to close generate-then-stem loops.
pub const PARADIGM_COMPANION_RULES: &str = include_str!("../data/paradigm_companion.rules");

pub const DEFAULT_MIN_STEM: usize = 2;

const EXCEPTION_DIRECTIVE: &str = "#!exception";
const MIN_STEM_DIRECTIVE: &str = "#!default_min_stem";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuleError {
    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {second}: duplicate {kind} rule `{pattern}` (first defined on line {first})")]
    DuplicateLine {
        kind: AffixKind,
        pattern: String,
        first: usize,
        second: usize,
    },
    #[error("duplicate {kind} rule `{pattern}`")]
    Duplicate { kind: AffixKind, pattern: String },
    #[error("exception words must not be empty")]
    EmptyException,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AffixKind {
    Prefix,
    Suffix,
}

impl AffixKind {
    /// Single-letter tag used in rule files.
    pub fn tag(self) -> char {
        match self {
            AffixKind::Prefix => 'P',
            AffixKind::Suffix => 'S',
        }
    }

    fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "P" => Some(AffixKind::Prefix),
            "S" => Some(AffixKind::Suffix),
            _ => None,
        }
    }
}

impl fmt::Display for AffixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AffixKind::Prefix => "prefix",
            AffixKind::Suffix => "suffix",
        })
    }
}

/// One prefix or suffix pattern.
///
/// The replacement is never longer than the pattern, so a rule can not grow
/// the word. Equal-length replacements are allowed (ے → ہ); the pass limit in
/// the stemmer bounds how often rules can fire.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffixRule {
    kind: AffixKind,
    pattern: String,
    replacement: String,
    min_stem: Option<NonZeroUsize>,
    #[serde(skip)]
    pattern_len: usize,
}

impl AffixRule {
    pub fn new(
        kind: AffixKind,
        pattern: impl Into<String>,
        replacement: impl Into<String>,
        min_stem: Option<usize>,
    ) -> Result<Self, RuleError> {
        let pattern: String = pattern.into().nfc().collect();
        let replacement: String = replacement.into().nfc().collect();
        let pattern_len = grapheme::count(&pattern);
        if pattern_len == 0 {
            return Err(RuleError::InvalidRule("empty pattern".into()));
        }
        let replacement_len = grapheme::count(&replacement);
        if replacement_len > pattern_len {
            return Err(RuleError::InvalidRule(format!(
                "replacement `{replacement}` ({replacement_len} graphemes) is longer than pattern `{pattern}` ({pattern_len} graphemes)"
            )));
        }
        let min_stem = match min_stem {
            None => None,
            Some(n) => Some(
                NonZeroUsize::new(n)
                    .ok_or_else(|| RuleError::InvalidRule("min_stem must be positive".into()))?,
            ),
        };
        Ok(AffixRule {
            kind,
            pattern,
            replacement,
            min_stem,
            pattern_len,
        })
    }

    pub fn prefix(pattern: &str) -> Result<Self, RuleError> {
        Self::new(AffixKind::Prefix, pattern, "", None)
    }

    pub fn suffix(pattern: &str) -> Result<Self, RuleError> {
        Self::new(AffixKind::Suffix, pattern, "", None)
    }

    pub fn kind(&self) -> AffixKind {
        self.kind
    }

    pub fn pattern(&self) -> &str {
        &self.pattern
    }

    pub fn replacement(&self) -> &str {
        &self.replacement
    }

    /// The rule's own minimum stem length, if it sets one.
    pub fn min_stem(&self) -> Option<usize> {
        self.min_stem.map(NonZeroUsize::get)
    }

    /// Pattern length in graphemes.
    pub fn pattern_len(&self) -> usize {
        self.pattern_len
    }

    /// Stable identifier of the form `S:وں>ہ`, used in traces.
    pub fn id(&self) -> String {
        if self.replacement.is_empty() {
            format!("{}:{}", self.kind.tag(), self.pattern)
        } else {
            format!("{}:{}>{}", self.kind.tag(), self.pattern, self.replacement)
        }
    }
}

/// An ordered, immutable collection of affix rules plus an exception list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    rules: Vec<AffixRule>,
    exceptions: BTreeSet<String>,
    default_min_stem: NonZeroUsize,
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet {
            rules: Vec::new(),
            exceptions: BTreeSet::new(),
            default_min_stem: NonZeroUsize::new(DEFAULT_MIN_STEM).unwrap(),
        }
    }
}

impl RuleSet {
    /// Builds a rule set, ordering the rules longest-first.
    pub fn new<I, E>(rules: I, exceptions: E, default_min_stem: usize) -> Result<Self, RuleError>
    where
        I: IntoIterator<Item = AffixRule>,
        E: IntoIterator,
        E::Item: AsRef<str>,
    {
        let default_min_stem = NonZeroUsize::new(default_min_stem)
            .ok_or_else(|| RuleError::InvalidRule("default min_stem must be positive".into()))?;
        let rules: Vec<AffixRule> = rules.into_iter().collect();
        let mut seen = BTreeSet::new();
        for rule in &rules {
            if !seen.insert((rule.kind, rule.pattern.as_str())) {
                return Err(RuleError::Duplicate {
                    kind: rule.kind,
                    pattern: rule.pattern.clone(),
                });
            }
        }
        let mut set = BTreeSet::new();
        for word in exceptions {
            let word: String = word.as_ref().nfc().collect();
            if word.is_empty() {
                return Err(RuleError::EmptyException);
            }
            set.insert(word);
        }
        Ok(RuleSet {
            rules: order_rules(rules),
            exceptions: set,
            default_min_stem,
        })
    }

    /// The rule set compiled from [`DEFAULT_RULES`].
    pub fn default_rules() -> Self {
        parse_rule_file(DEFAULT_RULES).expect("shipped default rule file is valid")
    }

    /// The rule set compiled from [`PARADIGM_COMPANION_RULES`].
    pub fn paradigm_companion() -> Self {
        parse_rule_file(PARADIGM_COMPANION_RULES).expect("shipped companion rule file is valid")
    }

    /// Rules in application order (descending pattern length, stable).
    pub fn rules(&self) -> &[AffixRule] {
        &self.rules
    }

    pub fn exceptions(&self) -> &BTreeSet<String> {
        &self.exceptions
    }

    pub fn is_exception(&self, word: &str) -> bool {
        self.exceptions.contains(word)
    }

    pub fn default_min_stem(&self) -> usize {
        self.default_min_stem.get()
    }

    /// Minimum stem length that applies to `rule` within this set.
    pub fn effective_min_stem(&self, rule: &AffixRule) -> usize {
        rule.min_stem().unwrap_or(self.default_min_stem.get())
    }

    pub fn count(&self, kind: AffixKind) -> usize {
        self.rules.iter().filter(|r| r.kind == kind).count()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Returns a copy with one more rule, re-ordered.
    pub fn with_rule(&self, rule: AffixRule) -> Result<Self, RuleError> {
        let mut rules = self.rules.clone();
        rules.push(rule);
        RuleSet::new(rules, &self.exceptions, self.default_min_stem.get())
    }

    /// Returns a copy with an extra exception word.
    pub fn with_exception(&self, word: &str) -> Result<Self, RuleError> {
        let mut exceptions = self.exceptions.clone();
        exceptions.insert(word.to_string());
        RuleSet::new(self.rules.clone(), exceptions, self.default_min_stem.get())
    }

    /// Returns a copy with the exception word removed.
    pub fn without_exception(&self, word: &str) -> Self {
        let mut out = self.clone();
        out.exceptions.remove(word);
        out
    }
}

/// Orders rules by pattern length in graphemes, longest first. Rules of equal
/// length keep their input order.
pub fn order_rules(mut rules: Vec<AffixRule>) -> Vec<AffixRule> {
    rules.sort_by_key(|r| std::cmp::Reverse(r.pattern_len));
    rules
}

/// Parses rule-file text into a [`RuleSet`]. The text is NFC-normalized first.
pub fn parse_rule_file(text: &str) -> Result<RuleSet, RuleError> {
    let text: String = text.nfc().collect();
    let mut rules = Vec::new();
    let mut first_seen: HashMap<(AffixKind, String), usize> = HashMap::new();
    let mut exceptions = Vec::new();
    let mut default_min_stem = DEFAULT_MIN_STEM;

    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let malformed = |reason: String| RuleError::Malformed {
            line: line_no,
            reason,
        };
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with("#!") {
            let (directive, value) = line.split_once('\t').ok_or_else(|| {
                malformed(format!("directive `{line}` has no tab-separated value"))
            })?;
            match directive {
                EXCEPTION_DIRECTIVE => {
                    if value.is_empty() {
                        return Err(malformed("empty exception word".into()));
                    }
                    exceptions.push(value.to_string());
                }
                MIN_STEM_DIRECTIVE => {
                    default_min_stem = parse_positive(value).map_err(malformed)?;
                }
                other => return Err(malformed(format!("unknown directive `{other}`"))),
            }
            continue;
        }
        if line.starts_with('#') {
            continue;
        }

        let fields: Vec<&str> = line.split('\t').collect();
        if !(2..=4).contains(&fields.len()) {
            return Err(malformed(format!(
                "expected 2 to 4 tab-separated fields, found {}",
                fields.len()
            )));
        }
        let kind = AffixKind::from_tag(fields[0])
            .ok_or_else(|| malformed(format!("kind must be `P` or `S`, found `{}`", fields[0])))?;
        let replacement = fields.get(2).copied().unwrap_or("");
        let min_stem = match fields.get(3) {
            None | Some(&"") => None,
            Some(v) => Some(parse_positive(v).map_err(malformed)?),
        };
        let rule = AffixRule::new(kind, fields[1], replacement, min_stem).map_err(|e| match e {
            RuleError::InvalidRule(reason) => malformed(reason),
            other => other,
        })?;
        if let Some(&first) = first_seen.get(&(kind, rule.pattern.clone())) {
            return Err(RuleError::DuplicateLine {
                kind,
                pattern: rule.pattern,
                first,
                second: line_no,
            });
        }
        first_seen.insert((kind, rule.pattern.clone()), line_no);
        rules.push(rule);
    }

    RuleSet::new(rules, exceptions, default_min_stem)
}

fn parse_positive(value: &str) -> Result<usize, String> {
    match value.trim().parse::<i64>() {
        Ok(n) if n >= 1 => Ok(n as usize),
        Ok(n) => Err(format!("min_stem must be positive, found {n}")),
        Err(_) => Err(format!("min_stem `{value}` is not an integer")),
    }
}

/// Writes a rule set in canonical form: a generated header, the rules in
/// application order, then the exception words in sorted order.
pub fn serialize_rule_set(rs: &RuleSet) -> String {
    let mut out = String::new();
    out.push_str("# urdustem affix rules\n");
    out.push_str("# kind\tpattern\treplacement\tmin_stem\n");
    out.push_str(&format!("# suffixes: {}\n", rs.count(AffixKind::Suffix)));
    out.push_str(&format!("# prefixes: {}\n", rs.count(AffixKind::Prefix)));
    out.push_str(&format!(
        "{MIN_STEM_DIRECTIVE}\t{}\n",
        rs.default_min_stem()
    ));
    for rule in &rs.rules {
        out.push(rule.kind.tag());
        out.push('\t');
        out.push_str(&rule.pattern);
        match (rule.replacement.is_empty(), rule.min_stem) {
            (true, None) => {}
            (false, None) => {
                out.push('\t');
                out.push_str(&rule.replacement);
            }
            (_, Some(n)) => {
                out.push('\t');
                out.push_str(&rule.replacement);
                out.push('\t');
                out.push_str(&n.to_string());
            }
        }
        out.push('\n');
    }
    for word in &rs.exceptions {
        out.push_str(EXCEPTION_DIRECTIVE);
        out.push('\t');
        out.push_str(word);
        out.push('\n');
    }
    out
}
