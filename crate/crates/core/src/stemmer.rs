//! The affix-stripping engine.
//!
//! Rules are tried in [`RuleSet`] order (longest pattern first). Within one
//! pass the first rule that matches at the word edge and leaves a long enough
//! stem fires; there is no backtracking to shorter rules. A word that matches
//! nothing comes back unchanged.

use serde::Serialize;
use thiserror::Error;
use unicode_normalization::is_nfc;

use crate::grapheme;
use crate::rules::{AffixKind, AffixRule, RuleSet};

/// Upper bound on suffix or prefix passes.
pub const MAX_PASSES: u8 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StemError {
    #[error("cannot stem an empty word")]
    EmptyWord,
    #[error("word `{0}` is not NFC-normalized; run it through corpus::normalize first")]
    NotNormalized(String),
    #[error("{kind} passes must be at most {MAX_PASSES}, got {got}")]
    TooManyPasses { kind: AffixKind, got: u8 },
    #[error("word {index}: {source}")]
    Batch {
        index: usize,
        #[source]
        source: Box<StemError>,
    },
}

/// Which affix kind is stripped first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum PassOrder {
    #[default]
    SuffixFirst,
    PrefixFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StemConfig {
    max_suffix_passes: u8,
    max_prefix_passes: u8,
    order: PassOrder,
}

impl Default for StemConfig {
    fn default() -> Self {
        StemConfig {
            max_suffix_passes: 1,
            max_prefix_passes: 1,
            order: PassOrder::SuffixFirst,
        }
    }
}

impl StemConfig {
    pub fn new(suffix_passes: u8, prefix_passes: u8, order: PassOrder) -> Result<Self, StemError> {
        if suffix_passes > MAX_PASSES {
            return Err(StemError::TooManyPasses {
                kind: AffixKind::Suffix,
                got: suffix_passes,
            });
        }
        if prefix_passes > MAX_PASSES {
            return Err(StemError::TooManyPasses {
                kind: AffixKind::Prefix,
                got: prefix_passes,
            });
        }
        Ok(StemConfig {
            max_suffix_passes: suffix_passes,
            max_prefix_passes: prefix_passes,
            order,
        })
    }

    pub fn max_suffix_passes(&self) -> u8 {
        self.max_suffix_passes
    }

    pub fn max_prefix_passes(&self) -> u8 {
        self.max_prefix_passes
    }

    pub fn order(&self) -> PassOrder {
        self.order
    }

    fn passes(&self, kind: AffixKind) -> u8 {
        match kind {
            AffixKind::Prefix => self.max_prefix_passes,
            AffixKind::Suffix => self.max_suffix_passes,
        }
    }
}

/// One rule application recorded in a [`StemResult`] trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AppliedRule {
    /// Position of the rule in [`RuleSet::rules`].
    pub index: usize,
    pub id: String,
    pub kind: AffixKind,
    pub pattern: String,
    pub replacement: String,
}

/// Decomposition of one word into prefix, stem and suffix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StemResult {
    pub word: String,
    pub prefix: Option<String>,
    pub stem: String,
    pub suffix: Option<String>,
    pub applied: Vec<AppliedRule>,
    pub exception_hit: bool,
}

impl StemResult {
    fn unchanged(word: &str, exception_hit: bool) -> Self {
        StemResult {
            word: word.to_string(),
            prefix: None,
            stem: word.to_string(),
            suffix: None,
            applied: Vec::new(),
            exception_hit,
        }
    }

    /// True when no affix was removed.
    pub fn is_pass_through(&self) -> bool {
        self.applied.is_empty()
    }

    /// Rebuilds the input word by undoing the trace, last rule first.
    /// Returns `None` when the trace is inconsistent with the stem.
    pub fn reconstruct(&self) -> Option<String> {
        let mut working = self.stem.clone();
        for step in self.applied.iter().rev() {
            working = match step.kind {
                AffixKind::Suffix => {
                    let base = working.strip_suffix(step.replacement.as_str())?;
                    format!("{base}{}", step.pattern)
                }
                AffixKind::Prefix => {
                    let base = working.strip_prefix(step.replacement.as_str())?;
                    format!("{}{base}", step.pattern)
                }
            };
        }
        Some(working)
    }

    /// Tab-separated `word prefix stem suffix` row, empty fields for absent
    /// affixes.
    pub fn to_tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.word,
            self.prefix.as_deref().unwrap_or(""),
            self.stem,
            self.suffix.as_deref().unwrap_or("")
        )
    }
}

/// Stems a single NFC-normalized word.
pub fn stem_word(word: &str, rs: &RuleSet, cfg: &StemConfig) -> Result<StemResult, StemError> {
    if word.is_empty() {
        return Err(StemError::EmptyWord);
    }
    if !is_nfc(word) {
        return Err(StemError::NotNormalized(word.to_string()));
    }
    if rs.is_exception(word) {
        return Ok(StemResult::unchanged(word, true));
    }

    let kinds = match cfg.order {
        PassOrder::SuffixFirst => [AffixKind::Suffix, AffixKind::Prefix],
        PassOrder::PrefixFirst => [AffixKind::Prefix, AffixKind::Suffix],
    };
    let mut result = StemResult::unchanged(word, false);
    // every later rule must also respect the min_stem of rules already applied
    let mut floor = 0;
    for kind in kinds {
        for _ in 0..cfg.passes(kind) {
            let Some((index, rule, split)) = find_rule(&result.stem, rs, kind, floor) else {
                break;
            };
            floor = floor.max(rs.effective_min_stem(rule));
            apply(&mut result, index, rule, split);
        }
    }
    Ok(result)
}

/// First rule of `kind` that matches `working` on a grapheme boundary and
/// leaves a residual of at least `max(min_stem, floor)` graphemes. Returns the
/// rule index, the rule and the byte offset where the affix is cut off.
fn find_rule<'r>(
    working: &str,
    rs: &'r RuleSet,
    kind: AffixKind,
    floor: usize,
) -> Option<(usize, &'r AffixRule, usize)> {
    let bounds = grapheme::boundaries(working);
    let total = bounds.len() - 1;
    rs.rules()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.kind() == kind)
        .find_map(|(i, rule)| {
            let pattern = rule.pattern();
            let split = match kind {
                AffixKind::Suffix if working.ends_with(pattern) => working.len() - pattern.len(),
                AffixKind::Prefix if working.starts_with(pattern) => pattern.len(),
                _ => return None,
            };
            let at = bounds.binary_search(&split).ok()?;
            let residual_len = match kind {
                AffixKind::Suffix => at,
                AffixKind::Prefix => total - at,
            };
            (residual_len >= rs.effective_min_stem(rule).max(floor)).then_some((i, rule, split))
        })
}

fn apply(result: &mut StemResult, index: usize, rule: &AffixRule, split: usize) {
    let pattern = rule.pattern();
    let replacement = rule.replacement();
    match rule.kind() {
        AffixKind::Suffix => {
            let residual = &result.stem[..split];
            result.stem = format!("{residual}{replacement}");
            let outer = result.suffix.take().unwrap_or_default();
            result.suffix = Some(format!("{pattern}{outer}"));
        }
        AffixKind::Prefix => {
            let residual = &result.stem[split..];
            result.stem = format!("{replacement}{residual}");
            let outer = result.prefix.take().unwrap_or_default();
            result.prefix = Some(format!("{outer}{pattern}"));
        }
    }
    result.applied.push(AppliedRule {
        index,
        id: rule.id(),
        kind: rule.kind(),
        pattern: pattern.to_string(),
        replacement: replacement.to_string(),
    });
}

/// Stems every word in order. The first failing word aborts the batch and is
/// reported with its index.
pub fn stem_batch<S: AsRef<str>>(
    words: &[S],
    rs: &RuleSet,
    cfg: &StemConfig,
) -> Result<Vec<StemResult>, StemError> {
    words
        .iter()
        .enumerate()
        .map(|(index, w)| {
            stem_word(w.as_ref(), rs, cfg).map_err(|e| StemError::Batch {
                index,
                source: Box::new(e),
            })
        })
        .collect()
}
