//! Accuracy evaluation against gold decompositions.
//!
//! Accuracy is `correct / total × 100`, kept as an exact rational. Wrong
//! outputs are split into under-stemming (the gold stem survives inside a
//! longer produced stem), over-stemming (the produced stem is what is left of
//! the gold stem after removing material) and everything else. Both relations
//! are proper grapheme subsequences, so `ماش` counts as over-stemmed from
//! `بدمعاش` even though the removed material is not contiguous.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::grapheme;
use crate::stemmer::StemResult;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("nothing to evaluate: accuracy is undefined for zero words")]
    Empty,
    #[error("{results} results but {gold} gold entries")]
    LengthMismatch { results: usize, gold: usize },
    #[error("entry {index}: result word `{result}` does not match gold word `{gold}`")]
    WordMismatch {
        index: usize,
        result: String,
        gold: String,
    },
    #[error("line {line}: {reason}")]
    BadLine { line: usize, reason: String },
}

/// Where a gold entry came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Provenance {
    /// Hand-written or produced by a stated paradigm rule.
    #[default]
    Stated,
    /// Produced by extending a pattern seen on a single exemplar.
    PatternGeneralized,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldEntry {
    pub word: String,
    pub expected_stem: String,
    pub expected_prefix: Option<String>,
    pub expected_suffix: Option<String>,
    pub provenance: Provenance,
}

impl GoldEntry {
    pub fn new(
        word: &str,
        expected_stem: &str,
        expected_prefix: Option<&str>,
        expected_suffix: Option<&str>,
    ) -> Result<Self, EvalError> {
        if word.is_empty() || expected_stem.is_empty() {
            return Err(EvalError::BadLine {
                line: 0,
                reason: "word and expected stem must be non-empty".into(),
            });
        }
        Ok(GoldEntry {
            word: word.to_string(),
            expected_stem: expected_stem.to_string(),
            expected_prefix: expected_prefix
                .filter(|s| !s.is_empty())
                .map(str::to_string),
            expected_suffix: expected_suffix
                .filter(|s| !s.is_empty())
                .map(str::to_string),
            provenance: Provenance::Stated,
        })
    }

    /// Gold entry for a word that should come back unchanged.
    pub fn pass_through(word: &str) -> Result<Self, EvalError> {
        Self::new(word, word, None, None)
    }

    pub fn to_tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.word,
            self.expected_stem,
            self.expected_prefix.as_deref().unwrap_or(""),
            self.expected_suffix.as_deref().unwrap_or("")
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ErrorClass {
    Correct,
    OverStemming,
    UnderStemming,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EvalOptions {
    /// Judge only the stem, ignoring prefix/suffix fields.
    pub stem_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalReport {
    pub total_words: u64,
    pub correct: u64,
    pub wrong: u64,
    /// Distinct word types among correct outputs.
    pub unique_correct: u64,
    /// Correct outputs that were returned unchanged (no affix removed).
    pub pass_through_correct: u64,
    pub accuracy_percent: Ratio<u64>,
    pub over_count: u64,
    pub under_count: u64,
    pub other_count: u64,
    pub min_word_len: usize,
    pub max_word_len: usize,
}

impl EvalReport {
    /// Accuracy rounded half-up to one decimal place, computed in integers.
    pub fn accuracy_display(&self) -> String {
        let tenths = round_half_up(self.accuracy_percent * 10);
        format!("{}.{}", tenths / 10, tenths % 10)
    }
}

fn round_half_up(r: Ratio<u64>) -> u64 {
    (2 * r.numer() + r.denom()) / (2 * r.denom())
}

fn affix_eq(produced: &Option<String>, expected: &Option<String>) -> bool {
    produced.as_deref().filter(|s| !s.is_empty()) == expected.as_deref().filter(|s| !s.is_empty())
}

fn is_correct(result: &StemResult, gold: &GoldEntry, opts: EvalOptions) -> bool {
    result.stem == gold.expected_stem
        && (opts.stem_only
            || (affix_eq(&result.prefix, &gold.expected_prefix)
                && affix_eq(&result.suffix, &gold.expected_suffix)))
}

/// Classifies one output against its gold entry.
pub fn classify_error(result: &StemResult, gold: &GoldEntry) -> Result<ErrorClass, EvalError> {
    classify_error_with(result, gold, EvalOptions::default())
}

pub fn classify_error_with(
    result: &StemResult,
    gold: &GoldEntry,
    opts: EvalOptions,
) -> Result<ErrorClass, EvalError> {
    if result.word != gold.word {
        return Err(EvalError::WordMismatch {
            index: 0,
            result: result.word.clone(),
            gold: gold.word.clone(),
        });
    }
    Ok(classify_unchecked(result, gold, opts))
}

fn classify_unchecked(result: &StemResult, gold: &GoldEntry, opts: EvalOptions) -> ErrorClass {
    if is_correct(result, gold, opts) {
        ErrorClass::Correct
    } else if grapheme::is_proper_subsequence(&gold.expected_stem, &result.stem) {
        ErrorClass::UnderStemming
    } else if grapheme::is_proper_subsequence(&result.stem, &gold.expected_stem) {
        ErrorClass::OverStemming
    } else {
        ErrorClass::Other
    }
}

/// Scores aligned results against gold with strict affix agreement.
pub fn evaluate(results: &[StemResult], gold: &[GoldEntry]) -> Result<EvalReport, EvalError> {
    evaluate_with(results, gold, EvalOptions::default())
}

pub fn evaluate_with(
    results: &[StemResult],
    gold: &[GoldEntry],
    opts: EvalOptions,
) -> Result<EvalReport, EvalError> {
    if results.len() != gold.len() {
        return Err(EvalError::LengthMismatch {
            results: results.len(),
            gold: gold.len(),
        });
    }
    if gold.is_empty() {
        return Err(EvalError::Empty);
    }
    let mut correct = 0u64;
    let mut pass_through_correct = 0u64;
    let (mut over, mut under, mut other) = (0u64, 0u64, 0u64);
    let mut correct_types = BTreeSet::new();
    let mut min_len = usize::MAX;
    let mut max_len = 0;
    for (index, (r, g)) in results.iter().zip(gold).enumerate() {
        if r.word != g.word {
            return Err(EvalError::WordMismatch {
                index,
                result: r.word.clone(),
                gold: g.word.clone(),
            });
        }
        let len = grapheme::count(&g.word);
        min_len = min_len.min(len);
        max_len = max_len.max(len);
        match classify_unchecked(r, g, opts) {
            ErrorClass::Correct => {
                correct += 1;
                correct_types.insert(g.word.as_str());
                if r.prefix.is_none() && r.suffix.is_none() {
                    pass_through_correct += 1;
                }
            }
            ErrorClass::OverStemming => over += 1,
            ErrorClass::UnderStemming => under += 1,
            ErrorClass::Other => other += 1,
        }
    }
    let total = gold.len() as u64;
    Ok(EvalReport {
        total_words: total,
        correct,
        wrong: total - correct,
        unique_correct: correct_types.len() as u64,
        pass_through_correct,
        accuracy_percent: Ratio::new(correct * 100, total),
        over_count: over,
        under_count: under,
        other_count: other,
        min_word_len: min_len,
        max_word_len: max_len,
    })
}

fn rows(report: &EvalReport) -> Vec<(&'static str, &'static str, String)> {
    vec![
        ("Total Words", "total_words", report.total_words.to_string()),
        (
            "Correct stemmed output",
            "correct",
            report.correct.to_string(),
        ),
        ("Wrong output", "wrong", report.wrong.to_string()),
        (
            "Unique Words",
            "unique_correct",
            report.unique_correct.to_string(),
        ),
        (
            "Pass-through Words",
            "pass_through_correct",
            report.pass_through_correct.to_string(),
        ),
        (
            "Min Length",
            "min_word_len",
            report.min_word_len.to_string(),
        ),
        (
            "Max Length",
            "max_word_len",
            report.max_word_len.to_string(),
        ),
        (
            "Accuracy (%)",
            "accuracy_percent",
            report.accuracy_display(),
        ),
        (
            "Over Stemming",
            "over_stemming",
            report.over_count.to_string(),
        ),
        (
            "Under Stemming",
            "under_stemming",
            report.under_count.to_string(),
        ),
        (
            "Other Errors",
            "other_errors",
            report.other_count.to_string(),
        ),
    ]
}

/// Plain-text summary, one `label value` row per line.
pub fn summarize(report: &EvalReport) -> String {
    let mut out = String::from("Test Data Features Total Count\n");
    for (label, _, value) in rows(report) {
        let _ = writeln!(out, "{label} {value}");
    }
    out
}

/// Machine-readable `key<TAB>value` block.
pub fn report_key_values(report: &EvalReport) -> String {
    let mut out = String::new();
    for (_, key, value) in rows(report) {
        let _ = writeln!(out, "{key}\t{value}");
    }
    let _ = writeln!(
        out,
        "accuracy_exact\t{}/{}",
        report.accuracy_percent.numer(),
        report.accuracy_percent.denom()
    );
    out
}

/// The report as a JSON object.
pub fn report_json(report: &EvalReport) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (_, key, value) in rows(report) {
        let v = match key {
            "accuracy_percent" => serde_json::Value::String(value),
            _ => serde_json::Value::from(value.parse::<u64>().expect("count rows are integers")),
        };
        map.insert(key.to_string(), v);
    }
    map.insert(
        "accuracy_exact".into(),
        format!(
            "{}/{}",
            report.accuracy_percent.numer(),
            report.accuracy_percent.denom()
        )
        .into(),
    );
    serde_json::Value::Object(map)
}

fn split_row(line: &str, line_no: usize, min: usize) -> Result<Vec<&str>, EvalError> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() < min || fields.len() > 4 {
        return Err(EvalError::BadLine {
            line: line_no,
            reason: format!(
                "expected {min} to 4 tab-separated fields, found {}",
                fields.len()
            ),
        });
    }
    Ok(fields)
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a gold file: `word<TAB>expected_stem<TAB>expected_prefix<TAB>expected_suffix`,
/// trailing empty fields optional, `#` comments allowed.
pub fn parse_gold(text: &str) -> Result<Vec<GoldEntry>, EvalError> {
    data_lines(text)
        .map(|(line_no, line)| {
            let f = split_row(line, line_no, 2)?;
            GoldEntry::new(f[0], f[1], f.get(2).copied(), f.get(3).copied()).map_err(|_| {
                EvalError::BadLine {
                    line: line_no,
                    reason: "word and expected stem must be non-empty".into(),
                }
            })
        })
        .collect()
}

/// Writes a gold file. Runs of pattern-generalized entries are preceded by a
/// comment naming their provenance.
pub fn write_gold(entries: &[GoldEntry]) -> String {
    let mut out = String::new();
    let mut last = Provenance::Stated;
    for e in entries {
        if e.provenance != last && e.provenance == Provenance::PatternGeneralized {
            let _ = writeln!(out, "# provenance: pattern-generalized");
        } else if e.provenance != last {
            let _ = writeln!(out, "# provenance: stated");
        }
        last = e.provenance;
        out.push_str(&e.to_tsv_row());
        out.push('\n');
    }
    out
}

/// Parses stemmer output rows (`word<TAB>prefix<TAB>stem<TAB>suffix`) back into
/// results without traces.
pub fn parse_stem_rows(text: &str) -> Result<Vec<StemResult>, EvalError> {
    data_lines(text)
        .map(|(line_no, line)| {
            let f = split_row(line, line_no, 3)?;
            if f[0].is_empty() || f[2].is_empty() {
                return Err(EvalError::BadLine {
                    line: line_no,
                    reason: "word and stem must be non-empty".into(),
                });
            }
            let opt = |s: Option<&&str>| s.filter(|s| !s.is_empty()).map(|s| s.to_string());
            Ok(StemResult {
                word: f[0].to_string(),
                prefix: opt(f.get(1)),
                stem: f[2].to_string(),
                suffix: opt(f.get(3)),
                applied: Vec::new(),
                exception_hit: false,
            })
        })
        .collect()
}
