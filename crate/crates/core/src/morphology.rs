//! Inflection generator for building gold corpora.
//!
//! Covers the masculine group-1 noun paradigm (lemmas ending in alif, he or
//! ain), the causative verb triple and ا-final adjective agreement. Other
//! noun groups are known by name only and refuse to inflect.

use std::fmt;

use serde::Serialize;
use thiserror::Error;
use unicode_segmentation::UnicodeSegmentation;

use crate::eval::{GoldEntry, Provenance};
use crate::grapheme;

const ALIF: &str = "ا";
const HE: &str = "ہ";
const AIN: &str = "ع";
const BARI_YE: &str = "ے";
const CHOTI_YE: &str = "ی";
const WAW: &str = "و";
const WAW_NOON: &str = "وں";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphError {
    #[error("paradigm not specified by source: {0}")]
    ParadigmNotSpecified(String),
    #[error("lemma `{lemma}` does not fit {group}: {reason}")]
    WrongTermination {
        lemma: String,
        group: NounGroup,
        reason: &'static str,
    },
    #[error("empty {0}")]
    Empty(&'static str),
    #[error("lexicon entry {index} (`{lemma}`): {source}")]
    Entry {
        index: usize,
        lemma: String,
        #[source]
        source: Box<MorphError>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    Nominative,
    Oblique,
    Vocative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Number {
    Singular,
    Plural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Gender {
    Masculine,
    Feminine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct NounFeatures {
    pub case: Case,
    pub number: Number,
    pub gender: Gender,
}

impl NounFeatures {
    pub const fn masculine(number: Number, case: Case) -> Self {
        NounFeatures {
            case,
            number,
            gender: Gender::Masculine,
        }
    }
}

/// Cell order used when generating a full paradigm: singular row then
/// plural row, each nominative, oblique, vocative.
pub const GROUP1_CELLS: [NounFeatures; 6] = [
    NounFeatures::masculine(Number::Singular, Case::Nominative),
    NounFeatures::masculine(Number::Singular, Case::Oblique),
    NounFeatures::masculine(Number::Singular, Case::Vocative),
    NounFeatures::masculine(Number::Plural, Case::Nominative),
    NounFeatures::masculine(Number::Plural, Case::Oblique),
    NounFeatures::masculine(Number::Plural, Case::Vocative),
];

/// Noun inflection groups. Only [`NounGroup::Group1Masculine`] has rules;
/// the rest are named so lexicons can mention them and get a clear refusal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NounGroup {
    /// Masculine singular nouns ending in ا, ہ or ع.
    Group1Masculine,
    /// Masculine singular nouns ending in اں, e.g. دھواں.
    MasculineAan,
    /// Feminine singular nouns ending in ی, e.g. لڑکی.
    FeminineYe,
    /// Feminine singular nouns ending in ا, اں or وں.
    FeminineAlifAanOn,
}

impl NounGroup {
    pub fn id(self) -> &'static str {
        match self {
            NounGroup::Group1Masculine => "group1-masc-a/he/ain",
            NounGroup::MasculineAan => "masc-aan",
            NounGroup::FeminineYe => "fem-i",
            NounGroup::FeminineAlifAanOn => "fem-a/aan/on",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        [
            NounGroup::Group1Masculine,
            NounGroup::MasculineAan,
            NounGroup::FeminineYe,
            NounGroup::FeminineAlifAanOn,
        ]
        .into_iter()
        .find(|g| g.id() == id)
    }
}

impl fmt::Display for NounGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// How the group-1 endings attach.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TerminationClass {
    /// Final ا or ہ is replaced by the ending.
    AlifHe,
    /// The ending is appended after the final ع.
    Ain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParadigmEntry {
    lemma: String,
    group: NounGroup,
    termination: Option<TerminationClass>,
}

impl ParadigmEntry {
    /// A noun entry. For group 1 the termination class is read off the final
    /// letter; other groups carry none.
    pub fn new(lemma: &str, group: NounGroup) -> Result<Self, MorphError> {
        if lemma.is_empty() {
            return Err(MorphError::Empty("lemma"));
        }
        let termination = match group {
            NounGroup::Group1Masculine => {
                Some(
                    termination_of(lemma).ok_or_else(|| MorphError::WrongTermination {
                        lemma: lemma.to_string(),
                        group,
                        reason: "expected a final ا, ہ or ع",
                    })?,
                )
            }
            _ => None,
        };
        Ok(ParadigmEntry {
            lemma: lemma.to_string(),
            group,
            termination,
        })
    }

    pub fn group1(lemma: &str) -> Result<Self, MorphError> {
        Self::new(lemma, NounGroup::Group1Masculine)
    }

    pub fn lemma(&self) -> &str {
        &self.lemma
    }

    pub fn group(&self) -> NounGroup {
        self.group
    }

    pub fn termination(&self) -> Option<TerminationClass> {
        self.termination
    }
}

fn termination_of(lemma: &str) -> Option<TerminationClass> {
    match lemma.graphemes(true).next_back()? {
        ALIF | HE => Some(TerminationClass::AlifHe),
        AIN => Some(TerminationClass::Ain),
        _ => None,
    }
}

fn without_last_grapheme(s: &str) -> &str {
    match s.grapheme_indices(true).next_back() {
        Some((i, _)) => &s[..i],
        None => s,
    }
}

/// Surface form of a noun for one paradigm cell.
pub fn inflect_noun(entry: &ParadigmEntry, features: NounFeatures) -> Result<String, MorphError> {
    let Some(termination) = entry
        .termination
        .filter(|_| entry.group == NounGroup::Group1Masculine)
    else {
        return Err(MorphError::ParadigmNotSpecified(format!(
            "noun group {}",
            entry.group
        )));
    };
    if features.gender != Gender::Masculine {
        return Err(MorphError::ParadigmNotSpecified(format!(
            "feminine forms of {}",
            entry.group
        )));
    }
    let ending = match (features.number, features.case) {
        (Number::Singular, Case::Nominative) => return Ok(entry.lemma.clone()),
        (Number::Singular, Case::Oblique)
        | (Number::Singular, Case::Vocative)
        | (Number::Plural, Case::Nominative) => BARI_YE,
        (Number::Plural, Case::Oblique) => WAW_NOON,
        (Number::Plural, Case::Vocative) => WAW,
    };
    let base = match termination {
        TerminationClass::AlifHe => without_last_grapheme(&entry.lemma),
        TerminationClass::Ain => entry.lemma.as_str(),
    };
    Ok(format!("{base}{ending}"))
}

/// The verb triple: infinitive, direct causative, indirect causative.
pub fn inflect_verb(root: &str) -> Result<(String, String, String), MorphError> {
    if root.is_empty() {
        return Err(MorphError::Empty("verb root"));
    }
    Ok((
        format!("{root}نا"),
        format!("{root}انا"),
        format!("{root}وانا"),
    ))
}

/// Masculine-oblique and feminine forms of an ا-final adjective.
pub fn inflect_adjective(lemma: &str) -> Result<(String, String), MorphError> {
    if lemma.graphemes(true).next_back() != Some(ALIF) {
        return Err(MorphError::ParadigmNotSpecified(format!(
            "adjective `{lemma}` does not end in ا"
        )));
    }
    let base = without_last_grapheme(lemma);
    Ok((format!("{base}{BARI_YE}"), format!("{base}{CHOTI_YE}")))
}

/// One input line of a generation lexicon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LexiconEntry {
    Noun(ParadigmEntry),
    Verb(String),
    Adjective(String),
}

impl LexiconEntry {
    pub fn lemma(&self) -> &str {
        match self {
            LexiconEntry::Noun(e) => e.lemma(),
            LexiconEntry::Verb(r) | LexiconEntry::Adjective(r) => r,
        }
    }

    /// Number of gold entries this lexicon entry expands to.
    pub fn paradigm_size(&self) -> usize {
        match self {
            LexiconEntry::Noun(_) => GROUP1_CELLS.len(),
            LexiconEntry::Verb(_) => 3,
            LexiconEntry::Adjective(_) => 2,
        }
    }
}

/// Parses a lexicon file: one `kind<TAB>lemma` per line with kind one of
/// `noun[:group-id]`, `verb`, `adj`. A bare lemma is a group-1 noun.
pub fn parse_lexicon(text: &str) -> Result<Vec<LexiconEntry>, (usize, MorphError)> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (kind, lemma) = match line.split_once('\t') {
            Some((k, l)) => (k.trim(), l.trim()),
            None => ("noun", line),
        };
        let entry = match kind {
            "verb" => LexiconEntry::Verb(lemma.to_string()),
            "adj" | "adjective" => LexiconEntry::Adjective(lemma.to_string()),
            "noun" => LexiconEntry::Noun(ParadigmEntry::group1(lemma).map_err(|e| (line_no, e))?),
            other => match other.strip_prefix("noun:").and_then(NounGroup::from_id) {
                Some(group) => {
                    LexiconEntry::Noun(ParadigmEntry::new(lemma, group).map_err(|e| (line_no, e))?)
                }
                None => {
                    return Err((
                        line_no,
                        MorphError::ParadigmNotSpecified(format!("lexicon kind `{other}`")),
                    ))
                }
            },
        };
        out.push(entry);
    }
    Ok(out)
}

fn gold_for(surface: String, lemma: &str, provenance: Provenance) -> GoldEntry {
    let suffix = grapheme::tail_after_common_prefix(&surface, lemma);
    let suffix = (!suffix.is_empty()).then(|| suffix.to_string());
    GoldEntry {
        expected_stem: lemma.to_string(),
        expected_prefix: None,
        expected_suffix: suffix,
        word: surface,
        provenance,
    }
}

/// Expands every lexicon entry into its full paradigm, in lexicon order and
/// fixed cell order. The expected stem is always the lemma or root.
pub fn generate_gold(lexicon: &[LexiconEntry]) -> Result<Vec<GoldEntry>, MorphError> {
    let mut out = Vec::with_capacity(lexicon.iter().map(LexiconEntry::paradigm_size).sum());
    for (index, entry) in lexicon.iter().enumerate() {
        let wrap = |e: MorphError| MorphError::Entry {
            index,
            lemma: entry.lemma().to_string(),
            source: Box::new(e),
        };
        match entry {
            LexiconEntry::Noun(noun) => {
                for cell in GROUP1_CELLS {
                    let surface = inflect_noun(noun, cell).map_err(wrap)?;
                    out.push(gold_for(surface, noun.lemma(), Provenance::Stated));
                }
            }
            LexiconEntry::Verb(root) => {
                let (inf, direct, indirect) = inflect_verb(root).map_err(wrap)?;
                for surface in [inf, direct, indirect] {
                    out.push(gold_for(surface, root, Provenance::PatternGeneralized));
                }
            }
            LexiconEntry::Adjective(lemma) => {
                let (masc, fem) = inflect_adjective(lemma).map_err(wrap)?;
                for surface in [masc, fem] {
                    out.push(gold_for(surface, lemma, Provenance::Stated));
                }
            }
        }
    }
    Ok(out)
}
