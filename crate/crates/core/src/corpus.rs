//! Text normalization and tokenization for Urdu input.

use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;
use unicode_normalization::UnicodeNormalization;
use unicode_segmentation::UnicodeSegmentation;

/// Letter unification table shipped with the crate.
pub const LETTER_MAP: &str = include_str!("../data/letter_map.tsv");

const ZWNJ: char = '\u{200C}';
const ZWJ: char = '\u{200D}';

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("invalid UTF-8 at byte offset {offset}")]
    InvalidUtf8 { offset: usize },
}

/// Harakat and related vowel marks removed when stripping diacritics.
/// Madda and hamza above/below (U+0653..=U+0655) are orthographic in Urdu and
/// stay.
pub fn is_strippable_mark(c: char) -> bool {
    matches!(c,
        '\u{064B}'..='\u{0652}'   // tanwin, fatha, damma, kasra, shadda, sukun
        | '\u{0656}'..='\u{065F}' // subscript alef and other extended marks
        | '\u{0670}'              // superscript alef
        | '\u{0640}'              // tatweel
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Context {
    Any,
    AspirateMedial,
}

#[derive(Debug)]
struct LetterMap {
    aspirates: Vec<char>,
    entries: Vec<(char, char, Context)>,
}

fn letter_map() -> &'static LetterMap {
    static MAP: OnceLock<LetterMap> = OnceLock::new();
    MAP.get_or_init(|| parse_letter_map(LETTER_MAP))
}

fn parse_letter_map(text: &str) -> LetterMap {
    let mut map = LetterMap {
        aspirates: Vec::new(),
        entries: Vec::new(),
    };
    for line in text.lines() {
        if let Some(list) = line.strip_prefix("#!aspirates\t") {
            map.aspirates = list.chars().collect();
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let single = |s: &str| {
            let mut it = s.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => c,
                _ => panic!("letter map field `{s}` must be one code point"),
            }
        };
        let context = match fields.get(2).copied().unwrap_or("any") {
            "any" => Context::Any,
            "aspirate-medial" => Context::AspirateMedial,
            other => panic!("unknown letter map context `{other}`"),
        };
        map.entries
            .push((single(fields[0]), single(fields[1]), context));
    }
    map
}

fn is_combining(c: char) -> bool {
    // Arabic-block nonspacing marks plus the generic combining ranges
    matches!(c,
        '\u{0300}'..='\u{036F}'
        | '\u{0610}'..='\u{061A}'
        | '\u{064B}'..='\u{065F}'
        | '\u{0670}'
        | '\u{06D6}'..='\u{06DC}'
        | '\u{06DF}'..='\u{06E4}'
        | '\u{06E7}'..='\u{06E8}'
        | '\u{06EA}'..='\u{06ED}'
    )
}

fn map_letter(map: &LetterMap, c: char, prev: Option<char>, next: Option<char>) -> char {
    map.entries
        .iter()
        .filter(|(from, _, _)| *from == c)
        .find(|(_, _, ctx)| match ctx {
            Context::Any => true,
            Context::AspirateMedial => {
                prev.is_some_and(|p| map.aspirates.contains(&p))
                    && next.is_some_and(|n| n.is_alphabetic())
            }
        })
        .map_or(c, |(_, to, _)| *to)
}

fn unify_letters(chars: &[char]) -> String {
    let map = letter_map();
    let mut out: Vec<char> = Vec::with_capacity(chars.len());
    for (i, &c) in chars.iter().enumerate() {
        // context is read from already-unified output on the left
        let prev = out.iter().rev().copied().find(|p| !is_combining(*p));
        let next = chars[i + 1..].iter().copied().find(|n| !is_combining(*n));
        out.push(map_letter(map, c, prev, next));
    }
    out.into_iter().collect()
}

/// Normalizes text to NFC, optionally strips vowel marks, and unifies
/// Arabic code points with their Urdu counterparts. Idempotent.
pub fn normalize(text: &str, strip_diacritics: bool) -> String {
    let chars: Vec<char> = text
        .nfc()
        .filter(|c| !(strip_diacritics && is_strippable_mark(*c)))
        .collect();
    unify_letters(&chars).nfc().collect()
}

/// [`normalize`] over raw bytes, rejecting invalid UTF-8.
pub fn normalize_bytes(bytes: &[u8], strip_diacritics: bool) -> Result<String, CorpusError> {
    let text = std::str::from_utf8(bytes).map_err(|e| CorpusError::InvalidUtf8 {
        offset: e.valid_up_to(),
    })?;
    Ok(normalize(text, strip_diacritics))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TokenKind {
    Word,
    Punct,
    Number,
    Other,
}

impl TokenKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TokenKind::Word => "Word",
            TokenKind::Punct => "Punct",
            TokenKind::Number => "Number",
            TokenKind::Other => "Other",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub surface: String,
    /// Byte offsets into the tokenized text, end exclusive.
    pub start: usize,
    pub end: usize,
    pub kind: TokenKind,
}

impl Token {
    pub fn to_tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.surface,
            self.kind.as_str(),
            self.start,
            self.end
        )
    }
}

fn is_punctuation(c: char) -> bool {
    c.is_ascii_punctuation()
        || matches!(c,
            '\u{060C}' | '\u{060D}' | '\u{061B}' | '\u{061E}' | '\u{061F}' // ، ؍ ؛ ؞ ؟
            | '\u{066A}'..='\u{066D}'                                     // ٪ ٫ ٬ ٭
            | '\u{06D4}'                                                  // ۔
            | '\u{00A1}' | '\u{00AB}' | '\u{00BB}' | '\u{00BF}'
            | '\u{2010}'..='\u{2027}'
            | '\u{2030}'..='\u{205E}'
            | '\u{FD3E}' | '\u{FD3F}'
        )
}

/// Classification of one grapheme; `None` for separators.
fn classify(grapheme: &str) -> Option<TokenKind> {
    let first = grapheme.chars().next()?;
    if first.is_whitespace() {
        None
    } else if first == ZWNJ || first == ZWJ || first.is_alphabetic() || is_combining(first) {
        Some(TokenKind::Word)
    } else if first.is_numeric() {
        Some(TokenKind::Number)
    } else if is_punctuation(first) {
        Some(TokenKind::Punct)
    } else {
        Some(TokenKind::Other)
    }
}

/// Splits normalized text into tokens. Whitespace separates tokens and is
/// dropped; each punctuation mark is its own token; runs of letters (with ZWNJ
/// kept inside) form words and runs of digits form numbers.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens: Vec<Token> = Vec::new();
    let mut open = false;
    for (start, g) in text.grapheme_indices(true) {
        let Some(kind) = classify(g) else {
            open = false;
            continue;
        };
        let end = start + g.len();
        let extends = matches!(kind, TokenKind::Word | TokenKind::Number);
        match tokens.last_mut() {
            Some(last) if open && extends && last.kind == kind && last.end == start => {
                last.surface.push_str(g);
                last.end = end;
            }
            _ => tokens.push(Token {
                surface: g.to_string(),
                start,
                end,
                kind,
            }),
        }
        open = true;
    }
    tokens
}

/// Surfaces of the word tokens in `text`.
pub fn words(text: &str) -> Vec<String> {
    tokenize(text)
        .into_iter()
        .filter(|t| t.kind == TokenKind::Word)
        .map(|t| t.surface)
        .collect()
}
