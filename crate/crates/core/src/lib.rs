//! Rule-driven affix stripping for Urdu (Perso-Arabic script).
//!
//! The crate is organised around a declarative [`RuleSet`] of prefix and
//! suffix rules. Words are stemmed with [`stem_word`], which tries the rules
//! longest-first and leaves a word untouched when nothing matches. Around that
//! core sit a text normalizer/tokenizer ([`corpus`]), an inflection generator
//! for building gold corpora ([`morphology`]) and an accuracy harness with an
//! over-/under-stemming error taxonomy ([`eval`]).
//!
//! ```
//! use urdustem::{stem_word, RuleSet, StemConfig};
//!
//! let rules = RuleSet::default_rules();
//! let result = stem_word("سوالات", &rules, &StemConfig::default()).unwrap();
//! assert_eq!(result.stem, "سوال");
//! assert_eq!(result.suffix.as_deref(), Some("ات"));
//! ```

pub mod cli;
pub mod corpus;
pub mod eval;
pub mod grapheme;
pub mod morphology;
pub mod rules;
pub mod stemmer;

pub use corpus::{normalize, tokenize, Token, TokenKind};
pub use eval::{classify_error, evaluate, summarize, ErrorClass, EvalReport, GoldEntry};
pub use morphology::{generate_gold, inflect_adjective, inflect_noun, inflect_verb};
pub use rules::{order_rules, parse_rule_file, serialize_rule_set, AffixKind, AffixRule, RuleSet};
pub use stemmer::{stem_batch, stem_word, PassOrder, StemConfig, StemResult};
