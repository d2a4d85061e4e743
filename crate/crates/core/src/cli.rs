//! Command-line front end. The binary is a thin wrapper around [`run`].
//!
//! Exit codes: 0 on success, 1 when a rule file fails validation, 2 for input,
//! IO and alignment errors. Output is assembled in memory and written only
//! after the whole command succeeded.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{ArgAction, Parser, Subcommand, ValueEnum};

use crate::corpus::{normalize, normalize_bytes, tokenize, TokenKind};
use crate::eval::{
    evaluate_with, parse_gold, parse_stem_rows, report_json, report_key_values, summarize,
    write_gold, EvalError, EvalOptions, GoldEntry,
};
use crate::morphology::{generate_gold, parse_lexicon};
use crate::rules::{parse_rule_file, AffixKind, RuleSet};
use crate::stemmer::{stem_word, PassOrder, StemConfig, StemResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "urdustem",
    version,
    about = "Rule-based affix stripping for Urdu"
)]
pub struct Cli {
    /// Rule file; the built-in default rules are used when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    rules: Option<PathBuf>,

    /// Remove vowel marks before stemming.
    #[arg(
        long,
        global = true,
        default_value_t = true,
        num_args = 0..=1,
        default_missing_value = "true",
        action = ArgAction::Set,
        value_name = "BOOL"
    )]
    strip_diacritics: bool,

    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    suffix_passes: u8,

    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    prefix_passes: u8,

    #[arg(long, global = true, value_enum, default_value_t = OrderArg::SuffixFirst)]
    order: OrderArg,

    /// Emit JSON instead of TSV / plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderArg {
    SuffixFirst,
    PrefixFirst,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stem text and print `word prefix stem suffix` rows.
    Stem {
        /// Input file, `-` or omitted for standard input.
        input: Option<PathBuf>,
        /// Treat every non-empty line as one word instead of tokenizing.
        #[arg(long)]
        lines: bool,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Score the stemmer against a gold file.
    Eval {
        #[arg(long, value_name = "PATH")]
        gold: PathBuf,
        /// Pre-computed stemmer output rows to score instead of stemming the gold words.
        #[arg(long, value_name = "PATH")]
        input: Option<PathBuf>,
        /// Judge stems only, ignoring affix fields.
        #[arg(long)]
        stem_only: bool,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Validate or list a rule file.
    Rules {
        #[command(subcommand)]
        action: RulesAction,
    },
    /// Generate a gold corpus from a lexicon.
    Gen {
        #[arg(long, value_name = "PATH")]
        lexicon: Option<PathBuf>,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Print tokens as `surface kind start end` rows.
    Tokenize {
        input: Option<PathBuf>,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum RulesAction {
    Validate,
    List,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn validation(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: Option<&Path>) -> Result<Vec<u8>, Failure> {
        match path {
            Some(p) if p != Path::new("-") => {
                fs::read(p).map_err(|e| Failure::input(format!("{}: {e}", p.display())))
            }
            _ => {
                let mut buf = Vec::new();
                self.stdin
                    .read_to_end(&mut buf)
                    .map_err(|e| Failure::input(format!("stdin: {e}")))?;
                Ok(buf)
            }
        }
    }

    fn write(&mut self, path: Option<&Path>, text: &str) -> Result<(), Failure> {
        match path {
            Some(p) if p != Path::new("-") => {
                fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display())))
            }
            _ => self
                .stdout
                .write_all(text.as_bytes())
                .and_then(|_| self.stdout.flush())
                .map_err(|e| Failure::input(format!("stdout: {e}"))),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let mut io = Io { stdin, stdout };
    match execute(&cli, &mut io) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "urdustem: {}", f.message);
            f.code
        }
    }
}

fn load_rules(cli: &Cli) -> Result<RuleSet, Failure> {
    match &cli.rules {
        None => Ok(RuleSet::default_rules()),
        Some(path) => {
            let bytes =
                fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            let text = String::from_utf8(bytes).map_err(|e| {
                Failure::input(format!(
                    "{}: invalid UTF-8 at byte offset {}",
                    path.display(),
                    e.utf8_error().valid_up_to()
                ))
            })?;
            parse_rule_file(&text)
                .map_err(|e| Failure::validation(format!("{}: {e}", path.display())))
        }
    }
}

fn stem_config(cli: &Cli) -> Result<StemConfig, Failure> {
    let order = match cli.order {
        OrderArg::SuffixFirst => PassOrder::SuffixFirst,
        OrderArg::PrefixFirst => PassOrder::PrefixFirst,
    };
    StemConfig::new(cli.suffix_passes, cli.prefix_passes, order)
        .map_err(|e| Failure::input(e.to_string()))
}

fn execute(cli: &Cli, io: &mut Io<'_>) -> Result<(), Failure> {
    // the rule file is validated up front for every subcommand
    let rules = load_rules(cli)?;
    let cfg = stem_config(cli)?;
    match &cli.command {
        Command::Stem {
            input,
            lines,
            output,
        } => {
            let bytes = io.read(input.as_deref())?;
            let text = normalize_bytes(&bytes, cli.strip_diacritics)
                .map_err(|e| Failure::input(e.to_string()))?;
            let words: Vec<String> = if *lines {
                text.lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty())
                    .map(str::to_string)
                    .collect()
            } else {
                tokenize(&text)
                    .into_iter()
                    .filter(|t| t.kind == TokenKind::Word)
                    .map(|t| t.surface)
                    .collect()
            };
            let results = stem_all(&words, &rules, &cfg)?;
            let rendered = if cli.json {
                to_json(&results)?
            } else {
                results.iter().map(|r| r.to_tsv_row() + "\n").collect()
            };
            io.write(output.as_deref(), &rendered)
        }
        Command::Eval {
            gold,
            input,
            stem_only,
            output,
        } => {
            let gold_text = read_utf8(io, Some(gold))?;
            let gold_entries = parse_gold(&gold_text)
                .map_err(|e| Failure::input(format!("{}: {e}", gold.display())))?;
            let gold_entries: Vec<GoldEntry> = gold_entries
                .into_iter()
                .map(|g| normalize_gold(g, cli.strip_diacritics))
                .collect();
            let results = match input {
                Some(path) => {
                    let text = read_utf8(io, Some(path))?;
                    let rows = parse_stem_rows(&normalize(&text, cli.strip_diacritics))
                        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
                    rows
                }
                None => {
                    let words: Vec<String> = gold_entries.iter().map(|g| g.word.clone()).collect();
                    stem_all(&words, &rules, &cfg)?
                }
            };
            let opts = EvalOptions {
                stem_only: *stem_only,
            };
            let report = evaluate_with(&results, &gold_entries, opts).map_err(|e| match e {
                EvalError::WordMismatch {
                    index,
                    result,
                    gold: g,
                } => Failure::input(format!(
                    "misaligned input: entry {} has word `{result}` but gold has `{g}`",
                    index + 1
                )),
                other => Failure::input(other.to_string()),
            })?;
            let rendered = if cli.json {
                let mut s = serde_json::to_string_pretty(&report_json(&report))
                    .map_err(|e| Failure::input(e.to_string()))?;
                s.push('\n');
                s
            } else {
                format!("{}\n{}", summarize(&report), report_key_values(&report))
            };
            io.write(output.as_deref(), &rendered)
        }
        Command::Rules { action } => {
            let rendered = match action {
                RulesAction::Validate => format!(
                    "ok: {} rules (suffixes: {}, prefixes: {}), {} exceptions\n",
                    rules.len(),
                    rules.count(AffixKind::Suffix),
                    rules.count(AffixKind::Prefix),
                    rules.exceptions().len()
                ),
                RulesAction::List => list_rules(&rules, cli.json)?,
            };
            io.write(None, &rendered)
        }
        Command::Gen { lexicon, output } => {
            let text = read_utf8(io, lexicon.as_deref())?;
            let text = normalize(&text, cli.strip_diacritics);
            let entries = parse_lexicon(&text)
                .map_err(|(line, e)| Failure::input(format!("lexicon line {line}: {e}")))?;
            let gold = generate_gold(&entries).map_err(|e| Failure::input(e.to_string()))?;
            let rendered = if cli.json {
                to_json(&gold)?
            } else {
                write_gold(&gold)
            };
            io.write(output.as_deref(), &rendered)
        }
        Command::Tokenize { input, output } => {
            let bytes = io.read(input.as_deref())?;
            let text = normalize_bytes(&bytes, cli.strip_diacritics)
                .map_err(|e| Failure::input(e.to_string()))?;
            let tokens = tokenize(&text);
            let rendered = if cli.json {
                to_json(&tokens)?
            } else {
                tokens.iter().map(|t| t.to_tsv_row() + "\n").collect()
            };
            io.write(output.as_deref(), &rendered)
        }
    }
}

fn read_utf8(io: &mut Io<'_>, path: Option<&Path>) -> Result<String, Failure> {
    let bytes = io.read(path)?;
    let name = path.map_or("stdin".to_string(), |p| p.display().to_string());
    String::from_utf8(bytes).map_err(|e| {
        Failure::input(format!(
            "{name}: invalid UTF-8 at byte offset {}",
            e.utf8_error().valid_up_to()
        ))
    })
}

fn normalize_gold(g: GoldEntry, strip: bool) -> GoldEntry {
    let n = |s: &str| normalize(s, strip);
    GoldEntry {
        word: n(&g.word),
        expected_stem: n(&g.expected_stem),
        expected_prefix: g.expected_prefix.as_deref().map(n),
        expected_suffix: g.expected_suffix.as_deref().map(n),
        provenance: g.provenance,
    }
}

fn stem_all(
    words: &[String],
    rules: &RuleSet,
    cfg: &StemConfig,
) -> Result<Vec<StemResult>, Failure> {
    words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            stem_word(w, rules, cfg).map_err(|e| Failure::input(format!("word {}: {e}", i + 1)))
        })
        .collect()
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::input(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn list_rules(rules: &RuleSet, json: bool) -> Result<String, Failure> {
    if json {
        let listing = serde_json::json!({
            "suffixes": rules.count(AffixKind::Suffix),
            "prefixes": rules.count(AffixKind::Prefix),
            "default_min_stem": rules.default_min_stem(),
            "rules": rules.rules().iter().map(|r| serde_json::json!({
                "id": r.id(),
                "kind": r.kind(),
                "pattern": r.pattern(),
                "replacement": r.replacement(),
                "min_stem": rules.effective_min_stem(r),
            })).collect::<Vec<_>>(),
            "exceptions": rules.exceptions(),
        });
        return to_json(&listing);
    }
    let mut out = String::new();
    for (i, r) in rules.rules().iter().enumerate() {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            i + 1,
            r.kind().tag(),
            r.pattern(),
            r.replacement(),
            rules.effective_min_stem(r)
        ));
    }
    for word in rules.exceptions() {
        out.push_str(&format!("exception\t{word}\n"));
    }
    out.push_str(&format!("suffixes: {}\n", rules.count(AffixKind::Suffix)));
    out.push_str(&format!("prefixes: {}\n", rules.count(AffixKind::Prefix)));
    out.push_str(&format!("exceptions: {}\n", rules.exceptions().len()));
    Ok(out)
}
