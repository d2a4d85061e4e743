//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unicode_normalization::UnicodeNormalization;

use urdustem::corpus::normalize;
use urdustem::eval::{classify_error, evaluate, parse_gold, summarize, ErrorClass, GoldEntry};
use urdustem::morphology::{generate_gold, parse_lexicon};
use urdustem::rules::{
    parse_rule_file, serialize_rule_set, AffixKind, AffixRule, RuleSet, DEFAULT_RULES,
};
use urdustem::stemmer::{stem_word, PassOrder, StemConfig, StemResult};

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;
type Split = (Option<String>, String, Option<String>);

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_urdustem"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

// 1. Reference output table through the CLI.
fn reference_golden() -> Outcome {
    let start = Instant::now();
    let out = bin()
        .arg("--rules")
        .arg(fixture("reference.rules"))
        .args(["stem", "--lines"])
        .arg(fixture("reference_words.txt"))
        .output()
        .map_err(|e| e.to_string())?;
    within(Duration::from_secs(1), start)?;
    ensure(out.status.success(), || {
        format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let expected = [
        "علاقوں\t\tعلاقہ\tوں",
        "فاصلے\t\tفاصلہ\tے",
        "سوالات\t\tسوال\tات",
        "لڑکیاں\t\tلڑکی\tیاں",
        "راجویر\tراج\tویر\t",
        "نوجوان\tنو\tجوان\t",
        "لاجواب\tلا\tجواب\t",
        "بد نصیب\tبد \tنصیب\t",
    ];
    let got: Vec<&str> = stdout.lines().collect();
    ensure(got == expected, || format!("rows differ:\n{stdout}"))?;

    // same rows scored against the gold fixture
    let rules = parse_rule_file(&std::fs::read_to_string(fixture("reference.rules")).unwrap())
        .map_err(|e| e.to_string())?;
    let gold = parse_gold(&std::fs::read_to_string(fixture("reference_gold.tsv")).unwrap())
        .map_err(|e| e.to_string())?;
    let results: Vec<StemResult> = gold
        .iter()
        .map(|g| stem_word(&g.word, &rules, &StemConfig::default()).unwrap())
        .collect();
    let report = evaluate(&results, &gold).map_err(|e| e.to_string())?;
    ensure(
        report.correct == 8 && report.over_count + report.under_count + report.other_count == 0,
        || format!("{report:?}"),
    )?;
    Ok(format!("8/8 rows exact in {:?}", start.elapsed()))
}

// 2. Accuracy arithmetic on 2000 entries with 1730 correct.
fn accuracy_arithmetic() -> Outcome {
    let start = Instant::now();
    let mut results = Vec::new();
    let mut gold = Vec::new();
    for i in 0..2000 {
        let word = format!("لفظ{i}");
        gold.push(GoldEntry::pass_through(&word).unwrap());
        let stem = if i < 1730 {
            word.clone()
        } else {
            "لف".to_string()
        };
        results.push(StemResult {
            word,
            prefix: None,
            stem,
            suffix: None,
            applied: Vec::new(),
            exception_hit: false,
        });
    }
    let report = evaluate(&results, &gold).map_err(|e| e.to_string())?;
    within(Duration::from_secs(1), start)?;
    ensure(report.accuracy_display() == "86.5", || {
        report.accuracy_display()
    })?;
    ensure((report.correct, report.wrong) == (1730, 270), || {
        format!("{report:?}")
    })?;
    let text = summarize(&report);
    ensure(text.contains("Accuracy (%) 86.5\n"), || text.clone())?;
    Ok(format!(
        "accuracy {} ({}/{})",
        report.accuracy_display(),
        report.correct,
        report.total_words
    ))
}

// 3. Error taxonomy on the two introductory examples.
fn error_taxonomy() -> Outcome {
    let result = |word: &str, stem: &str| StemResult {
        word: word.into(),
        prefix: None,
        stem: stem.into(),
        suffix: None,
        applied: Vec::new(),
        exception_hit: false,
    };
    let under = classify_error(
        &result("پیشگی", "پیشگ"),
        &GoldEntry::new("پیشگی", "پیش", None, Some("گی")).unwrap(),
    )
    .map_err(|e| e.to_string())?;
    let over = classify_error(
        &result("بدمعاش", "ماش"),
        &GoldEntry::pass_through("بدمعاش").unwrap(),
    )
    .map_err(|e| e.to_string())?;
    ensure(under == ErrorClass::UnderStemming, || {
        format!("پیشگ: {under:?}")
    })?;
    ensure(over == ErrorClass::OverStemming, || {
        format!("ماش: {over:?}")
    })?;
    Ok("پیشگ → UnderStemming, ماش → OverStemming".into())
}

const LETTERS: [&str; 10] = ["ا", "ب", "ت", "ر", "ک", "ل", "ن", "و", "ی", "ں"];

#[derive(Clone, Debug)]
struct OracleRule {
    kind: AffixKind,
    pattern: Vec<char>,
    replacement: Vec<char>,
    min_stem: Option<usize>,
}

/// Naive reference: sort every rule by pattern length (ties by source
/// position), then in each pass take the first rule that matches at the edge
/// and leaves enough stem.
fn oracle(
    word: &str,
    rules: &[OracleRule],
    default_min: usize,
    exceptions: &HashSet<String>,
    suffix_passes: u8,
    prefix_passes: u8,
    order: PassOrder,
) -> Split {
    if exceptions.contains(word) {
        return (None, word.to_string(), None);
    }
    let mut sorted: Vec<(usize, &OracleRule)> = rules.iter().enumerate().collect();
    sorted.sort_by(|a, b| {
        b.1.pattern
            .len()
            .cmp(&a.1.pattern.len())
            .then(a.0.cmp(&b.0))
    });
    let mut working: Vec<char> = word.chars().collect();
    let mut prefix: Vec<char> = Vec::new();
    let mut suffix: Vec<char> = Vec::new();
    let mut touched = (false, false);
    let mut floor = 0;
    let kinds = match order {
        PassOrder::SuffixFirst => [
            (AffixKind::Suffix, suffix_passes),
            (AffixKind::Prefix, prefix_passes),
        ],
        PassOrder::PrefixFirst => [
            (AffixKind::Prefix, prefix_passes),
            (AffixKind::Suffix, suffix_passes),
        ],
    };
    for (kind, passes) in kinds {
        for _ in 0..passes {
            let mut fired = false;
            for (_, rule) in sorted.iter().filter(|(_, r)| r.kind == kind) {
                let n = rule.pattern.len();
                if n > working.len() {
                    continue;
                }
                let matches = match kind {
                    AffixKind::Suffix => working[working.len() - n..] == rule.pattern[..],
                    AffixKind::Prefix => working[..n] == rule.pattern[..],
                };
                let need = rule.min_stem.unwrap_or(default_min).max(floor);
                if !matches || working.len() - n < need {
                    continue;
                }
                floor = floor.max(rule.min_stem.unwrap_or(default_min));
                match kind {
                    AffixKind::Suffix => {
                        working.truncate(working.len() - n);
                        working.extend(&rule.replacement);
                        let mut s = rule.pattern.clone();
                        s.extend(&suffix);
                        suffix = s;
                        touched.1 = true;
                    }
                    AffixKind::Prefix => {
                        let mut w = rule.replacement.clone();
                        w.extend(&working[n..]);
                        working = w;
                        prefix.extend(&rule.pattern);
                        touched.0 = true;
                    }
                }
                fired = true;
                break;
            }
            if !fired {
                break;
            }
        }
    }
    let s = |v: Vec<char>| v.into_iter().collect::<String>();
    (
        touched.0.then(|| s(prefix)),
        s(working),
        touched.1.then(|| s(suffix)),
    )
}

fn random_string(rng: &mut ChaCha8Rng, len: usize) -> String {
    (0..len).map(|_| *LETTERS.choose(rng).unwrap()).collect()
}

// 4. Longest-match semantics against the brute-force oracle.
fn longest_match() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut cases = 0usize;
    let mut mismatches = Vec::new();
    for _ in 0..100 {
        let lexicon: Vec<String> = (0..50)
            .map(|_| {
                let n = rng.gen_range(1..=9);
                random_string(&mut rng, n)
            })
            .collect();
        let mut seen = HashSet::new();
        let mut oracle_rules = Vec::new();
        let mut rules = Vec::new();
        for _ in 0..rng.gen_range(0..14) {
            let kind = if rng.gen_bool(0.6) {
                AffixKind::Suffix
            } else {
                AffixKind::Prefix
            };
            let plen = rng.gen_range(1..=4);
            let pattern = random_string(&mut rng, plen);
            if !seen.insert((kind, pattern.clone())) {
                continue;
            }
            let rlen = if rng.gen_bool(0.3) {
                rng.gen_range(0..=plen)
            } else {
                0
            };
            let replacement = random_string(&mut rng, rlen);
            let min_stem = rng.gen_bool(0.3).then(|| rng.gen_range(1..=4));
            rules.push(
                AffixRule::new(kind, pattern.clone(), replacement.clone(), min_stem).unwrap(),
            );
            oracle_rules.push(OracleRule {
                kind,
                pattern: pattern.chars().collect(),
                replacement: replacement.chars().collect(),
                min_stem,
            });
        }
        let default_min = rng.gen_range(1..=3);
        let exceptions: HashSet<String> = lexicon
            .iter()
            .filter(|_| rng.gen_bool(0.05))
            .cloned()
            .collect();
        let rs = RuleSet::new(rules, &exceptions, default_min).unwrap();
        let order = if rng.gen_bool(0.5) {
            PassOrder::SuffixFirst
        } else {
            PassOrder::PrefixFirst
        };
        let (sp, pp) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let cfg = StemConfig::new(sp, pp, order).unwrap();
        for word in &lexicon {
            let got = stem_word(word, &rs, &cfg).map_err(|e| e.to_string())?;
            let want = oracle(word, &oracle_rules, default_min, &exceptions, sp, pp, order);
            cases += 1;
            if (got.prefix.clone(), got.stem.clone(), got.suffix.clone()) != want {
                mismatches.push(format!("{word}: got {got:?}, want {want:?}"));
            }
        }
    }
    ensure(cases >= 1000, || format!("only {cases} cases"))?;
    ensure(mismatches.is_empty(), || {
        format!("{} mismatches, first: {}", mismatches.len(), mismatches[0])
    })?;

    // گی must beat ی whenever both are legal
    let mut gi_cases = 0;
    for _ in 0..1000 {
        let mut rules = vec![
            AffixRule::suffix("ی").unwrap(),
            AffixRule::suffix("گی").unwrap(),
        ];
        rules.shuffle(&mut rng);
        let rs = RuleSet::new(rules, Vec::<String>::new(), 2).unwrap();
        let n = rng.gen_range(2..=7);
        let word = format!("{}گی", random_string(&mut rng, n));
        let got = stem_word(&word, &rs, &StemConfig::default()).map_err(|e| e.to_string())?;
        ensure(got.suffix.as_deref() == Some("گی"), || {
            format!("{word}: {got:?}")
        })?;
        gi_cases += 1;
    }
    Ok(format!(
        "{cases} random cases, 0 mismatches; گی over ی in {gi_cases}/{gi_cases}"
    ))
}

// 5. Generate-then-stem round trip with the companion rules.
fn round_trip() -> Outcome {
    let text = std::fs::read_to_string(fixture("group1_alif_nouns.txt")).unwrap();
    let lexicon =
        parse_lexicon(&normalize(&text, true)).map_err(|(l, e)| format!("line {l}: {e}"))?;
    ensure(lexicon.len() >= 50, || {
        format!("only {} lemmas", lexicon.len())
    })?;
    let gold = generate_gold(&lexicon).map_err(|e| e.to_string())?;
    ensure(gold.len() == 6 * lexicon.len(), || {
        format!("{} entries", gold.len())
    })?;
    let rs = RuleSet::paradigm_companion();
    let (mut recovered, mut identity) = (0, 0);
    for g in &gold {
        let r = stem_word(&g.word, &rs, &StemConfig::default()).map_err(|e| e.to_string())?;
        if g.word == g.expected_stem {
            ensure(r.is_pass_through() && r.stem == g.word, || {
                format!("identity {}: {r:?}", g.word)
            })?;
            identity += 1;
        } else {
            ensure(r.stem == g.expected_stem, || {
                format!("{} → {}, expected {}", g.word, r.stem, g.expected_stem)
            })?;
            recovered += 1;
        }
    }
    Ok(format!(
        "{} lemmas: {recovered}/{recovered} inflected cells recovered, {identity} identity cells unchanged",
        lexicon.len()
    ))
}

const FUZZ_POOL: [char; 24] = [
    'ا', 'ب', 'پ', 'ت', 'د', 'ر', 'ک', 'گ', 'ل', 'م', 'ن', 'و', 'ی', 'ے', 'ں', 'ہ', 'ع', 'ھ',
    '\u{064E}', '\u{0650}', '\u{0654}', '\u{200C}', ' ', 'x',
];

// 6. Pass-through totality under fuzzing.
fn pass_through_totality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let rs = RuleSet::default_rules();
    let cfg = StemConfig::default();
    let min_stem = rs.default_min_stem();
    let mut unchanged = 0;
    for _ in 0..100_000 {
        let len = rng.gen_range(1..=12);
        let raw: String = (0..len)
            .map(|_| *FUZZ_POOL.choose(&mut rng).unwrap())
            .collect();
        let word: String = raw.nfc().collect();
        let r = stem_word(&word, &rs, &cfg).map_err(|e| format!("{word:?}: {e}"))?;
        let wlen = urdustem::grapheme::count(&word);
        let slen = urdustem::grapheme::count(&r.stem);
        ensure(slen >= wlen.min(min_stem), || {
            format!("{word:?} → {:?}", r.stem)
        })?;
        let any_edge_match = rs.rules().iter().any(|rule| match rule.kind() {
            AffixKind::Suffix => word.ends_with(rule.pattern()),
            AffixKind::Prefix => word.starts_with(rule.pattern()),
        });
        if !any_edge_match && !rs.is_exception(&word) {
            ensure(r.is_pass_through() && r.stem == word, || {
                format!("{word:?}: {r:?}")
            })?;
            unchanged += 1;
        }
    }
    Ok(format!(
        "100000 fuzzed words, no errors, {unchanged} non-matching words unchanged"
    ))
}

// 7. Rule-file round trip and validator exit codes.
fn rule_file_round_trip() -> Outcome {
    let first = parse_rule_file(DEFAULT_RULES).map_err(|e| e.to_string())?;
    let text = serialize_rule_set(&first);
    let second = parse_rule_file(&text).map_err(|e| e.to_string())?;
    ensure(first == second, || {
        "parse ∘ serialize ∘ parse changed the rule set".into()
    })?;
    ensure(text == DEFAULT_RULES, || {
        "shipped file is not in canonical form".into()
    })?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let longer = dir.path().join("longer.rules");
    std::fs::write(&longer, "S\tے\tہا\n").unwrap();
    let dup = dir.path().join("dup.rules");
    std::fs::write(&dup, "S\tوں\nS\tات\nS\tوں\tہ\n").unwrap();

    let out = bin()
        .arg("--rules")
        .arg(&longer)
        .args(["rules", "validate"])
        .output()
        .unwrap();
    ensure(out.status.code() == Some(1), || {
        format!("longer replacement: exit {:?}", out.status.code())
    })?;
    let out = bin()
        .arg("--rules")
        .arg(&dup)
        .args(["rules", "validate"])
        .output()
        .unwrap();
    let err = String::from_utf8_lossy(&out.stderr);
    ensure(out.status.code() == Some(1), || {
        format!("duplicate: exit {:?}", out.status.code())
    })?;
    ensure(err.contains("line 3") && err.contains("line 1"), || {
        format!("duplicate diagnostics: {err}")
    })?;
    let out = bin().args(["rules", "validate"]).output().unwrap();
    ensure(out.status.success(), || {
        "default rules failed validation".into()
    })?;
    Ok("fixpoint on shipped file; longer-replacement and duplicate fixtures exit 1".into())
}

// 8. Normalization idempotence under fuzzing.
fn normalization_idempotence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let pool: Vec<char> = FUZZ_POOL
        .iter()
        .copied()
        .chain([
            'ي', 'ى', 'ك', 'ه', 'ۀ', '\u{06C1}', '\u{064B}', '\u{064F}', '\u{0651}', '\u{0652}',
            '\u{0670}', '\u{0640}', '\u{0653}', '\u{0655}', 'ٹ', 'ڑ', 'ج', '۔', '،', '\u{0301}',
            'e',
        ])
        .collect();
    for i in 0..10_000 {
        let len = rng.gen_range(0..=16);
        let s: String = (0..len).map(|_| *pool.choose(&mut rng).unwrap()).collect();
        for strip in [true, false] {
            let once = normalize(&s, strip);
            let twice = normalize(&once, strip);
            ensure(once == twice, || {
                format!("case {i} strip={strip}: {s:?} → {once:?} → {twice:?}")
            })?;
        }
    }
    Ok("10000 fuzzed strings, both strip settings".into())
}

fn main() {
    let criteria: [(&str, Check); 8] = [
        ("1 reference table golden test", reference_golden),
        ("2 accuracy arithmetic", accuracy_arithmetic),
        ("3 error taxonomy", error_taxonomy),
        ("4 longest-match property suite", longest_match),
        ("5 generate/stem round trip", round_trip),
        ("6 pass-through totality", pass_through_totality),
        ("7 rule-file round trip", rule_file_round_trip),
        ("8 normalization idempotence", normalization_idempotence),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
