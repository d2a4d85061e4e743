//! C ABI for the urdustem stemmer.
//!
//! Rule sets and stem results are opaque heap handles owned by the caller and
//! released with the matching `*_free` function. Fallible calls return a
//! [`UsStatus`]; the message for the most recent failure on the calling thread
//! is available from [`urdustem_last_error`]. All strings are NUL-terminated
//! UTF-8.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;
use urdustem::corpus::normalize;
use urdustem::rules::{parse_rule_file, RuleSet};
use urdustem::stemmer::{stem_word, PassOrder, StemConfig, StemResult};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    RuleParse = 3,
    Stem = 4,
    InvalidConfig = 5,
    Internal = 6,
}

/// Stemming options. Obtain defaults from [`urdustem_config_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct UsStemConfig {
    pub max_suffix_passes: u8,
    pub max_prefix_passes: u8,
    /// Strip prefixes before suffixes.
    pub prefix_first: bool,
}

/// Opaque compiled rule set.
pub struct UsRuleSet {
    inner: RuleSet,
}

/// Opaque result of stemming one word.
pub struct UsStemResult {
    inner: StemResult,
    word: CString,
    stem: CString,
    prefix: Option<CString>,
    suffix: Option<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn guard(f: impl FnOnce() -> UsStatus) -> UsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            UsStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, UsStatus> {
    if p.is_null() {
        set_error(format!("{what} is NULL"));
        return Err(UsStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|e| {
        set_error(format!(
            "{what}: invalid UTF-8 at byte offset {}",
            e.valid_up_to()
        ));
        UsStatus::InvalidUtf8
    })
}

fn c_string(s: &str) -> CString {
    // inputs arrive as C strings, so interior NULs cannot occur
    CString::new(s).unwrap_or_default()
}

/// Message describing the last failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn urdustem_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn urdustem_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub extern "C" fn urdustem_config_default() -> UsStemConfig {
    let d = StemConfig::default();
    UsStemConfig {
        max_suffix_passes: d.max_suffix_passes(),
        max_prefix_passes: d.max_prefix_passes(),
        prefix_first: d.order() == PassOrder::PrefixFirst,
    }
}

/// The built-in default rule set, or NULL on internal failure. Free with
/// [`urdustem_ruleset_free`].
#[no_mangle]
pub extern "C" fn urdustem_ruleset_default() -> *mut UsRuleSet {
    match catch_unwind(RuleSet::default_rules) {
        Ok(inner) => Box::into_raw(Box::new(UsRuleSet { inner })),
        Err(_) => {
            set_error("internal panic");
            ptr::null_mut()
        }
    }
}

/// Parses rule-file text into a new rule set stored in `*out`.
///
/// # Safety
/// `text` must be NULL or a valid NUL-terminated string; `out` must be NULL or
/// point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn urdustem_ruleset_parse(
    text: *const c_char,
    out: *mut *mut UsRuleSet,
) -> UsStatus {
    guard(|| {
        if out.is_null() {
            set_error("out is NULL");
            return UsStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let text = match read_str(text, "text") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_rule_file(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(UsRuleSet { inner }));
                UsStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                UsStatus::RuleParse
            }
        }
    })
}

/// Number of rules in the set, or 0 for NULL.
///
/// # Safety
/// `rules` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn urdustem_ruleset_len(rules: *const UsRuleSet) -> usize {
    rules.as_ref().map_or(0, |r| r.inner.len())
}

/// # Safety
/// `rules` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn urdustem_ruleset_free(rules: *mut UsRuleSet) {
    if !rules.is_null() {
        drop(Box::from_raw(rules));
    }
}

/// Stems one NFC-normalized word. `config` may be NULL for defaults. On
/// success `*out` receives a result handle to free with
/// [`urdustem_result_free`].
///
/// # Safety
/// `rules` must be a live rule-set handle, `word` a NUL-terminated string,
/// `config` NULL or a valid pointer, and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn urdustem_stem(
    rules: *const UsRuleSet,
    word: *const c_char,
    config: *const UsStemConfig,
    out: *mut *mut UsStemResult,
) -> UsStatus {
    guard(|| {
        if out.is_null() {
            set_error("out is NULL");
            return UsStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let Some(rules) = rules.as_ref() else {
            set_error("rules is NULL");
            return UsStatus::NullArgument;
        };
        let word = match read_str(word, "word") {
            Ok(w) => w,
            Err(s) => return s,
        };
        let cfg = match config.as_ref() {
            None => StemConfig::default(),
            Some(c) => {
                let order = if c.prefix_first {
                    PassOrder::PrefixFirst
                } else {
                    PassOrder::SuffixFirst
                };
                match StemConfig::new(c.max_suffix_passes, c.max_prefix_passes, order) {
                    Ok(cfg) => cfg,
                    Err(e) => {
                        set_error(e.to_string());
                        return UsStatus::InvalidConfig;
                    }
                }
            }
        };
        match stem_word(word, &rules.inner, &cfg) {
            Ok(inner) => {
                let result = UsStemResult {
                    word: c_string(&inner.word),
                    stem: c_string(&inner.stem),
                    prefix: inner.prefix.as_deref().map(c_string),
                    suffix: inner.suffix.as_deref().map(c_string),
                    inner,
                };
                *out = Box::into_raw(Box::new(result));
                UsStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                UsStatus::Stem
            }
        }
    })
}

/// # Safety
/// `result` must be NULL or a live result handle. The returned pointer is
/// owned by the handle.
#[no_mangle]
pub unsafe extern "C" fn urdustem_result_word(result: *const UsStemResult) -> *const c_char {
    result.as_ref().map_or(ptr::null(), |r| r.word.as_ptr())
}

/// # Safety
/// See [`urdustem_result_word`].
#[no_mangle]
pub unsafe extern "C" fn urdustem_result_stem(result: *const UsStemResult) -> *const c_char {
    result.as_ref().map_or(ptr::null(), |r| r.stem.as_ptr())
}

/// Detached prefix, or NULL when none was removed.
///
/// # Safety
/// See [`urdustem_result_word`].
#[no_mangle]
pub unsafe extern "C" fn urdustem_result_prefix(result: *const UsStemResult) -> *const c_char {
    result
        .as_ref()
        .and_then(|r| r.prefix.as_ref())
        .map_or(ptr::null(), |s| s.as_ptr())
}

/// Detached suffix, or NULL when none was removed.
///
/// # Safety
/// See [`urdustem_result_word`].
#[no_mangle]
pub unsafe extern "C" fn urdustem_result_suffix(result: *const UsStemResult) -> *const c_char {
    result
        .as_ref()
        .and_then(|r| r.suffix.as_ref())
        .map_or(ptr::null(), |s| s.as_ptr())
}

/// # Safety
/// See [`urdustem_result_word`].
#[no_mangle]
pub unsafe extern "C" fn urdustem_result_exception_hit(result: *const UsStemResult) -> bool {
    result.as_ref().is_some_and(|r| r.inner.exception_hit)
}

/// Number of rules applied to produce the stem.
///
/// # Safety
/// See [`urdustem_result_word`].
#[no_mangle]
pub unsafe extern "C" fn urdustem_result_applied_count(result: *const UsStemResult) -> usize {
    result.as_ref().map_or(0, |r| r.inner.applied.len())
}

/// # Safety
/// `result` must be NULL or a handle from [`urdustem_stem`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn urdustem_result_free(result: *mut UsStemResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Normalizes text (NFC, letter unification, optional diacritic stripping).
/// Returns a new string to release with [`urdustem_string_free`], or NULL on
/// error.
///
/// # Safety
/// `text` must be NULL or a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn urdustem_normalize(
    text: *const c_char,
    strip_diacritics: bool,
) -> *mut c_char {
    let mut out = ptr::null_mut();
    let status = guard(|| {
        let text = match read_str(text, "text") {
            Ok(t) => t,
            Err(s) => return s,
        };
        out = c_string(&normalize(text, strip_diacritics)).into_raw();
        UsStatus::Ok
    });
    if status == UsStatus::Ok {
        out
    } else {
        ptr::null_mut()
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn urdustem_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
