//! Grapheme-cluster helpers. Every length in this crate is measured in
//! extended grapheme clusters, never bytes or code points.

use unicode_segmentation::UnicodeSegmentation;

/// Number of extended grapheme clusters in `s`.
pub fn count(s: &str) -> usize {
    s.graphemes(true).count()
}

/// Byte offsets of every grapheme boundary in `s`, including `0` and `s.len()`.
pub fn boundaries(s: &str) -> Vec<usize> {
    let mut out: Vec<usize> = s.grapheme_indices(true).map(|(i, _)| i).collect();
    out.push(s.len());
    out
}

/// True when the graphemes of `needle` appear in `haystack` in order (not
/// necessarily adjacent) and `needle` is non-empty and strictly shorter.
pub fn is_proper_subsequence(needle: &str, haystack: &str) -> bool {
    let n: Vec<&str> = needle.graphemes(true).collect();
    let h: Vec<&str> = haystack.graphemes(true).collect();
    if n.is_empty() || n.len() >= h.len() {
        return false;
    }
    let mut rest = h.iter();
    n.iter().all(|g| rest.any(|x| x == g))
}

/// Graphemes of `surface` left over after removing the longest grapheme
/// prefix it shares with `base`.
pub fn tail_after_common_prefix<'a>(surface: &'a str, base: &str) -> &'a str {
    let mut shared = 0;
    for (s, b) in surface.grapheme_indices(true).zip(base.graphemes(true)) {
        if s.1 != b {
            break;
        }
        shared = s.0 + s.1.len();
    }
    &surface[shared..]
}
