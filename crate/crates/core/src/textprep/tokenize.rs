//! Deterministic rule-based tokenizer.
//!
//! Text is split on whitespace; each chunk then has its leading and trailing
//! punctuation detached (a run of one repeated punctuation character stays a
//! single token, quote characters are always single tokens) and English
//! contraction suffixes split off the remaining core. `@` counts as a word
//! character so the `@url@` sentinel survives intact.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawToken {
    pub text: String,
    /// Byte offsets into the input.
    pub start: usize,
    pub end: usize,
}

const CONTRACTIONS: [&str; 7] = ["n't", "'s", "'re", "'ve", "'ll", "'d", "'m"];

pub(crate) fn is_quote_char(c: char) -> bool {
    matches!(c, '"' | '\u{201C}' | '\u{201D}')
}

fn is_punct(c: char) -> bool {
    !c.is_alphanumeric() && c != '@'
}

pub fn tokenize(text: &str) -> Vec<RawToken> {
    let mut out = Vec::new();
    let mut chunk_start = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = chunk_start.take() {
                split_chunk(text, s, i, &mut out);
            }
        } else if chunk_start.is_none() {
            chunk_start = Some(i);
        }
    }
    if let Some(s) = chunk_start {
        split_chunk(text, s, text.len(), &mut out);
    }
    out
}

/// Length in bytes of the punctuation token starting at the front of `s`.
fn leading_punct_len(s: &str) -> usize {
    let mut chars = s.chars();
    let first = chars.next().expect("non-empty");
    if is_quote_char(first) {
        return first.len_utf8();
    }
    first.len_utf8() + chars.take_while(|&c| c == first).map(char::len_utf8).sum::<usize>()
}

fn trailing_punct_len(s: &str) -> usize {
    let mut chars = s.chars().rev();
    let last = chars.next().expect("non-empty");
    if is_quote_char(last) {
        return last.len_utf8();
    }
    last.len_utf8() + chars.take_while(|&c| c == last).map(char::len_utf8).sum::<usize>()
}

fn split_chunk(text: &str, start: usize, end: usize, out: &mut Vec<RawToken>) {
    let mut lo = start;
    let mut hi = end;
    let mut trailing = Vec::new();

    while lo < hi && text[lo..hi].chars().next().is_some_and(is_punct) {
        let n = leading_punct_len(&text[lo..hi]);
        push(text, lo, lo + n, out);
        lo += n;
    }
    while lo < hi && text[lo..hi].chars().next_back().is_some_and(is_punct) {
        let n = trailing_punct_len(&text[lo..hi]);
        trailing.push((hi - n, hi));
        hi -= n;
    }
    if lo < hi {
        let core = &text[lo..hi];
        match contraction_split(core) {
            Some(at) => {
                push(text, lo, lo + at, out);
                push(text, lo + at, hi, out);
            }
            None => push(text, lo, hi, out),
        }
    }
    for (s, e) in trailing.into_iter().rev() {
        push(text, s, e, out);
    }
}

/// Byte index where a contraction suffix begins, if the core ends with one
/// and has a non-empty stem before it. Curly apostrophes are accepted.
fn contraction_split(core: &str) -> Option<usize> {
    let folded: String = core
        .chars()
        .map(|c| if c == '\u{2019}' { '\'' } else { c.to_ascii_lowercase() })
        .collect();
    for suffix in CONTRACTIONS {
        if folded.len() > suffix.len() && folded.ends_with(suffix) {
            // map the suffix length back onto the original (possibly multi-byte) text
            let suffix_chars = suffix.chars().count();
            let at = core
                .char_indices()
                .rev()
                .nth(suffix_chars - 1)
                .map(|(i, _)| i)?;
            if at > 0 {
                return Some(at);
            }
        }
    }
    None
}

fn push(text: &str, start: usize, end: usize, out: &mut Vec<RawToken>) {
    out.push(RawToken {
        text: text[start..end].to_string(),
        start,
        end,
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(s: &str) -> Vec<String> {
        tokenize(s).into_iter().map(|t| t.text).collect()
    }

    #[test]
    fn contractions_and_punctuation() {
        assert_eq!(words("don't stop."), ["do", "n't", "stop", "."]);
        assert_eq!(words("It's what we'll do, isn't it?"), [
            "It", "'s", "what", "we", "'ll", "do", ",", "is", "n't", "it", "?"
        ]);
        assert_eq!(words("can\u{2019}t"), ["ca", "n\u{2019}t"]);
    }

    #[test]
    fn empty_and_sentinel() {
        assert!(words("").is_empty());
        assert!(words("   ").is_empty());
        assert_eq!(words("@url@"), ["@url@"]);
        assert_eq!(words("(@url@)."), ["(", "@url@", ")", "."]);
    }

    #[test]
    fn quotes_are_single_tokens() {
        assert_eq!(words("\"yes\""), ["\"", "yes", "\""]);
        assert_eq!(words("\"\"x"), ["\"", "\"", "x"]);
        assert_eq!(words("\u{201C}hi\u{201D}"), ["\u{201C}", "hi", "\u{201D}"]);
    }

    #[test]
    fn repeated_punctuation_groups() {
        assert_eq!(words("wait... what?!"), ["wait", "...", "what", "?", "!"]);
        assert_eq!(words("b-c"), ["b-c"]);
        assert_eq!(words("'s"), ["'", "s"]);
    }

    #[test]
    fn offsets_point_into_input() {
        let text = "  héllo, wörld's ";
        for tok in tokenize(text) {
            assert_eq!(&text[tok.start..tok.end], tok.text);
        }
    }
}
