//! Text cleanup applied to every OP, PC and explanation before tokenizing.
//!
//! Steps run in a fixed order:
//!
//! 1. moderator footers are cut from their marker to the end of the line;
//! 2. URLs become the `@url@` sentinel;
//! 3. delta symbols and their spellings become the word `delta`, and a leading
//!    `delta` is dropped from explanations;
//! 4. `u/`, `r/`, `/u/` and `/r/` prefixes are removed;
//! 5. `EDIT...:` / `Edit...:` notes are cut to the end of the line;
//! 6. blockquoted lines are wrapped in double quotes;
//! 7. whitespace runs collapse to one space, and runs of two or more `-`, `*`
//!    or `_` collapse to a single character.

use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

/// Which part of a triple a text came from. Only explanations get the
/// leading-`delta` removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocKind {
    Op,
    Pc,
    Explanation,
}

/// Output of [`normalize_text`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NormalizedText(String);

impl NormalizedText {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Wraps text that is already known to be normalized (for example text
    /// read back from a stage file).
    pub fn assume_normalized(text: impl Into<String>) -> Self {
        NormalizedText(text.into())
    }
}

impl AsRef<str> for NormalizedText {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for NormalizedText {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub const URL_SENTINEL: &str = "@url@";

const FOOTER_MARKERS: [&str; 2] = ["Hello, users of CMV", "This is a footnote"];
const DELTA_FORMS: [&str; 4] = ["Δ", "δ", "&;#8710;", "!delta"];

static URL: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(https?://[^\s)]*)").unwrap());
static REDDIT_PREFIX: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?m)(^|[^\w/])/?[ur]/").unwrap());
static EDIT_NOTE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"EDIT(.*?):.*|Edit(.*?):.*").unwrap());
static WHITESPACE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\s+").unwrap());
static HYPHENS: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"-{2,}").unwrap());
static ASTERISKS: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\*{2,}").unwrap());
static UNDERSCORES: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"_{2,}").unwrap());

pub fn normalize_text(raw: &str, kind: DocKind) -> NormalizedText {
    let text = strip_footers(raw);
    let text = URL.replace_all(&text, URL_SENTINEL);
    let mut text = replace_deltas(&text);
    if kind == DocKind::Explanation {
        text = strip_leading_delta(&text).to_string();
    }
    let text = REDDIT_PREFIX.replace_all(&text, "$1");
    let text = EDIT_NOTE.replace_all(&text, "");
    let text = quote_blockquotes(&text);
    NormalizedText(collapse(&text))
}

fn strip_footers(text: &str) -> String {
    text.split('\n')
        .map(|line| {
            let cut = FOOTER_MARKERS
                .iter()
                .filter_map(|m| line.find(m))
                .min()
                .unwrap_or(line.len());
            &line[..cut]
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn replace_deltas(text: &str) -> String {
    DELTA_FORMS
        .iter()
        .fold(text.to_string(), |acc, form| acc.replace(form, "delta"))
}

/// Repeats until the text no longer starts with the word `delta`, which keeps
/// the whole pipeline idempotent.
fn strip_leading_delta(mut text: &str) -> &str {
    loop {
        let trimmed = text.trim_start();
        match trimmed.strip_prefix("delta") {
            Some(rest) if !rest.chars().next().is_some_and(char::is_alphanumeric) => text = rest,
            _ => return text,
        }
    }
}

/// Reddit markdown quotes arrive either as `>` or HTML-escaped as `&gt;`.
fn blockquote_body(line: &str) -> Option<&str> {
    let mut rest = line.trim_start();
    let mut quoted = false;
    loop {
        if let Some(r) = rest.strip_prefix('>') {
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix("&gt;") {
            rest = r.trim_start();
        } else {
            break;
        }
        quoted = true;
    }
    quoted.then_some(rest)
}

fn quote_blockquotes(text: &str) -> String {
    let mut out: Vec<String> = Vec::new();
    let mut pending: Vec<&str> = Vec::new();
    let flush = |pending: &mut Vec<&str>, out: &mut Vec<String>| {
        let body = pending
            .iter()
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .collect::<Vec<_>>()
            .join(" ");
        if !body.is_empty() {
            out.push(format!("\"{body}\""));
        }
        pending.clear();
    };
    for line in text.split('\n') {
        match blockquote_body(line) {
            Some(body) => pending.push(body),
            None => {
                if !pending.is_empty() {
                    flush(&mut pending, &mut out);
                }
                out.push(line.to_string());
            }
        }
    }
    if !pending.is_empty() {
        flush(&mut pending, &mut out);
    }
    out.join("\n")
}

fn collapse(text: &str) -> String {
    let text = HYPHENS.replace_all(text, "-");
    let text = ASTERISKS.replace_all(&text, "*");
    let text = UNDERSCORES.replace_all(&text, "_");
    let text = WHITESPACE.replace_all(&text, " ");
    text.trim().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(s: &str) -> String {
        normalize_text(s, DocKind::Op).into_string()
    }

    #[test]
    fn url_becomes_sentinel() {
        assert_eq!(op("see https://www.quora.com/profile/ now"), "see @url@ now");
        assert_eq!(op("(http://x.org/a)b"), "(@url@)b");
    }

    #[test]
    fn delta_prefix_removed_only_from_explanations() {
        assert_eq!(
            normalize_text("!delta that helped", DocKind::Explanation).as_str(),
            "that helped"
        );
        assert_eq!(op("!delta that helped"), "delta that helped");
        assert_eq!(
            normalize_text("Δ Δ thanks", DocKind::Explanation).as_str(),
            "thanks"
        );
        assert_eq!(
            normalize_text("deltas are nice", DocKind::Explanation).as_str(),
            "deltas are nice"
        );
        assert_eq!(op("I give a δ and &;#8710;"), "I give a delta and delta");
    }

    #[test]
    fn whitespace_and_markup_runs_collapse() {
        assert_eq!(op("a\t\t b---c"), "a b-c");
        assert_eq!(op("x ** y __ z\r\n\nw"), "x * y _ z w");
        assert_eq!(op("single - hyphen"), "single - hyphen");
    }

    #[test]
    fn footer_removed_to_end_of_line() {
        assert_eq!(
            op("keep this\nHello, users of CMV! This is a footnote from your moderators.\nand this"),
            "keep this and this"
        );
        assert_eq!(op("text. This is a footnote: more"), "text.");
    }

    #[test]
    fn reddit_prefixes_stripped() {
        assert_eq!(op("r/ideasforcmv, /r/nba"), "ideasforcmv, nba");
        assert_eq!(op("thanks u/Ansuz07"), "thanks Ansuz07");
        assert_eq!(op("our/their"), "our/their");
    }

    #[test]
    fn edit_notes_removed() {
        assert_eq!(
            op("EDIT for clarification: This isn't to suggest that you have to remain financially independent to vote"),
            ""
        );
        assert_eq!(op("I agree.\nEdit: typo fixed\nBye"), "I agree. Bye");
    }

    #[test]
    fn blockquotes_wrapped_in_quotes() {
        assert_eq!(op("> you said this\nI disagree"), "\"you said this\" I disagree");
        assert_eq!(
            op("&gt; line one\n&gt;\n&gt; line two\nok"),
            "\"line one line two\" ok"
        );
    }

    #[test]
    fn empty_input() {
        assert_eq!(op(""), "");
        assert_eq!(op("   \n\t"), "");
    }
}
