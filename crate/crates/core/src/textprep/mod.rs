//! Text normalization, tokenization, stemming, stopwords and quote marking.

mod normalize;
mod porter;
mod quotes;
mod stopwords;
mod tags;
mod tokenize;

use serde::{Deserialize, Serialize};

use crate::features::DepRole;

pub use normalize::{normalize_text, DocKind, NormalizedText, URL_SENTINEL};
pub use porter::porter_stem;
pub use quotes::mark_quotes;
pub use stopwords::{is_stopword, stopword_list, STOPWORDS_TXT};
pub use tags::{builtin_tag, Upos};
pub use tokenize::{tokenize, RawToken};

/// Stem used for candidates and labels. Tokens without any alphanumeric
/// character (punctuation) keep their surface form as their stem.
pub fn stem_of(lower: &str) -> String {
    if lower.chars().any(char::is_alphanumeric) {
        porter_stem(lower)
    } else {
        lower.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub lower: String,
    pub stem: String,
    pub index: usize,
    pub in_quotes: bool,
    pub pos: Upos,
    pub dep_role: DepRole,
    pub is_entity: bool,
}

/// A token sequence for one OP, PC or explanation. Whitespace tokens never
/// appear.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AnnotatedDoc {
    pub tokens: Vec<Token>,
}

impl AnnotatedDoc {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn stems(&self) -> std::collections::BTreeSet<&str> {
        self.tokens.iter().map(|t| t.stem.as_str()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn punctuation_keeps_surface_as_stem() {
        assert_eq!(stem_of("."), ".");
        assert_eq!(stem_of("..."), "...");
        assert_eq!(stem_of("running"), "run");
        assert_eq!(stem_of("n't"), "n't");
    }

    #[test]
    fn normalize_is_idempotent_on_samples() {
        let samples = [
            "see https://www.quora.com/profile/ now",
            "!delta that helped",
            "a\t\t b---c",
            "> quoted\n>more\nplain text -- here",
            "r/ideasforcmv, /r/nba and u/Ansuz07",
            "Fine.\nEDIT for clarification: This isn't to suggest",
            "Thanks! Hello, users of CMV! This is a footnote",
            "Δ Great point ** really __ convincing",
        ];
        for kind in [DocKind::Op, DocKind::Pc, DocKind::Explanation] {
            for s in samples {
                let once = normalize_text(s, kind);
                let twice = normalize_text(once.as_str(), kind);
                assert_eq!(once, twice, "{s:?} ({kind:?})");
            }
        }
    }
}
