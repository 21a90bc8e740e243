//! Stem-level stopword classification over the bundled 179-word English list.

use std::collections::HashSet;
use std::sync::LazyLock;

use super::porter::porter_stem;

/// Surface stopword list, one word per line.
pub const STOPWORDS_TXT: &str = include_str!("../../data/stopwords.txt");

static STEMMED: LazyLock<HashSet<String>> = LazyLock::new(|| {
    STOPWORDS_TXT
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(porter_stem)
        .collect()
});

/// True iff `stem` equals the Porter stem of some bundled stopword.
pub fn is_stopword(stem: &str) -> bool {
    STEMMED.contains(stem)
}

pub fn stopword_list() -> impl Iterator<Item = &'static str> {
    STOPWORDS_TXT.lines().map(str::trim).filter(|l| !l.is_empty())
}
