//! Universal POS inventory and the builtin rule-based tagger.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The 16 universal POS tags in use for English (`SCONJ` is not produced by
/// the reference annotation pipeline). Declaration order is the canonical
/// feature order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Upos {
    Adp,
    Pron,
    X,
    Det,
    Adj,
    Propn,
    Verb,
    Part,
    Cconj,
    Intj,
    Noun,
    Num,
    Adv,
    Punct,
    Sym,
    Aux,
}

impl Upos {
    pub const COUNT: usize = 16;

    pub const ALL: [Upos; Upos::COUNT] = [
        Upos::Adp,
        Upos::Pron,
        Upos::X,
        Upos::Det,
        Upos::Adj,
        Upos::Propn,
        Upos::Verb,
        Upos::Part,
        Upos::Cconj,
        Upos::Intj,
        Upos::Noun,
        Upos::Num,
        Upos::Adv,
        Upos::Punct,
        Upos::Sym,
        Upos::Aux,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Upos::Adp => "ADP",
            Upos::Pron => "PRON",
            Upos::X => "X",
            Upos::Det => "DET",
            Upos::Adj => "ADJ",
            Upos::Propn => "PROPN",
            Upos::Verb => "VERB",
            Upos::Part => "PART",
            Upos::Cconj => "CCONJ",
            Upos::Intj => "INTJ",
            Upos::Noun => "NOUN",
            Upos::Num => "NUM",
            Upos::Adv => "ADV",
            Upos::Punct => "PUNCT",
            Upos::Sym => "SYM",
            Upos::Aux => "AUX",
        }
    }

    /// Maps an exchange-format tag onto the inventory. `SCONJ` folds into
    /// `ADP` (how older English models tag subordinators) and `CONJ` is the
    /// pre-v2 name of `CCONJ`; anything else unknown becomes `X`. `SPACE`
    /// has no mapping: callers drop those tokens.
    pub fn from_exchange(tag: &str) -> Option<Upos> {
        match tag {
            "SPACE" => None,
            "SCONJ" => Some(Upos::Adp),
            "CONJ" => Some(Upos::Cconj),
            other => Some(other.parse().unwrap_or(Upos::X)),
        }
    }
}

impl fmt::Display for Upos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Upos {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Upos::ALL
            .into_iter()
            .find(|u| u.as_str() == s)
            .ok_or_else(|| format!("unknown POS tag `{s}`"))
    }
}

const DET: &[&str] = &[
    "the", "a", "an", "this", "that", "these", "those", "every", "each", "some", "any", "no",
    "all", "both", "either", "neither", "another", "such", "what", "which", "whose", "my",
    "your", "his", "her", "its", "our", "their",
];
const PRON: &[&str] = &[
    "i", "me", "you", "he", "him", "she", "it", "we", "us", "they", "them", "myself",
    "yourself", "himself", "herself", "itself", "ourselves", "yourselves", "themselves", "who",
    "whom", "mine", "yours", "hers", "ours", "theirs", "something", "anything", "nothing",
    "everything", "someone", "anyone", "everyone", "nobody", "somebody", "anybody", "everybody",
];
const ADP: &[&str] = &[
    "of", "in", "on", "at", "by", "for", "with", "about", "against", "between", "into",
    "through", "during", "before", "after", "above", "below", "to", "from", "up", "down", "out",
    "off", "over", "under", "since", "without", "within", "along", "across", "among", "around",
    "behind", "beyond", "near", "toward", "towards", "upon", "via", "like", "than", "because",
    "although", "though", "while", "if", "unless", "whether", "until", "as",
];
const CCONJ: &[&str] = &["and", "or", "but", "nor", "yet", "&"];
const AUX: &[&str] = &[
    "is", "am", "are", "was", "were", "be", "been", "being", "have", "has", "had", "having",
    "do", "does", "did", "will", "would", "shall", "should", "can", "could", "may", "might",
    "must", "ca", "wo", "'s", "'m", "'re", "'ve", "'ll", "'d",
];
const PART: &[&str] = &["not", "n't", "'"];
const INTJ: &[&str] = &[
    "oh", "wow", "hey", "hello", "hi", "thanks", "please", "ok", "okay", "yes", "yeah", "uh",
    "um", "lol", "haha", "alas",
];
const ADV: &[&str] = &[
    "very", "too", "also", "just", "only", "really", "quite", "rather", "never", "always",
    "often", "sometimes", "here", "there", "now", "then", "still", "even", "already", "again",
    "ever", "perhaps", "maybe", "however", "therefore", "thus", "instead", "almost", "so",
    "how", "why", "when", "where", "much", "well", "soon", "once",
];
const NUM_WORDS: &[&str] = &[
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "hundred",
    "thousand", "million", "billion",
];
const VERBS: &[&str] = &[
    "think", "believe", "know", "say", "said", "make", "made", "get", "got", "go", "went",
    "see", "saw", "want", "need", "agree", "change", "argue", "feel", "felt", "give", "gave",
    "take", "took", "put", "let", "seem", "mean", "meant", "come", "came",
];
const ADJS: &[&str] = &[
    "good", "bad", "new", "old", "important", "different", "better", "best", "worse", "worst",
    "more", "most", "many", "few", "other", "same", "own", "sure", "right", "wrong", "true",
    "false", "high", "low", "big", "small", "great", "little", "long", "short",
];
const ADJ_SUFFIXES: &[&str] = &["ous", "ful", "able", "ible", "ive", "less", "ish", "ical"];
const SYMBOLS: &[char] = &['$', '%', '+', '=', '<', '>', '#', '~', '^', '|', '©', '€', '£'];

fn sentence_final(tok: &str) -> bool {
    matches!(tok, "." | "!" | "?" | "..." | "!!" | "??")
}

fn tag_one(tok: &str, sentence_start: bool) -> Upos {
    if tok.contains('@') {
        return Upos::X;
    }
    if !tok.chars().any(char::is_alphanumeric) {
        let mut chars = tok.chars();
        return match (chars.next(), chars.next()) {
            (Some(c), None) if SYMBOLS.contains(&c) => Upos::Sym,
            _ if tok.chars().all(|c| SYMBOLS.contains(&c)) => Upos::Sym,
            _ => Upos::Punct,
        };
    }
    let lower = tok.to_lowercase();
    let l = lower.as_str();
    if l.chars().all(|c| c.is_ascii_digit() || c == ',' || c == '.') || NUM_WORDS.contains(&l) {
        return Upos::Num;
    }
    let lists: [(&[&str], Upos); 10] = [
        (DET, Upos::Det),
        (PRON, Upos::Pron),
        (CCONJ, Upos::Cconj),
        (AUX, Upos::Aux),
        (PART, Upos::Part),
        (ADP, Upos::Adp),
        (INTJ, Upos::Intj),
        (ADV, Upos::Adv),
        (VERBS, Upos::Verb),
        (ADJS, Upos::Adj),
    ];
    if let Some((_, tag)) = lists.iter().find(|(words, _)| words.contains(&l)) {
        return *tag;
    }
    if !sentence_start && tok.chars().next().is_some_and(char::is_uppercase) {
        return Upos::Propn;
    }
    let len = l.chars().count();
    if len > 4 && l.ends_with("ly") {
        return Upos::Adv;
    }
    if len > 4 && (l.ends_with("ing") || l.ends_with("ed")) {
        return Upos::Verb;
    }
    if len > 4 && ADJ_SUFFIXES.iter().any(|s| l.ends_with(s)) {
        return Upos::Adj;
    }
    Upos::Noun
}

/// Tags a token sequence with closed-class lexicons, capitalization and
/// suffix rules. Open-class words default to `NOUN`.
pub fn builtin_tag<S: AsRef<str>>(tokens: &[S]) -> Vec<Upos> {
    let mut out = Vec::with_capacity(tokens.len());
    let mut sentence_start = true;
    for tok in tokens {
        let tok = tok.as_ref();
        out.push(tag_one(tok, sentence_start));
        sentence_start = sentence_final(tok) || (sentence_start && tok.starts_with('"'));
    }
    out
}
