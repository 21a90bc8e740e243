//! Seeded synthetic corpora: triples with a planted echo rule and matching
//! pushshift-style dumps.

use std::collections::{BTreeMap, BTreeSet};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::corpus::ConversationTriple;
use crate::textprep::{is_stopword, stem_of, stopword_list};

/// Echo is drawn per candidate stem: `p_both` when the stem occurs in both
/// OP and PC, `p_single` otherwise. Document lengths are random.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedConfig {
    pub n_triples: usize,
    pub op_words: (usize, usize),
    pub pc_words: (usize, usize),
    pub filler_words: (usize, usize),
    /// Chance that a PC word is copied from the OP.
    pub overlap: f64,
    pub p_both: f64,
    pub p_single: f64,
    pub vocab_size: usize,
    /// Unix time of the first triple; triples are spread over `span_months`.
    pub start: i64,
    pub span_months: u32,
    pub seed: u64,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        PlantedConfig {
            n_triples: 2000,
            op_words: (15, 60),
            pc_words: (10, 50),
            filler_words: (3, 15),
            overlap: 0.3,
            p_both: 0.7,
            p_single: 0.08,
            vocab_size: 500,
            start: 1_420_070_400, // 2015-01-01
            span_months: 36,
            seed: 7,
        }
    }
}

const ONSETS: [&str; 14] = ["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z"];
const VOWELS: [&str; 5] = ["a", "e", "i", "o", "u"];

/// Pseudo-words with pairwise distinct stems, none of them a stopword.
fn pseudo_words(rng: &mut ChaCha8Rng, n: usize, taken: &mut BTreeSet<String>, suffix: &str) -> Vec<String> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let syll = rng.random_range(2..=3);
        let mut w = String::new();
        for _ in 0..syll {
            w.push_str(ONSETS[rng.random_range(0..ONSETS.len())]);
            w.push_str(VOWELS[rng.random_range(0..VOWELS.len())]);
        }
        w.push_str(suffix);
        let stem = stem_of(&w);
        if is_stopword(&stem) || !taken.insert(stem) {
            continue;
        }
        out.push(w);
    }
    out
}

struct Vocab {
    words: Vec<String>,
    weights: WeightedIndex<f64>,
    filler: Vec<String>,
}

impl Vocab {
    fn new(rng: &mut ChaCha8Rng, size: usize) -> Self {
        let mut taken = BTreeSet::new();
        let mut words: Vec<String> = stopword_list()
            .filter(|w| w.chars().all(|c| c.is_ascii_alphabetic()))
            .take(40)
            .map(|w| w.to_string())
            .collect();
        taken.extend(words.iter().map(|w| stem_of(w)));
        words.extend(pseudo_words(rng, size, &mut taken, ""));
        let filler = pseudo_words(rng, size / 2, &mut taken, "x");
        // Zipf-like ranks over a shuffled order
        words.shuffle(rng);
        let weights = WeightedIndex::new((0..words.len()).map(|r| 1.0 / (r as f64 + 2.0))).expect("weights");
        Vocab { words, weights, filler }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> String {
        let w = &self.words[self.weights.sample(rng)];
        match rng.random_range(0..10) {
            0 if !is_stopword(&stem_of(w)) && w.ends_with(['a', 'e', 'i', 'o', 'u']) => format!("{w}s"),
            1 => capitalize(w),
            _ => w.clone(),
        }
    }
}

fn capitalize(w: &str) -> String {
    let mut c = w.chars();
    c.next().map_or_else(String::new, |f| f.to_uppercase().chain(c).collect())
}

/// Joins words into sentences of random length ending in a period.
fn render(rng: &mut ChaCha8Rng, words: &[String]) -> String {
    let mut out = String::new();
    let mut left = rng.random_range(4..12);
    for (i, w) in words.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(w);
        left -= 1;
        if left == 0 || i + 1 == words.len() {
            out.push('.');
            left = rng.random_range(4..12);
        }
    }
    out
}

fn stems_with_forms(words: &[String]) -> BTreeMap<String, Vec<String>> {
    let mut m: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for w in words {
        m.entry(stem_of(&w.to_lowercase())).or_default().push(w.clone());
    }
    m
}

const MONTH: i64 = 30 * 24 * 3600;

/// Triples carrying the planted echo rule. Triple ids are `p00000`, …
pub fn planted_triples(cfg: &PlantedConfig) -> Vec<ConversationTriple> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let vocab = Vocab::new(&mut rng, cfg.vocab_size);
    let span = i64::from(cfg.span_months) * MONTH;
    (0..cfg.n_triples)
        .map(|i| {
            let n_op = rng.random_range(cfg.op_words.0..=cfg.op_words.1);
            let n_pc = rng.random_range(cfg.pc_words.0..=cfg.pc_words.1);
            let op: Vec<String> = (0..n_op).map(|_| vocab.sample(&mut rng)).collect();
            let pc: Vec<String> = (0..n_pc)
                .map(|_| {
                    if rng.random_bool(cfg.overlap) {
                        op[rng.random_range(0..op.len())].clone()
                    } else {
                        vocab.sample(&mut rng)
                    }
                })
                .collect();
            let op_stems = stems_with_forms(&op);
            let pc_stems = stems_with_forms(&pc);
            let mut exp: Vec<String> = Vec::new();
            let candidates: BTreeSet<&String> = op_stems.keys().chain(pc_stems.keys()).collect();
            for stem in candidates {
                let both = op_stems.contains_key(stem) && pc_stems.contains_key(stem);
                let p = if both { cfg.p_both } else { cfg.p_single };
                if rng.random_bool(p) {
                    let forms = op_stems.get(stem).or_else(|| pc_stems.get(stem)).expect("candidate");
                    exp.push(forms[rng.random_range(0..forms.len())].clone());
                }
            }
            let n_fill = rng.random_range(cfg.filler_words.0..=cfg.filler_words.1);
            exp.extend((0..n_fill).map(|_| vocab.filler[rng.random_range(0..vocab.filler.len())].clone()));
            exp.shuffle(&mut rng);
            // every OP and PC ends with a period, so it is a both-sides candidate
            let mut exp_text = exp.join(" ");
            if rng.random_bool(cfg.p_both) {
                exp_text.push('.');
            }
            let offset = if cfg.n_triples > 1 {
                span * i as i64 / (cfg.n_triples as i64 - 1)
            } else {
                0
            };
            ConversationTriple {
                triple_id: format!("p{i:05}"),
                op_text: render(&mut rng, &op),
                pc_text: render(&mut rng, &pc),
                explanation_text: exp_text,
                op_author: format!("op{i}"),
                pc_depth: rng.random_range(1..=4),
                created_at: cfg.start + offset,
            }
        })
        .collect()
}

/// A pushshift-style JSONL dump (submissions and comments interleaved)
/// whose delta threads reproduce `triples`, plus distractor comments.
pub fn dump_lines(triples: &[ConversationTriple], seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines = Vec::new();
    for (i, t) in triples.iter().enumerate() {
        let sub_id = format!("s{i}");
        let op_author = if t.op_author.is_empty() { format!("op{i}") } else { t.op_author.clone() };
        let (title, body) = t.op_text.split_once('\n').unwrap_or((t.op_text.as_str(), ""));
        let ts = t.created_at;
        lines.push(json!({
            "id": sub_id, "author": op_author, "created_utc": ts - 7200,
            "title": title, "selftext": body,
        }));
        // chain of replies so the PC sits at the requested depth
        let mut parent = format!("t3_{sub_id}");
        for d in 1..t.pc_depth.max(1) {
            let id = format!("c{i}_{d}");
            let author = if d % 2 == 1 { format!("u{i}_{d}") } else { op_author.clone() };
            lines.push(json!({
                "id": id, "author": author, "created_utc": ts - 7000 + i64::from(d),
                "body": "I see a few issues here.", "parent_id": parent, "link_id": format!("t3_{sub_id}"),
            }));
            parent = format!("t1_{id}");
        }
        let pc_id = format!("pc{i}");
        lines.push(json!({
            "id": pc_id, "author": format!("persuader{i}"), "created_utc": ts - 3600,
            "body": t.pc_text, "parent_id": parent, "link_id": format!("t3_{sub_id}"),
        }));
        lines.push(json!({
            "id": t.triple_id, "author": op_author, "created_utc": ts,
            "body": format!("Δ {}", t.explanation_text),
            "parent_id": format!("t1_{pc_id}"), "link_id": format!("t3_{sub_id}"),
        }));
        if rng.random_bool(0.3) {
            lines.push(json!({
                "id": format!("x{i}"), "author": format!("lurker{i}"), "created_utc": ts + 60,
                "body": "[deleted]", "parent_id": format!("t3_{sub_id}"), "link_id": format!("t3_{sub_id}"),
            }));
        }
    }
    lines.shuffle(&mut rng);
    lines.into_iter().map(|v| v.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::extract_triples;

    #[test]
    fn deterministic_and_sized() {
        let cfg = PlantedConfig {
            n_triples: 30,
            ..Default::default()
        };
        let a = planted_triples(&cfg);
        assert_eq!(a.len(), 30);
        assert_eq!(a, planted_triples(&cfg));
        assert!(a.windows(2).all(|w| w[0].created_at <= w[1].created_at));
    }

    #[test]
    fn dump_round_trips_through_extraction() {
        let cfg = PlantedConfig {
            n_triples: 12,
            ..Default::default()
        };
        let triples = planted_triples(&cfg);
        let lines = dump_lines(&triples, 1);
        let mut subs = Vec::new();
        let mut comments = Vec::new();
        for l in &lines {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            if v.get("parent_id").is_some() {
                comments.push(serde_json::from_value(v).unwrap());
            } else {
                subs.push(serde_json::from_value(v).unwrap());
            }
        }
        let (mut got, report) = extract_triples(&subs, &comments);
        got.sort_by(|a, b| a.triple_id.cmp(&b.triple_id));
        assert_eq!(report.triples, 12);
        for (g, t) in got.iter().zip(&triples) {
            assert_eq!(g.triple_id, t.triple_id);
            assert_eq!(g.pc_depth, t.pc_depth);
            assert_eq!(g.pc_text, t.pc_text);
            assert_eq!(g.created_at, t.created_at);
        }
    }
}
