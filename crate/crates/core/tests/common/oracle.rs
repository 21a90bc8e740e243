//! Brute-force recomputation of every feature on the 20-triple fixture,
//! written directly from the feature definitions.

use std::collections::BTreeSet;

use echotrace::annotate::AnnotatedTriple;
use echotrace::features::{build_corpus_stats, featurize_all, FeaturizeOptions, BUNDLED_TAXONOMY_TSV, NUM_FEATURES};
use echotrace::textprep::{porter_stem, AnnotatedDoc, Token};

const TAGS: [&str; 16] = [
    "ADP", "PRON", "X", "DET", "ADJ", "PROPN", "VERB", "PART", "CCONJ", "INTJ", "NOUN", "NUM", "ADV", "PUNCT",
    "SYM", "AUX",
];
const SUBJ: [&str; 6] = ["nsubj", "nsubjpass", "csubj", "csubjpass", "agent", "expl"];
const OBJ: [&str; 4] = ["dobj", "dative", "attr", "oprd"];

fn kl2(p: &[f64], m: &[f64]) -> f64 {
    p.iter()
        .zip(m)
        .filter(|(a, _)| **a > 0.0)
        .map(|(a, b)| a * (a / b).log2())
        .sum()
}

fn js(p: &[f64], q: &[f64]) -> f64 {
    let m: Vec<f64> = p.iter().zip(q).map(|(a, b)| 0.5 * (a + b)).collect();
    0.5 * kl2(p, &m) + 0.5 * kl2(q, &m)
}

fn stems(doc: &AnnotatedDoc) -> BTreeSet<String> {
    doc.tokens.iter().map(|t| t.stem.clone()).collect()
}

fn occurrences<'a>(doc: &'a AnnotatedDoc, stem: &str) -> Vec<&'a Token> {
    doc.tokens.iter().filter(|t| t.stem == stem).collect()
}

fn pos_dist(occ: &[&Token]) -> Vec<f64> {
    if occ.is_empty() {
        return vec![1.0 / 16.0; 16];
    }
    TAGS.iter()
        .map(|tag| occ.iter().filter(|t| t.pos.as_str() == *tag).count() as f64 / occ.len() as f64)
        .collect()
}

fn dep_dist(occ: &[&Token], raw: &[String]) -> Vec<f64> {
    if occ.is_empty() {
        return vec![1.0 / 3.0; 3];
    }
    let n = occ.len() as f64;
    let count = |set: &[&str]| occ.iter().filter(|t| set.contains(&raw[t.index].as_str())).count() as f64;
    let s = count(&SUBJ);
    let o = count(&OBJ);
    vec![s / n, o / n, (n - s - o) / n]
}

/// Side block recomputed from tokens; `raw_dep` holds the original labels.
fn side_block(doc: &AnnotatedDoc, raw_dep: &[String], raw_ent: &[String], stem: &str) -> Vec<f64> {
    let occ = occurrences(doc, stem);
    let len = doc.tokens.len() as f64;
    let mut out = pos_dist(&occ);
    out.extend(dep_dist(&occ, raw_dep));
    let tf = occ.len() as f64;
    out.push(tf);
    out.push(if occ.is_empty() { 0.0 } else { tf / len });
    let forms: BTreeSet<String> = occ.iter().map(|t| t.surface.to_lowercase()).collect();
    out.push(forms.len() as f64);
    let location = if occ.is_empty() {
        0.5
    } else {
        occ.iter().map(|t| (len - 1.0 - t.index as f64) / len).sum::<f64>() / tf
    };
    out.push(location);
    out.push(occ.iter().filter(|t| t.in_quotes).count() as f64);
    let listed = [
        "PERSON", "NORP", "FAC", "ORG", "GPE", "LOC", "PRODUCT", "EVENT", "WORK_OF_ART", "LAW", "LANGUAGE",
    ];
    let ents = occ.iter().filter(|t| listed.contains(&raw_ent[t.index].as_str())).count() as f64;
    out.push(if occ.is_empty() { 0.0 } else { ents / len });
    out
}

fn doc_pos(doc: &AnnotatedDoc) -> Vec<f64> {
    let all: Vec<&Token> = doc.tokens.iter().collect();
    pos_dist(&all)
}

fn mean_chars(doc: &AnnotatedDoc) -> f64 {
    if doc.tokens.is_empty() {
        0.0
    } else {
        doc.tokens.iter().map(|t| t.surface.chars().count() as f64).sum::<f64>() / doc.tokens.len() as f64
    }
}

/// Raw dep / ent labels per kept token, read back from the exchange file.
fn raw_labels(doc_id: &str) -> (Vec<String>, Vec<String>) {
    let text = std::fs::read_to_string(super::fixture("mini_exchange.jsonl")).unwrap();
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        if v["doc_id"] == doc_id {
            let toks: Vec<&serde_json::Value> = v["tokens"]
                .as_array()
                .unwrap()
                .iter()
                .filter(|t| t["upos"] != "SPACE" && !t["text"].as_str().unwrap().trim().is_empty())
                .collect();
            return (
                toks.iter().map(|t| t["dep"].as_str().unwrap().to_string()).collect(),
                toks.iter().map(|t| t["ent"].as_str().unwrap().to_string()).collect(),
            );
        }
    }
    panic!("missing {doc_id}");
}

fn taxonomy_depths(stem: &str, table: &[(String, u32, u32)]) -> (f64, f64) {
    let hits: Vec<&(String, u32, u32)> = table.iter().filter(|(s, _, _)| s == stem).collect();
    if hits.is_empty() {
        return (0.0, 0.0);
    }
    (
        hits.iter().map(|h| h.1).min().unwrap() as f64,
        hits.iter().map(|h| h.2).max().unwrap() as f64,
    )
}

struct Stats {
    n: f64,
    train: Vec<AnnotatedTriple>,
}

impl Stats {
    fn df(&self, stem: &str) -> f64 {
        self.train
            .iter()
            .map(|t| u32::from(stems(&t.op).contains(stem)) + u32::from(stems(&t.pc).contains(stem)))
            .sum::<u32>() as f64
    }

    fn transfer_raw(&self, stem: &str) -> Option<f64> {
        let mut seen = 0.0;
        let mut echoed = 0.0;
        for t in &self.train {
            if stems(&t.op).contains(stem) || stems(&t.pc).contains(stem) {
                seen += 1.0;
                if stems(&t.explanation).contains(stem) {
                    echoed += 1.0;
                }
            }
        }
        (seen > 0.0).then(|| echoed / seen)
    }

    fn mean_transfer(&self) -> f64 {
        let vocab: BTreeSet<String> = self.train.iter().flat_map(|t| stems(&t.op).into_iter().chain(stems(&t.pc))).collect();
        vocab.iter().map(|s| self.transfer_raw(s).unwrap()).sum::<f64>() / vocab.len() as f64
    }
}

/// Panics on the first mismatch; returns the number of rows checked.
pub fn check_fixture() -> usize {
    let triples = super::mini_annotated();
    assert_eq!(triples.len(), 20);
    let train = triples[..14].to_vec();
    let stats = build_corpus_stats(&train).unwrap();
    let rows = featurize_all(&triples, &stats, FeaturizeOptions::default());

    let oracle = Stats {
        n: 2.0 * train.len() as f64,
        train,
    };
    let mean_transfer = oracle.mean_transfer();
    let table: Vec<(String, u32, u32)> = BUNDLED_TAXONOMY_TSV
        .lines()
        .map(|l| {
            let mut c = l.split('\t');
            let lemma = c.next().unwrap();
            (
                porter_stem(&lemma.to_lowercase()),
                c.next().unwrap().parse().unwrap(),
                c.next().unwrap().parse().unwrap(),
            )
        })
        .collect();

    let mut checked = 0;
    let mut label_pos = 0;
    for t in &triples {
        let (op_dep, op_ent) = raw_labels(&format!("{}:op", t.triple_id));
        let (pc_dep, pc_ent) = raw_labels(&format!("{}:pc", t.triple_id));
        let cand: BTreeSet<String> = stems(&t.op).union(&stems(&t.pc)).cloned().collect();
        let mine: Vec<_> = rows.iter().filter(|r| r.triple_id == t.triple_id).collect();
        assert_eq!(mine.len(), cand.len(), "candidate count for {}", t.triple_id);
        for (stem, row) in cand.iter().zip(&mine) {
            assert_eq!(&row.stem, stem);
            let mut want = Vec::with_capacity(NUM_FEATURES);
            let df = oracle.df(stem).max(1.0);
            want.push((oracle.n / df).ln());
            want.push(stem.chars().count() as f64);
            let (lo, hi) = taxonomy_depths(stem, &table);
            want.push(lo);
            want.push(hi);
            want.push(oracle.transfer_raw(stem).unwrap_or(mean_transfer));
            let op_block = side_block(&t.op, &op_dep, &op_ent, stem);
            let pc_block = side_block(&t.pc, &pc_dep, &pc_ent, stem);
            want.extend(&op_block);
            want.extend(&pc_block);
            let op_forms: BTreeSet<String> = occurrences(&t.op, stem).iter().map(|x| x.surface.to_lowercase()).collect();
            let pc_forms: BTreeSet<String> = occurrences(&t.pc, stem).iter().map(|x| x.surface.to_lowercase()).collect();
            want.push(if !op_forms.is_empty() && !pc_forms.is_empty() { 1.0 } else { 0.0 });
            want.push(op_forms.difference(&pc_forms).count() as f64);
            want.push(pc_forms.difference(&op_forms).count() as f64);
            want.push(js(&op_block[..16], &pc_block[..16]));
            want.push(js(&op_block[16..19], &pc_block[16..19]));
            let (lo_, lp) = (t.op.tokens.len() as f64, t.pc.tokens.len() as f64);
            want.push(lo_);
            want.push(lp);
            want.push((lo_ - lp).abs());
            want.push(mean_chars(&t.op) - mean_chars(&t.pc));
            want.push(js(&doc_pos(&t.op), &doc_pos(&t.pc)));
            want.push(t.pc_depth as f64);
            assert_eq!(want.len(), NUM_FEATURES);

            for (j, (g, w)) in row.features.iter().zip(&want).enumerate() {
                assert!(
                    (g - w).abs() <= 1e-9,
                    "{} / {stem}: feature {j} = {g}, oracle {w}",
                    t.triple_id
                );
            }
            let label = u8::from(stems(&t.explanation).contains(stem));
            assert_eq!(row.label, label);
            label_pos += usize::from(label);
            checked += 1;
        }
    }
    assert!(checked > 200, "only {checked} rows");
    assert!(label_pos > 0 && label_pos < checked);
    checked
}
