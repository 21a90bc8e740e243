use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::annotate::AnnotatedTriple;
use crate::textprep::{is_stopword, AnnotatedDoc, Token};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LengthCorrelations {
    pub op_pc: Option<f64>,
    pub op_explanation: Option<f64>,
    pub pc_explanation: Option<f64>,
}

/// Mean per-triple fraction of words echoed from a source.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EchoFractions {
    /// Explanation words whose stem occurs in the OP or PC.
    pub explanation_from_op_pc: Option<f64>,
    /// PC words whose stem occurs in the OP.
    pub pc_from_op: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DocCounts {
    pub mean_sentences: f64,
    pub mean_words: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Descriptives {
    pub n_triples: usize,
    pub length_correlations: LengthCorrelations,
    pub echo: EchoFractions,
    /// Target words inside quotations are ignored.
    pub echo_outside_quotes: EchoFractions,
    /// Only content (non-stopword) target words are counted.
    pub echo_content: EchoFractions,
    pub op: DocCounts,
    pub pc: DocCounts,
    pub explanation: DocCounts,
}

fn is_word(t: &Token) -> bool {
    t.stem.chars().any(char::is_alphanumeric)
}

fn word_count(doc: &AnnotatedDoc) -> usize {
    doc.tokens.iter().filter(|t| is_word(t)).count()
}

fn is_terminal(t: &Token) -> bool {
    !t.surface.is_empty() && t.surface.chars().all(|c| matches!(c, '.' | '!' | '?'))
}

/// Sentence-final punctuation runs, plus one for trailing words after the
/// last terminator.
fn sentence_count(doc: &AnnotatedDoc) -> usize {
    let mut n = 0;
    let mut open = false;
    for t in &doc.tokens {
        if is_terminal(t) {
            if open {
                n += 1;
            }
            open = false;
        } else if is_word(t) {
            open = true;
        }
    }
    n + usize::from(open)
}

/// Pearson correlation; `None` for fewer than two points or zero variance.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

fn mean(v: &[f64]) -> Option<f64> {
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

fn echo_fraction<'a>(
    target: &AnnotatedDoc,
    sources: impl IntoIterator<Item = &'a AnnotatedDoc>,
    keep: impl Fn(&Token) -> bool,
) -> Option<f64> {
    let pool: HashSet<&str> = sources.into_iter().flat_map(|d| d.tokens.iter().map(|t| t.stem.as_str())).collect();
    let words: Vec<&Token> = target.tokens.iter().filter(|t| is_word(t) && keep(t)).collect();
    if words.is_empty() {
        return None;
    }
    let hit = words.iter().filter(|t| pool.contains(t.stem.as_str())).count();
    Some(hit as f64 / words.len() as f64)
}

fn fractions(triples: &[AnnotatedTriple], keep: impl Fn(&Token) -> bool + Copy) -> EchoFractions {
    let exp: Vec<f64> = triples
        .iter()
        .filter_map(|t| echo_fraction(&t.explanation, [&t.op, &t.pc], keep))
        .collect();
    let pc: Vec<f64> = triples.iter().filter_map(|t| echo_fraction(&t.pc, [&t.op], keep)).collect();
    EchoFractions {
        explanation_from_op_pc: mean(&exp),
        pc_from_op: mean(&pc),
    }
}

fn counts(triples: &[AnnotatedTriple], pick: impl Fn(&AnnotatedTriple) -> &AnnotatedDoc) -> DocCounts {
    let s: Vec<f64> = triples.iter().map(|t| sentence_count(pick(t)) as f64).collect();
    let w: Vec<f64> = triples.iter().map(|t| word_count(pick(t)) as f64).collect();
    DocCounts {
        mean_sentences: mean(&s).unwrap_or(0.0),
        mean_words: mean(&w).unwrap_or(0.0),
    }
}

pub fn corpus_descriptives(triples: &[AnnotatedTriple]) -> Descriptives {
    let len = |pick: fn(&AnnotatedTriple) -> &AnnotatedDoc| -> Vec<f64> {
        triples.iter().map(|t| word_count(pick(t)) as f64).collect()
    };
    let (op, pc, exp) = (len(|t| &t.op), len(|t| &t.pc), len(|t| &t.explanation));
    Descriptives {
        n_triples: triples.len(),
        length_correlations: LengthCorrelations {
            op_pc: pearson(&op, &pc),
            op_explanation: pearson(&op, &exp),
            pc_explanation: pearson(&pc, &exp),
        },
        echo: fractions(triples, |_| true),
        echo_outside_quotes: fractions(triples, |t| !t.in_quotes),
        echo_content: fractions(triples, |t| !is_stopword(&t.stem)),
        op: counts(triples, |t| &t.op),
        pc: counts(triples, |t| &t.pc),
        explanation: counts(triples, |t| &t.explanation),
    }
}
