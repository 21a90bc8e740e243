use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::taxonomy::Taxonomy;
use crate::annotate::AnnotatedTriple;
use crate::error::{Error, Result};

/// Training-split statistics shared by every featurized triple.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusStats {
    /// Training documents; every OP and every PC counts once.
    pub n_docs: u64,
    /// Number of training documents whose stem set contains the stem.
    pub df: BTreeMap<String, u64>,
    /// Fraction of training triples with the stem in OP ∪ PC in which the
    /// explanation also contains it.
    pub transfer_prob: BTreeMap<String, f64>,
    /// Unweighted mean of `transfer_prob`, used for unseen stems.
    pub mean_transfer_prob: f64,
    #[serde(skip, default = "Taxonomy::bundled")]
    pub taxonomy: Arc<Taxonomy>,
}

impl PartialEq for CorpusStats {
    fn eq(&self, other: &Self) -> bool {
        self.n_docs == other.n_docs
            && self.df == other.df
            && self.transfer_prob == other.transfer_prob
            && self.mean_transfer_prob == other.mean_transfer_prob
    }
}

impl CorpusStats {
    pub fn with_taxonomy(mut self, taxonomy: Arc<Taxonomy>) -> Self {
        self.taxonomy = taxonomy;
        self
    }

    /// Training document frequency, or 0 for a stem never seen in training.
    pub fn df_of(&self, stem: &str) -> u64 {
        self.df.get(stem).copied().unwrap_or(0)
    }

    /// `ln(N / df)`, with `df = 1` for unseen stems.
    pub fn idf(&self, stem: &str) -> f64 {
        let df = self.df_of(stem).max(1);
        (self.n_docs as f64 / df as f64).ln()
    }

    pub fn transfer(&self, stem: &str) -> f64 {
        self.transfer_prob
            .get(stem)
            .copied()
            .unwrap_or(self.mean_transfer_prob)
    }
}

#[derive(Default)]
struct Counts {
    docs: u64,
    df: HashMap<String, u64>,
    /// stem -> (explanandum appearances, echoed appearances)
    transfer: HashMap<String, (u64, u64)>,
}

impl Counts {
    fn add(mut self, t: &AnnotatedTriple) -> Self {
        let op = t.op.stems();
        let pc = t.pc.stems();
        let exp = t.explanation.stems();
        for s in op.iter().chain(pc.iter()) {
            *self.df.entry((*s).to_string()).or_default() += 1;
        }
        self.docs += 2;
        let candidates: BTreeSet<&str> = op.union(&pc).copied().collect();
        for s in candidates {
            let e = self.transfer.entry(s.to_string()).or_default();
            e.0 += 1;
            if exp.contains(s) {
                e.1 += 1;
            }
        }
        self
    }

    fn merge(mut self, other: Counts) -> Self {
        self.docs += other.docs;
        for (k, v) in other.df {
            *self.df.entry(k).or_default() += v;
        }
        for (k, (a, b)) in other.transfer {
            let e = self.transfer.entry(k).or_default();
            e.0 += a;
            e.1 += b;
        }
        self
    }
}

/// Document frequencies and transfer probabilities over the training split.
pub fn build_corpus_stats(train: &[AnnotatedTriple]) -> Result<CorpusStats> {
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let counts = train
        .par_iter()
        .fold(Counts::default, Counts::add)
        .reduce(Counts::default, Counts::merge);

    let transfer_prob: BTreeMap<String, f64> = counts
        .transfer
        .into_iter()
        .map(|(k, (seen, echoed))| (k, echoed as f64 / seen as f64))
        .collect();
    let mean_transfer_prob = if transfer_prob.is_empty() {
        0.0
    } else {
        transfer_prob.values().sum::<f64>() / transfer_prob.len() as f64
    };
    Ok(CorpusStats {
        n_docs: counts.docs,
        df: counts.df.into_iter().collect(),
        transfer_prob,
        mean_transfer_prob,
        taxonomy: Taxonomy::bundled(),
    })
}
