use std::path::Path;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::annotate::AnnotatedTriple;
use crate::error::Result;
use crate::features::{CandidateRow, CorpusStats};
use crate::io::write_atomic;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecileBin {
    pub bin: usize,
    pub df_min: u64,
    pub df_max: u64,
    pub n: usize,
    pub echoed: usize,
    pub probability: f64,
    /// Binomial standard error `sqrt(p (1 - p) / n)`.
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecileCurve {
    pub bins: Vec<DecileBin>,
    pub n: usize,
    pub global_rate: f64,
    /// True when fewer than ten non-empty buckets remain after tie handling.
    pub merged: bool,
}

impl DecileCurve {
    /// Bin-size-weighted mean of the bin probabilities.
    pub fn weighted_mean(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        self.bins.iter().map(|b| b.n as f64 * b.probability).sum::<f64>() / self.n as f64
    }
}

/// Buckets `(df, echoed)` items into document-frequency deciles. Items are
/// ranked by df; a run of equal df values goes entirely to the bucket of its
/// first member, and empty buckets are dropped.
pub fn decile_curve(items: &[(u64, bool)]) -> DecileCurve {
    let n = items.len();
    let mut sorted: Vec<(u64, bool)> = items.to_vec();
    sorted.sort_by_key(|&(df, _)| df);
    let mut bins: Vec<DecileBin> = Vec::new();
    let mut i = 0;
    while i < n {
        let bucket = i * 10 / n;
        let df = sorted[i].0;
        let mut j = i;
        while j < n && sorted[j].0 == df {
            j += 1;
        }
        let echoed = sorted[i..j].iter().filter(|x| x.1).count();
        match bins.last_mut() {
            Some(b) if b.bin == bucket => {
                b.n += j - i;
                b.echoed += echoed;
                b.df_max = df;
            }
            _ => bins.push(DecileBin {
                bin: bucket,
                df_min: df,
                df_max: df,
                n: j - i,
                echoed,
                probability: 0.0,
                std_error: 0.0,
            }),
        }
        i = j;
    }
    for b in &mut bins {
        let p = b.echoed as f64 / b.n as f64;
        b.probability = p;
        b.std_error = (p * (1.0 - p) / b.n as f64).sqrt();
    }
    let merged = n > 0 && bins.len() < 10;
    if merged {
        warn!("only {} non-empty document-frequency buckets; tied deciles merged", bins.len());
    }
    let echoed = items.iter().filter(|x| x.1).count();
    DecileCurve {
        global_rate: if n == 0 { 0.0 } else { echoed as f64 / n as f64 },
        n,
        bins,
        merged,
    }
}

/// Echo probability of candidates by training document-frequency decile.
pub fn echo_prob_by_df_decile(rows: &[CandidateRow], stats: &CorpusStats) -> DecileCurve {
    let items: Vec<(u64, bool)> = rows.iter().map(|r| (stats.df_of(&r.stem), r.is_positive())).collect();
    decile_curve(&items)
}

/// The same curve for OP stems reappearing in the PC.
pub fn pc_from_op_decile(triples: &[AnnotatedTriple], stats: &CorpusStats) -> DecileCurve {
    let items: Vec<(u64, bool)> = triples
        .iter()
        .flat_map(|t| {
            let pc = t.pc.stems();
            t.op
                .stems()
                .into_iter()
                .map(|s| (stats.df_of(s), pc.contains(s)))
                .collect::<Vec<_>>()
        })
        .collect();
    decile_curve(&items)
}

pub fn write_decile_csv(path: &Path, curves: &[(&str, &DecileCurve)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["curve", "bin", "df_min", "df_max", "n", "echoed", "probability", "std_error"])?;
    for (name, c) in curves {
        for b in &c.bins {
            w.write_record([
                name.to_string(),
                b.bin.to_string(),
                b.df_min.to_string(),
                b.df_max.to_string(),
                b.n.to_string(),
                b.echoed.to_string(),
                b.probability.to_string(),
                b.std_error.to_string(),
            ])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| crate::Error::Schema(e.to_string()))?;
    write_atomic(path, &bytes)
}
