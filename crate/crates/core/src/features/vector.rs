use std::collections::{BTreeSet, HashMap};
use std::ops::{Deref, DerefMut};

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::js::js_divergence;
use super::names::*;
use super::profile::{doc_pos_distribution, mean_token_chars, side_profiles, SideProfile};
use super::stats::CorpusStats;
use crate::annotate::AnnotatedTriple;
use crate::textprep::AnnotatedDoc;

/// The 66 per-stem features in canonical order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureVector(pub [f64; NUM_FEATURES]);

impl Default for FeatureVector {
    fn default() -> Self {
        FeatureVector([0.0; NUM_FEATURES])
    }
}

impl Deref for FeatureVector {
    type Target = [f64; NUM_FEATURES];

    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

impl DerefMut for FeatureVector {
    fn deref_mut(&mut self) -> &mut Self::Target {
        &mut self.0
    }
}

impl AsRef<[f64]> for FeatureVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<&[f64]> for FeatureVector {
    type Error = crate::Error;

    fn try_from(v: &[f64]) -> Result<Self, Self::Error> {
        let arr: [f64; NUM_FEATURES] =
            v.try_into().map_err(|_| crate::Error::DimensionMismatch {
                expected: NUM_FEATURES,
                got: v.len(),
            })?;
        Ok(FeatureVector(arr))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateRow {
    pub triple_id: String,
    pub stem: String,
    pub features: FeatureVector,
    /// 1 iff the stem occurs in the explanation.
    pub label: u8,
}

impl CandidateRow {
    pub fn is_positive(&self) -> bool {
        self.label == 1
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeaturizeOptions {
    /// Use the square root of the JS divergence (the JS distance) for the
    /// distribution-difference features.
    #[serde(default)]
    pub js_distance: bool,
}

fn js(p: &[f64], q: &[f64], opts: FeaturizeOptions) -> f64 {
    // inputs are distributions built by this module, so validation cannot fail
    let d = js_divergence(p, q).expect("well-formed distributions");
    if opts.js_distance {
        d.sqrt()
    } else {
        d
    }
}

/// Features 56-60: presence on both sides, side-exclusive surface forms and
/// the POS / dependency distribution differences.
pub fn relation_features(op: &SideProfile, pc: &SideProfile, opts: FeaturizeOptions) -> [f64; 5] {
    [
        f64::from(u8::from(op.is_present() && pc.is_present())),
        op.surface_forms.difference(&pc.surface_forms).count() as f64,
        pc.surface_forms.difference(&op.surface_forms).count() as f64,
        js(&op.pos_dist, &pc.pos_dist, opts),
        js(&op.dep_dist, &pc.dep_dist, opts),
    ]
}

/// Features 61-66, shared by every candidate of a triple.
pub fn pair_features(
    op: &AnnotatedDoc,
    pc: &AnnotatedDoc,
    pc_depth: u32,
    opts: FeaturizeOptions,
) -> [f64; 6] {
    let op_len = op.len() as f64;
    let pc_len = pc.len() as f64;
    [
        op_len,
        pc_len,
        (op_len - pc_len).abs(),
        mean_token_chars(op) - mean_token_chars(pc),
        js(&doc_pos_distribution(op), &doc_pos_distribution(pc), opts),
        f64::from(pc_depth),
    ]
}

pub fn featurize_triple(triple: &AnnotatedTriple, stats: &CorpusStats) -> Vec<CandidateRow> {
    featurize_triple_with(triple, stats, FeaturizeOptions::default())
}

/// One row per stem in S_OP ∪ S_PC, sorted by stem.
pub fn featurize_triple_with(
    triple: &AnnotatedTriple,
    stats: &CorpusStats,
    opts: FeaturizeOptions,
) -> Vec<CandidateRow> {
    if triple.op.is_empty() && triple.pc.is_empty() {
        warn!("triple {} has empty OP and PC; no candidates", triple.triple_id);
        return Vec::new();
    }
    let op_profiles = side_profiles(&triple.op);
    let pc_profiles = side_profiles(&triple.pc);
    let exp_stems = triple.explanation.stems();
    let pair = pair_features(&triple.op, &triple.pc, triple.pc_depth, opts);
    let absent = SideProfile::absent();

    let candidates: BTreeSet<&str> = op_profiles
        .keys()
        .chain(pc_profiles.keys())
        .map(String::as_str)
        .collect();

    candidates
        .into_iter()
        .map(|stem| {
            let op = op_profiles.get(stem).unwrap_or(&absent);
            let pc = pc_profiles.get(stem).unwrap_or(&absent);
            let mut f = FeatureVector::default();
            let (wn_min, wn_max) = stats.taxonomy.depths(stem);
            f[IDF] = stats.idf(stem);
            f[STEM_LENGTH] = stem.chars().count() as f64;
            f[WN_DEPTH_MIN] = f64::from(wn_min);
            f[WN_DEPTH_MAX] = f64::from(wn_max);
            f[TRANSFER_PROB] = stats.transfer(stem);
            op.write_block(&mut f[OP_BLOCK..OP_BLOCK + side::LEN]);
            pc.write_block(&mut f[PC_BLOCK..PC_BLOCK + side::LEN]);
            f[IN_BOTH..IN_BOTH + 5].copy_from_slice(&relation_features(op, pc, opts));
            f[OP_LEN..OP_LEN + 6].copy_from_slice(&pair);
            CandidateRow {
                triple_id: triple.triple_id.clone(),
                stem: stem.to_string(),
                features: f,
                label: u8::from(exp_stems.contains(stem)),
            }
        })
        .collect()
}

/// Featurizes many triples in parallel; output order follows input order.
pub fn featurize_all(
    triples: &[AnnotatedTriple],
    stats: &CorpusStats,
    opts: FeaturizeOptions,
) -> Vec<CandidateRow> {
    triples
        .par_iter()
        .map(|t| featurize_triple_with(t, stats, opts))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Groups row indices by triple id, keeping first-seen order.
pub fn rows_by_triple(rows: &[CandidateRow]) -> Vec<(&str, Vec<usize>)> {
    let mut order: Vec<(&str, Vec<usize>)> = Vec::new();
    let mut pos: HashMap<&str, usize> = HashMap::new();
    for (i, r) in rows.iter().enumerate() {
        let slot = *pos.entry(r.triple_id.as_str()).or_insert_with(|| {
            order.push((r.triple_id.as_str(), Vec::new()));
            order.len() - 1
        });
        order[slot].1.push(i);
    }
    order
}
