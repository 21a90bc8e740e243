use std::collections::BTreeMap;

use log::info;
use serde::{Deserialize, Serialize};

use super::metrics::Confusion;
use crate::error::{Error, Result};
use crate::features::{group_indices, indices_without, CandidateRow, FeatureGroup};
use crate::learn::{grid_search, ModelSpec};
use crate::textprep::is_stopword;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AblationEntry {
    pub forward_all: f64,
    pub forward_content: Option<f64>,
    pub forward_stop: Option<f64>,
    pub backward_all: f64,
    pub backward_content: Option<f64>,
    pub backward_stop: Option<f64>,
}

struct Scores {
    all: f64,
    content: Option<f64>,
    stop: Option<f64>,
}

fn score(rows: &[CandidateRow], preds: &[u8]) -> Scores {
    let (mut all, mut content, mut stop) = (Confusion::default(), Confusion::default(), Confusion::default());
    for (r, &p) in rows.iter().zip(preds) {
        all.add(p, r.label);
        if is_stopword(&r.stem) {
            stop.add(p, r.label);
        } else {
            content.add(p, r.label);
        }
    }
    let opt = |c: Confusion| (c.total() > 0).then(|| c.f1());
    Scores {
        all: all.f1(),
        content: opt(content),
        stop: opt(stop),
    }
}

fn tuned_scores(
    train: &[CandidateRow],
    validation: &[CandidateRow],
    test: &[CandidateRow],
    configs: &[ModelSpec],
    features: &[usize],
    threshold: f64,
) -> Result<Scores> {
    let result = grid_search(train, validation, configs, features, threshold)?;
    Ok(score(test, &result.best.predict_rows(test)?))
}

/// Forward (only this group) and backward (all but this group) variants,
/// each retuned on validation all-words F1 and scored on `test`.
pub fn ablation(
    train: &[CandidateRow],
    validation: &[CandidateRow],
    test: &[CandidateRow],
    groups: &[FeatureGroup],
    configs: &[ModelSpec],
    threshold: f64,
) -> Result<BTreeMap<FeatureGroup, AblationEntry>> {
    if test.is_empty() {
        return Err(Error::InvalidConfig("empty test set".into()));
    }
    let mut out = BTreeMap::new();
    for &g in groups {
        info!("ablation: {}", g.as_str());
        let fwd = tuned_scores(train, validation, test, configs, &group_indices(&[g]), threshold)?;
        let bwd = tuned_scores(train, validation, test, configs, &indices_without(&[g]), threshold)?;
        out.insert(
            g,
            AblationEntry {
                forward_all: fwd.all,
                forward_content: fwd.content,
                forward_stop: fwd.stop,
                backward_all: bwd.all,
                backward_content: bwd.content,
                backward_stop: bwd.stop,
            },
        );
    }
    Ok(out)
}
