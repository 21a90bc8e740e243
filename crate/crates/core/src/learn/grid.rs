use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gbt::GbtConfig;
use super::logreg::LogRegConfig;
use super::model::{fit_model, ModelKind, ModelSpec, TrainedModel};
use crate::error::{Error, Result};
use crate::eval::f1;
use crate::features::CandidateRow;

/// Hyperparameter grids; defaults are the full grids with 1000 trees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GridSpec {
    pub logreg_c: Vec<f64>,
    /// `(negative, positive)` weight pairs.
    pub logreg_class_weights: Vec<(f64, f64)>,
    pub gbt_max_depth: Vec<usize>,
    pub gbt_min_child_weight: Vec<f64>,
    pub gbt_pos_weight: Vec<f64>,
    pub gbt_n_trees: usize,
    pub gbt_learning_rate: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            logreg_c: vec![0.1, 1.0, 10.0, 100.0, 1000.0, 10000.0],
            logreg_class_weights: vec![(0.25, 0.75), (0.20, 0.80), (0.15, 0.85)],
            gbt_max_depth: vec![5, 7, 9],
            gbt_min_child_weight: vec![3.0, 5.0, 7.0],
            gbt_pos_weight: vec![3.0, 4.0, 5.0],
            gbt_n_trees: 1000,
            gbt_learning_rate: 0.1,
        }
    }
}

impl GridSpec {
    /// Configurations in grid order (outermost list first).
    pub fn configs(&self, kind: ModelKind) -> Vec<ModelSpec> {
        match kind {
            ModelKind::Logreg => self
                .logreg_c
                .iter()
                .flat_map(|&c| {
                    self.logreg_class_weights
                        .iter()
                        .map(move |&w| ModelSpec::Logreg(LogRegConfig::new(c, w)))
                })
                .collect(),
            ModelKind::Gbt => {
                let mut out = Vec::new();
                for &max_depth in &self.gbt_max_depth {
                    for &min_child_weight in &self.gbt_min_child_weight {
                        for &pos_weight in &self.gbt_pos_weight {
                            out.push(ModelSpec::Gbt(GbtConfig {
                                max_depth,
                                min_child_weight,
                                pos_weight,
                                n_trees: self.gbt_n_trees,
                                learning_rate: self.gbt_learning_rate,
                                ..Default::default()
                            }));
                        }
                    }
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridScore {
    pub spec: ModelSpec,
    pub validation_f1: f64,
}

#[derive(Debug, Clone)]
pub struct GridResult {
    pub best: TrainedModel,
    pub best_index: usize,
    pub scores: Vec<GridScore>,
}

/// Fits every configuration on `train`, scores all-words F1 on
/// `validation`, and keeps the first configuration with the highest score.
pub fn grid_search(
    train: &[CandidateRow],
    validation: &[CandidateRow],
    configs: &[ModelSpec],
    feature_indices: &[usize],
    threshold: f64,
) -> Result<GridResult> {
    if configs.is_empty() {
        return Err(Error::InvalidConfig("empty hyperparameter grid".into()));
    }
    if validation.is_empty() {
        return Err(Error::InvalidConfig("empty validation set".into()));
    }
    let labels: Vec<u8> = validation.iter().map(|r| r.label).collect();
    if let [spec] = configs {
        let best = fit_model(train, spec, feature_indices, threshold)?;
        let validation_f1 = f1(&best.predict_rows(validation)?, &labels)?;
        return Ok(GridResult {
            best,
            best_index: 0,
            scores: vec![GridScore { spec: *spec, validation_f1 }],
        });
    }
    // models are dropped after scoring; the winner is refit (training is deterministic)
    let scored: Vec<f64> = configs
        .par_iter()
        .map(|spec| {
            let model = fit_model(train, spec, feature_indices, threshold)?;
            f1(&model.predict_rows(validation)?, &labels)
        })
        .collect::<Result<_>>()?;
    let mut best_index = 0;
    for (i, &s) in scored.iter().enumerate() {
        if s > scored[best_index] {
            best_index = i;
        }
    }
    let best = fit_model(train, &configs[best_index], feature_indices, threshold)?;
    let scores = configs
        .iter()
        .zip(scored)
        .map(|(spec, validation_f1)| GridScore {
            spec: *spec,
            validation_f1,
        })
        .collect();
    Ok(GridResult {
        best,
        best_index,
        scores,
    })
}
