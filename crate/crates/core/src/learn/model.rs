//! Serializable trained models: scaler, feature subset and estimator.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gbt::{train_gbt, GbtConfig, GbtModel};
use super::logreg::{train_logreg, LogRegConfig, LogRegModel};
use super::Matrix;
use crate::error::{Error, Result};
use crate::features::{CandidateRow, MinMaxScaler, NUM_FEATURES};
use crate::io::{read_json, write_json};

pub const MODEL_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Logreg,
    Gbt,
}

impl std::str::FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "logreg" | "lr" => Ok(ModelKind::Logreg),
            "gbt" | "xgboost" => Ok(ModelKind::Gbt),
            _ => Err(Error::InvalidConfig(format!("unknown model kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelSpec {
    Logreg(LogRegConfig),
    Gbt(GbtConfig),
}

impl ModelSpec {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelSpec::Logreg(_) => ModelKind::Logreg,
            ModelSpec::Gbt(_) => ModelKind::Gbt,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Estimator {
    Logreg(LogRegModel),
    Gbt(GbtModel),
}

/// A fitted estimator together with the preprocessing it expects. Inputs to
/// `predict*` are raw 66-feature vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub schema_version: u32,
    /// Columns (of the scaled 66-vector) seen by the estimator.
    pub feature_indices: Vec<usize>,
    pub scaler: MinMaxScaler,
    pub threshold: f64,
    pub estimator: Estimator,
}

impl TrainedModel {
    pub fn kind(&self) -> ModelKind {
        match self.estimator {
            Estimator::Logreg(_) => ModelKind::Logreg,
            Estimator::Gbt(_) => ModelKind::Gbt,
        }
    }

    fn project(&self, raw: &[f64]) -> Result<Vec<f64>> {
        let scaled = self.scaler.transform(raw)?;
        Ok(self.feature_indices.iter().map(|&j| scaled[j]).collect())
    }

    pub fn predict_proba(&self, raw: &[f64]) -> Result<f64> {
        let x = self.project(raw)?;
        match &self.estimator {
            Estimator::Logreg(m) => m.predict_proba(&x),
            Estimator::Gbt(m) => m.predict_proba(&x),
        }
    }

    pub fn predict(&self, raw: &[f64]) -> Result<u8> {
        Ok(u8::from(self.predict_proba(raw)? >= self.threshold))
    }

    pub fn predict_rows(&self, rows: &[CandidateRow]) -> Result<Vec<u8>> {
        rows.par_iter().map(|r| self.predict(r.features.as_ref())).collect()
    }

    pub fn proba_rows(&self, rows: &[CandidateRow]) -> Result<Vec<f64>> {
        rows.par_iter().map(|r| self.predict_proba(r.features.as_ref())).collect()
    }

    /// Total-gain importance over the full 66 features (zero for features
    /// the estimator never saw). `None` for logistic regression.
    pub fn importance(&self) -> Option<Vec<f64>> {
        let Estimator::Gbt(m) = &self.estimator else {
            return None;
        };
        let local = super::gbt::feature_importance(m);
        let mut full = vec![0.0; self.scaler.dim()];
        for (&j, v) in self.feature_indices.iter().zip(local) {
            full[j] = v;
        }
        Some(full)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_json(path, self)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let m: TrainedModel = read_json(path)?;
        if m.schema_version != MODEL_SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "{}: model schema version {} (expected {MODEL_SCHEMA_VERSION})",
                path.display(),
                m.schema_version
            )));
        }
        Ok(m)
    }
}

/// Fits the scaler on `train`, then the estimator on the selected scaled columns.
pub fn fit_model(
    train: &[CandidateRow],
    spec: &ModelSpec,
    feature_indices: &[usize],
    threshold: f64,
) -> Result<TrainedModel> {
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    if let Some(&bad) = feature_indices.iter().find(|&&j| j >= NUM_FEATURES) {
        return Err(Error::InvalidConfig(format!("feature index {bad} out of range")));
    }
    let raw: Vec<&[f64]> = train.iter().map(|r| r.features.as_ref()).collect();
    let scaler = MinMaxScaler::fit(&raw)?;
    let projected: Vec<Vec<f64>> = raw
        .par_iter()
        .map(|r| {
            let s = scaler.transform(r)?;
            Ok(feature_indices.iter().map(|&j| s[j]).collect())
        })
        .collect::<Result<_>>()?;
    let x = if projected.first().is_some_and(|r| r.is_empty()) {
        Matrix::zeros(projected.len(), 0)
    } else {
        Matrix::from_rows(&projected)?
    };
    let y: Vec<u8> = train.iter().map(|r| r.label).collect();
    let estimator = match spec {
        ModelSpec::Logreg(c) => Estimator::Logreg(train_logreg(&x, &y, *c)?),
        ModelSpec::Gbt(c) => Estimator::Gbt(train_gbt(&x, &y, *c)?),
    };
    Ok(TrainedModel {
        schema_version: MODEL_SCHEMA_VERSION,
        feature_indices: feature_indices.to_vec(),
        scaler,
        threshold,
        estimator,
    })
}
