//! Feature-based learners: class-weighted logistic regression, gradient
//! boosted trees, the random baseline and validation grid search.

mod baseline;
mod gbt;
mod grid;
mod logreg;
mod model;

pub use baseline::random_baseline;
pub use gbt::{feature_importance, train_gbt, train_gbt_traced, GbtConfig, GbtModel, Node, Tree};
pub use grid::{grid_search, GridResult, GridScore, GridSpec};
pub use logreg::{train_logreg, train_logreg_traced, LogRegConfig, LogRegModel, LogisticObjective};
pub use model::{fit_model, Estimator, ModelKind, ModelSpec, TrainedModel, MODEL_SCHEMA_VERSION};

use crate::error::{Error, Result};

/// Dense row-major design matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    data: Vec<f64>,
    rows: usize,
    cols: usize,
}

impl Matrix {
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            data,
            rows: rows.len(),
            cols,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            data: vec![0.0; rows * cols],
            rows,
            cols,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[f64]> {
        (0..self.rows).map(|i| self.row(i))
    }
}

pub(crate) fn check_labels(x: &Matrix, y: &[u8]) -> Result<()> {
    if x.rows() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.rows(),
            right: y.len(),
        });
    }
    if y.iter().any(|&v| v > 1) {
        return Err(Error::InvalidConfig("labels must be 0 or 1".into()));
    }
    let pos = y.iter().filter(|&&v| v == 1).count();
    if pos == 0 || pos == y.len() {
        return Err(Error::SingleClass);
    }
    Ok(())
}

pub(crate) fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `ln(1 + e^z)` without overflow.
pub(crate) fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}
