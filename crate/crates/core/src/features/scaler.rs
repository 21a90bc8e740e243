use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-feature min-max scaling fitted on training rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinMaxScaler {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl MinMaxScaler {
    pub fn fit<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let first = rows.first().ok_or(Error::EmptyTrainingSet)?.as_ref();
        let dim = first.len();
        let mut min = first.to_vec();
        let mut max = first.to_vec();
        for row in rows {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                min[j] = min[j].min(x);
                max[j] = max[j].max(x);
            }
        }
        Ok(MinMaxScaler { min, max })
    }

    pub fn dim(&self) -> usize {
        self.min.len()
    }

    /// `(x - min) / (max - min)` clipped to `[0, 1]`; constant features map to 0.
    pub fn transform_into(&self, row: &[f64], out: &mut Vec<f64>) -> Result<()> {
        if row.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: row.len(),
            });
        }
        out.clear();
        out.extend(row.iter().enumerate().map(|(j, &x)| {
            let span = self.max[j] - self.min[j];
            if span > 0.0 {
                ((x - self.min[j]) / span).clamp(0.0, 1.0)
            } else {
                0.0
            }
        }));
        Ok(())
    }

    pub fn transform(&self, row: &[f64]) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(row.len());
        self.transform_into(row, &mut out)?;
        Ok(out)
    }

    pub fn transform_all<R: AsRef<[f64]>>(&self, rows: &[R]) -> Result<Vec<Vec<f64>>> {
        rows.iter().map(|r| self.transform(r.as_ref())).collect()
    }
}

pub fn fit_scaler<R: AsRef<[f64]>>(rows: &[R]) -> Result<MinMaxScaler> {
    MinMaxScaler::fit(rows)
}

pub fn apply_scaler<R: AsRef<[f64]>>(scaler: &MinMaxScaler, rows: &[R]) -> Result<Vec<Vec<f64>>> {
    scaler.transform_all(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps_training_range_to_unit_interval() {
        let s = fit_scaler(&[vec![2.0, 5.0], vec![4.0, 5.0]]).unwrap();
        assert_eq!(s.transform(&[2.0, 5.0]).unwrap(), [0.0, 0.0]);
        assert_eq!(s.transform(&[4.0, 5.0]).unwrap(), [1.0, 0.0]);
        assert_eq!(s.transform(&[3.0, 9.0]).unwrap(), [0.5, 0.0]);
    }

    #[test]
    fn clips_out_of_range_values() {
        let s = fit_scaler(&[vec![2.0], vec![4.0]]).unwrap();
        assert_eq!(s.transform(&[1.0]).unwrap(), [0.0]);
        assert_eq!(s.transform(&[10.0]).unwrap(), [1.0]);
    }

    #[test]
    fn errors() {
        let empty: [Vec<f64>; 0] = [];
        assert!(fit_scaler(&empty).is_err());
        assert!(fit_scaler(&[vec![1.0], vec![1.0, 2.0]]).is_err());
        let s = fit_scaler(&[vec![1.0]]).unwrap();
        assert!(s.transform(&[1.0, 2.0]).is_err());
    }
}
