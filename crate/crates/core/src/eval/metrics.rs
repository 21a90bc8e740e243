use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tn: usize,
}

impl Confusion {
    pub fn add(&mut self, pred: u8, label: u8) {
        match (pred, label) {
            (1, 1) => self.tp += 1,
            (1, _) => self.fp += 1,
            (_, 1) => self.fn_ += 1,
            _ => self.tn += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.tp + self.fp + self.fn_ + self.tn
    }

    pub fn precision(&self) -> f64 {
        ratio(self.tp, self.tp + self.fp)
    }

    pub fn recall(&self) -> f64 {
        ratio(self.tp, self.tp + self.fn_)
    }

    /// `2PR / (P + R)`, or 0 when both are 0.
    pub fn f1(&self) -> f64 {
        let (p, r) = (self.precision(), self.recall());
        if p + r == 0.0 {
            0.0
        } else {
            2.0 * p * r / (p + r)
        }
    }
}

impl std::ops::Add for Confusion {
    type Output = Confusion;

    fn add(self, o: Confusion) -> Confusion {
        Confusion {
            tp: self.tp + o.tp,
            fp: self.fp + o.fp,
            fn_: self.fn_ + o.fn_,
            tn: self.tn + o.tn,
        }
    }
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

pub fn confusion(preds: &[u8], labels: &[u8]) -> Result<Confusion> {
    if preds.len() != labels.len() {
        return Err(Error::LengthMismatch {
            left: preds.len(),
            right: labels.len(),
        });
    }
    let mut c = Confusion::default();
    for (&p, &l) in preds.iter().zip(labels) {
        if p > 1 || l > 1 {
            return Err(Error::InvalidConfig("predictions and labels must be 0 or 1".into()));
        }
        c.add(p, l);
    }
    Ok(c)
}

pub fn f1(preds: &[u8], labels: &[u8]) -> Result<f64> {
    confusion(preds, labels).map(|c| c.f1())
}
