//! L2-regularized, class-weighted logistic regression fitted by L-BFGS with
//! Armijo backtracking.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{check_labels, sigmoid, softplus, Matrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogRegConfig {
    /// Inverse regularization strength.
    pub c: f64,
    /// `(negative, positive)` per-instance loss multipliers.
    pub class_weights: (f64, f64),
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

fn default_max_iter() -> usize {
    1000
}

fn default_tol() -> f64 {
    1e-6
}

impl Default for LogRegConfig {
    fn default() -> Self {
        LogRegConfig {
            c: 1.0,
            class_weights: (1.0, 1.0),
            max_iter: default_max_iter(),
            tol: default_tol(),
        }
    }
}

impl LogRegConfig {
    pub fn new(c: f64, class_weights: (f64, f64)) -> Self {
        LogRegConfig {
            c,
            class_weights,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogRegModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub config: LogRegConfig,
}

impl LogRegModel {
    pub fn margin(&self, x: &[f64]) -> f64 {
        self.bias + self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>()
    }

    pub fn predict_proba(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.weights.len() {
            return Err(Error::DimensionMismatch {
                expected: self.weights.len(),
                got: x.len(),
            });
        }
        Ok(sigmoid(self.margin(x)))
    }
}

/// `Σ c_i [softplus(z_i) - y_i z_i] + ‖w‖² / (2C)` over parameters
/// `[w_1, .., w_d, b]`; the bias is not regularized.
pub struct LogisticObjective<'a> {
    x: &'a Matrix,
    y: &'a [u8],
    config: LogRegConfig,
}

impl<'a> LogisticObjective<'a> {
    pub fn new(x: &'a Matrix, y: &'a [u8], config: LogRegConfig) -> Self {
        LogisticObjective { x, y, config }
    }

    pub fn n_params(&self) -> usize {
        self.x.cols() + 1
    }

    fn instance_weight(&self, label: u8) -> f64 {
        if label == 1 {
            self.config.class_weights.1
        } else {
            self.config.class_weights.0
        }
    }

    fn margin(&self, params: &[f64], i: usize) -> f64 {
        let d = self.x.cols();
        params[d]
            + self
                .x
                .row(i)
                .iter()
                .zip(&params[..d])
                .map(|(a, b)| a * b)
                .sum::<f64>()
    }

    pub fn value(&self, params: &[f64]) -> f64 {
        self.value_and_gradient(params).0
    }

    pub fn gradient(&self, params: &[f64]) -> Vec<f64> {
        self.value_and_gradient(params).1
    }

    pub fn value_and_gradient(&self, params: &[f64]) -> (f64, Vec<f64>) {
        let d = self.x.cols();
        let mut grad = vec![0.0; d + 1];
        let mut loss = 0.0;
        for (i, &label) in self.y.iter().enumerate() {
            let z = self.margin(params, i);
            let c = self.instance_weight(label);
            let yf = f64::from(label);
            loss += c * (softplus(z) - yf * z);
            let r = c * (sigmoid(z) - yf);
            for (g, xv) in grad[..d].iter_mut().zip(self.x.row(i)) {
                *g += r * xv;
            }
            grad[d] += r;
        }
        let inv_c = 1.0 / self.config.c;
        for (g, w) in grad[..d].iter_mut().zip(&params[..d]) {
            *g += inv_c * w;
        }
        loss += 0.5 * inv_c * params[..d].iter().map(|w| w * w).sum::<f64>();
        (loss, grad)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

const HISTORY: usize = 10;
const ARMIJO: f64 = 1e-4;
const MAX_HALVINGS: usize = 60;

/// Objective value after each accepted step (index 0 is the start point).
#[derive(Debug, Clone, PartialEq)]
pub struct FitTrace {
    pub objective: Vec<f64>,
    pub converged: bool,
}

pub fn train_logreg(x: &Matrix, y: &[u8], config: LogRegConfig) -> Result<LogRegModel> {
    train_logreg_traced(x, y, config).map(|(m, _)| m)
}

/// Fits from the zero vector. Stops when the gradient norm drops below
/// `config.tol`, after `config.max_iter` iterations, or when no step along
/// the search direction decreases the objective.
pub fn train_logreg_traced(
    x: &Matrix,
    y: &[u8],
    config: LogRegConfig,
) -> Result<(LogRegModel, FitTrace)> {
    check_labels(x, y)?;
    if !(config.c > 0.0) {
        return Err(Error::InvalidConfig(format!("C must be positive, got {}", config.c)));
    }
    let obj = LogisticObjective::new(x, y, config);
    let n = obj.n_params();
    let mut params = vec![0.0; n];
    let (mut f, mut g) = obj.value_and_gradient(&params);
    let mut trace = FitTrace {
        objective: vec![f],
        converged: false,
    };
    let mut history: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();

    for _ in 0..config.max_iter {
        if norm(&g) < config.tol {
            trace.converged = true;
            break;
        }
        // two-loop recursion
        let mut q = g.clone();
        let mut alphas = Vec::with_capacity(history.len());
        for (s, yv, rho) in history.iter().rev() {
            let a = rho * dot(s, &q);
            q.iter_mut().zip(yv).for_each(|(qi, yi)| *qi -= a * yi);
            alphas.push(a);
        }
        if let Some((s, yv, _)) = history.back() {
            let gamma = dot(s, yv) / dot(yv, yv);
            q.iter_mut().for_each(|qi| *qi *= gamma);
        }
        for ((s, yv, rho), a) in history.iter().zip(alphas.iter().rev()) {
            let b = rho * dot(yv, &q);
            q.iter_mut().zip(s).for_each(|(qi, si)| *qi += (a - b) * si);
        }
        let mut dir: Vec<f64> = q.into_iter().map(|v| -v).collect();
        let mut slope = dot(&g, &dir);
        if !(slope < 0.0) {
            history.clear();
            dir = g.iter().map(|v| -v).collect();
            slope = -dot(&g, &g);
        }

        let mut step = if history.is_empty() {
            1.0 / norm(&g).max(1.0)
        } else {
            1.0
        };
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            let cand: Vec<f64> = params.iter().zip(&dir).map(|(p, d)| p + step * d).collect();
            let (fc, gc) = obj.value_and_gradient(&cand);
            if fc <= f + ARMIJO * step * slope {
                accepted = Some((cand, fc, gc));
                break;
            }
            step *= 0.5;
        }
        let Some((cand, fc, gc)) = accepted else {
            break;
        };
        let s: Vec<f64> = cand.iter().zip(&params).map(|(a, b)| a - b).collect();
        let yv: Vec<f64> = gc.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &yv);
        if sy > 1e-12 {
            if history.len() == HISTORY {
                history.pop_front();
            }
            history.push_back((s, yv, 1.0 / sy));
        }
        params = cand;
        f = fc;
        g = gc;
        trace.objective.push(f);
    }
    if !trace.converged && norm(&g) < config.tol {
        trace.converged = true;
    }
    let bias = params.pop().expect("bias parameter");
    Ok((
        LogRegModel {
            weights: params,
            bias,
            config,
        },
        trace,
    ))
}
