//! Second-order gradient boosting on the logistic loss with exact greedy
//! level-wise split finding.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_labels, sigmoid, softplus, Matrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GbtConfig {
    pub max_depth: usize,
    pub min_child_weight: f64,
    /// Multiplier on the gradient and hessian of positive instances.
    pub pos_weight: f64,
    pub n_trees: usize,
    pub learning_rate: f64,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    #[serde(default)]
    pub gamma: f64,
}

fn default_lambda() -> f64 {
    1.0
}

impl Default for GbtConfig {
    fn default() -> Self {
        GbtConfig {
            max_depth: 5,
            min_child_weight: 3.0,
            pos_weight: 3.0,
            n_trees: 1000,
            learning_rate: 0.1,
            lambda: 1.0,
            gamma: 0.0,
        }
    }
}

impl GbtConfig {
    fn validate(&self) -> Result<()> {
        if self.n_trees == 0 {
            return Err(Error::InvalidConfig("n_trees must be positive".into()));
        }
        if self.max_depth == 0 {
            return Err(Error::InvalidConfig("max_depth must be positive".into()));
        }
        if !(self.learning_rate > 0.0) || !(self.pos_weight > 0.0) || self.lambda < 0.0 {
            return Err(Error::InvalidConfig(format!("invalid boosting config {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Node {
    /// Rows with `x[feature] < threshold` go left.
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
        gain: f64,
    },
    Leaf { value: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: Vec<Node>,
}

impl Tree {
    pub fn leaf_value(&self, x: &[f64]) -> f64 {
        let mut i = 0;
        loop {
            match self.nodes[i] {
                Node::Leaf { value } => return value,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                    ..
                } => i = if x[feature] < threshold { left } else { right },
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn go(t: &Tree, i: usize) -> usize {
            match t.nodes[i] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + go(t, left).max(go(t, right)),
            }
        }
        go(self, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbtModel {
    pub trees: Vec<Tree>,
    pub learning_rate: f64,
    pub base_score: f64,
    pub n_features: usize,
    pub config: GbtConfig,
}

impl GbtModel {
    pub fn margin(&self, x: &[f64]) -> f64 {
        self.base_score + self.learning_rate * self.trees.iter().map(|t| t.leaf_value(x)).sum::<f64>()
    }

    pub fn predict_proba(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n_features {
            return Err(Error::DimensionMismatch {
                expected: self.n_features,
                got: x.len(),
            });
        }
        Ok(sigmoid(self.margin(x)))
    }
}

/// Per-feature total split gain, normalized to sum to 100. A model without
/// any split yields all zeros.
pub fn feature_importance(model: &GbtModel) -> Vec<f64> {
    let mut gain = vec![0.0; model.n_features];
    for tree in &model.trees {
        for node in &tree.nodes {
            if let Node::Split { feature, gain: g, .. } = node {
                gain[*feature] += g;
            }
        }
    }
    let total: f64 = gain.iter().sum();
    if total > 0.0 {
        gain.iter_mut().for_each(|g| *g *= 100.0 / total);
    }
    gain
}

/// Feature columns presorted once; `rows[f]` lists row ids by ascending value.
struct Presorted {
    rows: Vec<Vec<u32>>,
    values: Vec<Vec<f64>>,
}

impl Presorted {
    fn new(x: &Matrix) -> Self {
        let (rows, values) = (0..x.cols())
            .into_par_iter()
            .map(|f| {
                let mut idx: Vec<u32> = (0..x.rows() as u32).collect();
                idx.sort_by(|&a, &b| x.get(a as usize, f).total_cmp(&x.get(b as usize, f)));
                let vals = idx.iter().map(|&r| x.get(r as usize, f)).collect();
                (idx, vals)
            })
            .unzip();
        Presorted { rows, values }
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    gain: f64,
    feature: usize,
    threshold: f64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Scan {
    gl: f64,
    hl: f64,
    last: f64,
    seen: bool,
}

#[derive(Debug, Clone, Copy)]
struct Open {
    node: usize,
    g: f64,
    h: f64,
}

fn score(g: f64, h: f64, lambda: f64) -> f64 {
    g * g / (h + lambda)
}

fn best_splits_for_feature(
    f: usize,
    sorted: &Presorted,
    node_of: &[u32],
    slot_of: &[i32],
    open: &[Open],
    grad: &[f64],
    hess: &[f64],
    cfg: &GbtConfig,
) -> Vec<Option<Candidate>> {
    let mut scans = vec![Scan::default(); open.len()];
    let mut best: Vec<Option<Candidate>> = vec![None; open.len()];
    for (&r, &v) in sorted.rows[f].iter().zip(&sorted.values[f]) {
        let r = r as usize;
        let slot = slot_of[node_of[r] as usize];
        if slot < 0 {
            continue;
        }
        let slot = slot as usize;
        let s = &mut scans[slot];
        if s.seen && v > s.last {
            let o = open[slot];
            let (gr, hr) = (o.g - s.gl, o.h - s.hl);
            if s.hl >= cfg.min_child_weight && hr >= cfg.min_child_weight {
                let gain = score(s.gl, s.hl, cfg.lambda) + score(gr, hr, cfg.lambda)
                    - score(o.g, o.h, cfg.lambda)
                    - cfg.gamma;
                if best[slot].is_none_or(|b| gain > b.gain) {
                    let mut threshold = 0.5 * (s.last + v);
                    if threshold <= s.last {
                        threshold = v;
                    }
                    best[slot] = Some(Candidate {
                        gain,
                        feature: f,
                        threshold,
                    });
                }
            }
        }
        s.gl += grad[r];
        s.hl += hess[r];
        s.last = v;
        s.seen = true;
    }
    best
}

fn grow_tree(x: &Matrix, sorted: &Presorted, grad: &[f64], hess: &[f64], cfg: &GbtConfig) -> Tree {
    let n = x.rows();
    let mut nodes = vec![Node::Leaf { value: 0.0 }];
    let mut node_of = vec![0u32; n];
    let mut open = vec![Open {
        node: 0,
        g: grad.iter().sum(),
        h: hess.iter().sum(),
    }];
    let leaf = |o: &Open| Node::Leaf {
        value: -o.g / (o.h + cfg.lambda),
    };

    for _depth in 0..cfg.max_depth {
        if open.is_empty() {
            break;
        }
        let mut slot_of = vec![-1i32; nodes.len()];
        for (s, o) in open.iter().enumerate() {
            slot_of[o.node] = s as i32;
        }
        let per_feature: Vec<Vec<Option<Candidate>>> = (0..x.cols())
            .into_par_iter()
            .map(|f| best_splits_for_feature(f, sorted, &node_of, &slot_of, &open, grad, hess, cfg))
            .collect();
        // sequential reduce in feature order: ties keep the lower index
        let mut best: Vec<Option<Candidate>> = vec![None; open.len()];
        for cands in per_feature {
            for (b, c) in best.iter_mut().zip(cands) {
                if let Some(c) = c {
                    if b.is_none_or(|cur| c.gain > cur.gain) {
                        *b = Some(c);
                    }
                }
            }
        }

        let mut children: Vec<Option<(usize, usize)>> = vec![None; open.len()];
        for (slot, o) in open.iter().enumerate() {
            match best[slot] {
                Some(c) if c.gain > 0.0 => {
                    let left = nodes.len();
                    nodes.push(Node::Leaf { value: 0.0 });
                    nodes.push(Node::Leaf { value: 0.0 });
                    nodes[o.node] = Node::Split {
                        feature: c.feature,
                        threshold: c.threshold,
                        left,
                        right: left + 1,
                        gain: c.gain,
                    };
                    children[slot] = Some((left, left + 1));
                }
                _ => nodes[o.node] = leaf(o),
            }
        }

        let mut sums = vec![(0.0, 0.0); nodes.len()];
        for r in 0..n {
            let slot = slot_of[node_of[r] as usize];
            if slot < 0 {
                continue;
            }
            if let Some((l, rt)) = children[slot as usize] {
                let Node::Split {
                    feature, threshold, ..
                } = nodes[open[slot as usize].node]
                else {
                    unreachable!()
                };
                let child = if x.get(r, feature) < threshold { l } else { rt };
                node_of[r] = child as u32;
                sums[child].0 += grad[r];
                sums[child].1 += hess[r];
            }
        }
        open = children
            .iter()
            .flatten()
            .flat_map(|&(l, r)| [l, r])
            .map(|node| Open {
                node,
                g: sums[node].0,
                h: sums[node].1,
            })
            .collect();
    }
    for o in &open {
        nodes[o.node] = leaf(o);
    }
    Tree { nodes }
}

fn instance_weights(y: &[u8], pos_weight: f64) -> Vec<f64> {
    y.iter().map(|&v| if v == 1 { pos_weight } else { 1.0 }).collect()
}

fn weighted_log_loss(margins: &[f64], y: &[u8], w: &[f64]) -> f64 {
    let total: f64 = w.iter().sum();
    margins
        .iter()
        .zip(y)
        .zip(w)
        .map(|((&m, &l), &wi)| wi * (softplus(m) - f64::from(l) * m))
        .sum::<f64>()
        / total
}

pub fn train_gbt(x: &Matrix, y: &[u8], config: GbtConfig) -> Result<GbtModel> {
    train_gbt_traced(x, y, config).map(|(m, _)| m)
}

/// Returns the model and the weighted training log-loss before the first
/// tree and after each boosting round.
pub fn train_gbt_traced(x: &Matrix, y: &[u8], config: GbtConfig) -> Result<(GbtModel, Vec<f64>)> {
    config.validate()?;
    check_labels(x, y)?;
    let w = instance_weights(y, config.pos_weight);
    let wpos: f64 = w.iter().zip(y).filter(|(_, &l)| l == 1).map(|(wi, _)| wi).sum();
    let wneg: f64 = w.iter().zip(y).filter(|(_, &l)| l == 0).map(|(wi, _)| wi).sum();
    let base_score = (wpos / wneg).ln();

    let sorted = Presorted::new(x);
    let mut margins = vec![base_score; x.rows()];
    let mut grad = vec![0.0; x.rows()];
    let mut hess = vec![0.0; x.rows()];
    let mut trees = Vec::with_capacity(config.n_trees);
    let mut trace = vec![weighted_log_loss(&margins, y, &w)];

    for _ in 0..config.n_trees {
        for i in 0..x.rows() {
            let p = sigmoid(margins[i]);
            grad[i] = w[i] * (p - f64::from(y[i]));
            hess[i] = w[i] * (p * (1.0 - p)).max(1e-16);
        }
        let tree = grow_tree(x, &sorted, &grad, &hess, &config);
        margins
            .par_iter_mut()
            .enumerate()
            .for_each(|(i, m)| *m += config.learning_rate * tree.leaf_value(x.row(i)));
        trace.push(weighted_log_loss(&margins, y, &w));
        trees.push(tree);
    }
    Ok((
        GbtModel {
            trees,
            learning_rate: config.learning_rate,
            base_score,
            n_features: x.cols(),
            config,
        },
        trace,
    ))
}
