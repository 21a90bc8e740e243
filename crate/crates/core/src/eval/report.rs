use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::metrics::Confusion;
use crate::error::{Error, Result};
use crate::features::{feature_names, side, CandidateRow, IN_BOTH, OP_BLOCK, PC_BLOCK};
use crate::learn::{random_baseline, TrainedModel};
use crate::textprep::{is_stopword, Upos};

/// The five POS tags broken out in the per-POS report.
pub const REPORT_POS: [Upos; 5] = [Upos::Noun, Upos::Adv, Upos::Verb, Upos::Propn, Upos::Adj];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    OpOnly,
    PcOnly,
    Both,
}

impl Source {
    pub fn of(row: &CandidateRow) -> Source {
        let f = &row.features;
        if f[IN_BOTH] > 0.0 {
            Source::Both
        } else if f[OP_BLOCK + side::TF] > 0.0 {
            Source::OpOnly
        } else {
            Source::PcOnly
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Source::OpOnly => "op_only",
            Source::PcOnly => "pc_only",
            Source::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubsetScore {
    pub n: usize,
    pub n_positive: usize,
    pub confusion: Confusion,
    pub f1: f64,
}

impl SubsetScore {
    fn from_confusion(c: Confusion) -> Option<Self> {
        (c.total() > 0).then(|| SubsetScore {
            n: c.total(),
            n_positive: c.tp + c.fn_,
            confusion: c,
            f1: c.f1(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PosScore {
    pub f1_content: Option<f64>,
    pub f1_all: Option<f64>,
    /// Random baseline on the same content subset.
    pub f1_random: Option<f64>,
    pub n_all: usize,
    pub n_content: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub f1_all: f64,
    pub f1_content: Option<f64>,
    pub f1_stop: Option<f64>,
    pub subsets: BTreeMap<String, SubsetScore>,
    pub random_f1_all: f64,
    pub random_f1_content: Option<f64>,
    pub random_f1_stop: Option<f64>,
    pub random_p: f64,
    pub pos_breakdown: BTreeMap<String, PosScore>,
    pub source_breakdown: BTreeMap<String, Option<f64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ablation: BTreeMap<String, super::AblationEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub importance: Vec<(String, f64)>,
    #[serde(default)]
    pub notes: Vec<String>,
}

const LOCATION_NOTE: &str = "location = fraction of tokens after an occurrence; \
larger values mean earlier positions in the document";

/// Modal POS of a candidate across its OP and PC occurrences (per-side POS
/// distribution weighted by term frequency). Ties go to the tag whose name
/// sorts first.
pub fn modal_pos(row: &CandidateRow) -> Option<Upos> {
    let f = &row.features;
    let op_tf = f[OP_BLOCK + side::TF];
    let pc_tf = f[PC_BLOCK + side::TF];
    let mut best: Option<(Upos, f64)> = None;
    for tag in Upos::ALL {
        let i = side::POS + tag.index();
        let mass = f[OP_BLOCK + i] * op_tf + f[PC_BLOCK + i] * pc_tf;
        if mass <= 0.0 {
            continue;
        }
        let better = match best {
            None => true,
            Some((b, m)) => mass > m || (mass == m && tag.as_str() < b.as_str()),
        };
        if better {
            best = Some((tag, mass));
        }
    }
    best.map(|(t, _)| t)
}

#[derive(Default, Clone, Copy)]
struct Cell {
    model: Confusion,
    random: Confusion,
}

impl Cell {
    fn add(&mut self, pred: u8, rand: u8, label: u8) {
        self.model.add(pred, label);
        self.random.add(rand, label);
    }
}

/// Builds the report from precomputed model and random-baseline predictions.
pub fn evaluate_predictions(
    rows: &[CandidateRow],
    preds: &[u8],
    random: &[u8],
    random_p: f64,
) -> Result<EvalReport> {
    if preds.len() != rows.len() || random.len() != rows.len() {
        return Err(Error::LengthMismatch {
            left: rows.len(),
            right: if preds.len() != rows.len() { preds.len() } else { random.len() },
        });
    }
    let mut all = Cell::default();
    let mut content = Cell::default();
    let mut stop = Cell::default();
    let mut by_pos: BTreeMap<Upos, (Cell, Cell)> = BTreeMap::new();
    let mut by_source: BTreeMap<Source, Confusion> = BTreeMap::new();

    for ((row, &p), &r) in rows.iter().zip(preds).zip(random) {
        let l = row.label;
        let is_stop = is_stopword(&row.stem);
        all.add(p, r, l);
        if is_stop {
            stop.add(p, r, l);
        } else {
            content.add(p, r, l);
        }
        if let Some(tag) = modal_pos(row).filter(|t| REPORT_POS.contains(t)) {
            let e = by_pos.entry(tag).or_default();
            e.0.add(p, r, l);
            if !is_stop {
                e.1.add(p, r, l);
            }
        }
        by_source.entry(Source::of(row)).or_default().add(p, l);
    }

    let f = |c: Confusion| (c.total() > 0).then(|| c.f1());
    let mut subsets = BTreeMap::new();
    for (name, cell) in [("all", all), ("content", content), ("stop", stop)] {
        if let Some(s) = SubsetScore::from_confusion(cell.model) {
            subsets.insert(name.to_string(), s);
        }
    }
    let pos_breakdown = REPORT_POS
        .iter()
        .map(|tag| {
            let (a, c) = by_pos.get(tag).copied().unwrap_or_default();
            (
                tag.as_str().to_string(),
                PosScore {
                    f1_content: f(c.model),
                    f1_all: f(a.model),
                    f1_random: f(c.random),
                    n_all: a.model.total(),
                    n_content: c.model.total(),
                },
            )
        })
        .collect();
    let source_breakdown = [Source::OpOnly, Source::PcOnly, Source::Both]
        .iter()
        .map(|s| (s.as_str().to_string(), by_source.get(s).copied().and_then(f)))
        .collect();

    Ok(EvalReport {
        f1_all: all.model.f1(),
        f1_content: f(content.model),
        f1_stop: f(stop.model),
        subsets,
        random_f1_all: all.random.f1(),
        random_f1_content: f(content.random),
        random_f1_stop: f(stop.random),
        random_p,
        pos_breakdown,
        source_breakdown,
        ablation: BTreeMap::new(),
        importance: Vec::new(),
        notes: vec![LOCATION_NOTE.to_string()],
    })
}

/// Scores `model` on `rows` with the stop/content, POS and source
/// breakdowns, alongside a seeded Bernoulli(`random_p`) baseline.
pub fn evaluate(model: &TrainedModel, rows: &[CandidateRow], random_p: f64, seed: u64) -> Result<EvalReport> {
    let preds = model.predict_rows(rows)?;
    let random = random_baseline(rows.len(), random_p, seed)?;
    let mut report = evaluate_predictions(rows, &preds, &random, random_p)?;
    if let Some(imp) = model.importance() {
        let mut named: Vec<(String, f64)> = feature_names().map(str::to_string).zip(imp).collect();
        named.sort_by(|a, b| b.1.total_cmp(&a.1));
        report.importance = named;
    }
    Ok(report)
}
