use std::path::Path;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};
use crate::features::{feature_name, CandidateRow, NUM_FEATURES};
use crate::io::write_atomic;
use crate::textprep::is_stopword;

/// Bonferroni multiplier applied within each population.
pub const BONFERRONI_TESTS: usize = NUM_FEATURES;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Population {
    All,
    Content,
    Stop,
}

impl Population {
    pub const ALL: [Population; 3] = [Population::All, Population::Content, Population::Stop];

    pub fn as_str(self) -> &'static str {
        match self {
            Population::All => "all",
            Population::Content => "content",
            Population::Stop => "stop",
        }
    }

    fn contains(self, row: &CandidateRow) -> bool {
        match self {
            Population::All => true,
            Population::Content => !is_stopword(&row.stem),
            Population::Stop => is_stopword(&row.stem),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignificanceRow {
    pub feature: usize,
    pub name: String,
    pub population: Population,
    pub n_echoed: usize,
    pub n_not: usize,
    pub mean_echoed: f64,
    pub mean_not: f64,
    /// `None` when the test was skipped (too few rows or zero variance).
    pub t_statistic: Option<f64>,
    pub raw_p: Option<f64>,
    pub corrected_p: Option<f64>,
    pub arrows: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignificanceTable {
    pub rows: Vec<SignificanceRow>,
}

impl SignificanceTable {
    pub fn get(&self, feature: usize, population: Population) -> Option<&SignificanceRow> {
        self.rows.iter().find(|r| r.feature == feature && r.population == population)
    }
}

fn mean_var(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let var = if v.len() > 1 {
        v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    (m, var)
}

/// Two-sided Welch t-test: `(t, degrees of freedom, p)`. `None` with fewer
/// than two observations per group or zero variance in both.
pub fn welch_t_test(a: &[f64], b: &[f64]) -> Option<(f64, f64, f64)> {
    if a.len() < 2 || b.len() < 2 {
        return None;
    }
    let (ma, va) = mean_var(a);
    let (mb, vb) = mean_var(b);
    let (sa, sb) = (va / a.len() as f64, vb / b.len() as f64);
    let se2 = sa + sb;
    if se2 == 0.0 {
        return None;
    }
    let t = (ma - mb) / se2.sqrt();
    let df = se2 * se2 / (sa * sa / (a.len() as f64 - 1.0) + sb * sb / (b.len() as f64 - 1.0));
    let dist = StudentsT::new(0.0, 1.0, df).ok()?;
    let p = (2.0 * dist.sf(t.abs())).min(1.0);
    Some((t, df, p))
}

/// Up to four arrows at corrected p < 1e-4, 1e-3, 1e-2, 0.05; ↑ when echoed
/// words have the larger mean.
pub fn arrows(corrected_p: f64, echoed_higher: bool) -> String {
    let n = [1e-4, 1e-3, 1e-2, 0.05].iter().filter(|&&cut| corrected_p < cut).count();
    let a = if echoed_higher { "↑" } else { "↓" };
    a.repeat(n)
}

pub fn significance_tests(rows: &[CandidateRow]) -> Result<SignificanceTable> {
    let pos = rows.iter().filter(|r| r.is_positive()).count();
    if pos < 2 || rows.len() - pos < 2 {
        return Err(Error::InvalidConfig(format!(
            "significance tests need at least two rows per class (got {pos} echoed, {} not)",
            rows.len() - pos
        )));
    }
    let mut out = Vec::with_capacity(3 * NUM_FEATURES);
    for pop in Population::ALL {
        let subset: Vec<&CandidateRow> = rows.iter().filter(|r| pop.contains(r)).collect();
        for j in 0..NUM_FEATURES {
            let (echoed, not): (Vec<&CandidateRow>, Vec<&CandidateRow>) =
                subset.iter().partition(|r| r.is_positive());
            let a: Vec<f64> = echoed.iter().map(|r| r.features[j]).collect();
            let b: Vec<f64> = not.iter().map(|r| r.features[j]).collect();
            let mean = |v: &[f64]| if v.is_empty() { 0.0 } else { v.iter().sum::<f64>() / v.len() as f64 };
            let (mean_echoed, mean_not) = (mean(&a), mean(&b));
            let test = welch_t_test(&a, &b);
            let corrected = test.map(|(_, _, p)| (p * BONFERRONI_TESTS as f64).min(1.0));
            out.push(SignificanceRow {
                feature: j,
                name: feature_name(j).to_string(),
                population: pop,
                n_echoed: a.len(),
                n_not: b.len(),
                mean_echoed,
                mean_not,
                t_statistic: test.map(|t| t.0),
                raw_p: test.map(|t| t.2),
                corrected_p: corrected,
                arrows: corrected.map_or_else(String::new, |p| arrows(p, mean_echoed > mean_not)),
            });
        }
    }
    Ok(SignificanceTable { rows: out })
}

pub fn write_significance_csv(path: &Path, table: &SignificanceTable) -> Result<()> {
    let opt = |v: Option<f64>| v.map_or_else(|| "skipped".to_string(), |x| x.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "feature",
        "name",
        "population",
        "n_echoed",
        "n_not",
        "mean_echoed",
        "mean_not",
        "t_statistic",
        "raw_p",
        "corrected_p",
        "arrows",
    ])?;
    for r in &table.rows {
        w.write_record([
            r.feature.to_string(),
            r.name.clone(),
            r.population.as_str().to_string(),
            r.n_echoed.to_string(),
            r.n_not.to_string(),
            r.mean_echoed.to_string(),
            r.mean_not.to_string(),
            opt(r.t_statistic),
            opt(r.raw_p),
            opt(r.corrected_p),
            r.arrows.clone(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Schema(e.to_string()))?;
    write_atomic(path, &bytes)
}
