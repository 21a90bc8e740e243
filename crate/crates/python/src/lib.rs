//! Python bindings: text preprocessing, featurization with builtin
//! annotation, metrics and trained-model inference.

use std::path::PathBuf;

use echotrace::annotate::{AnnotatedTriple, Annotator};
use echotrace::corpus::ConversationTriple;
use echotrace::features::{build_corpus_stats, featurize_all, CandidateRow, FeatureVector, FeaturizeOptions};
use echotrace::learn::{fit_model, GbtConfig, LogRegConfig, ModelSpec, TrainedModel};
use echotrace::pipeline::{self, PipelineConfig};
use echotrace::textprep::DocKind;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: echotrace::Error) -> PyErr {
    match e {
        echotrace::Error::Io { .. } | echotrace::Error::MissingInput { .. } => PyIOError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn doc_kind(kind: &str) -> PyResult<DocKind> {
    match kind {
        "op" => Ok(DocKind::Op),
        "pc" => Ok(DocKind::Pc),
        "explanation" | "exp" => Ok(DocKind::Explanation),
        _ => Err(PyValueError::new_err(format!("unknown document kind {kind:?}"))),
    }
}

#[pyfunction]
#[pyo3(signature = (text, kind = "op"))]
fn normalize_text(text: &str, kind: &str) -> PyResult<String> {
    Ok(echotrace::textprep::normalize_text(text, doc_kind(kind)?).into_string())
}

#[pyfunction]
fn tokenize(text: &str) -> Vec<String> {
    echotrace::textprep::tokenize(text).into_iter().map(|t| t.text).collect()
}

#[pyfunction]
fn porter_stem(word: &str) -> String {
    echotrace::textprep::porter_stem(word)
}

#[pyfunction]
fn is_stopword(stem: &str) -> bool {
    echotrace::textprep::is_stopword(stem)
}

#[pyfunction]
fn js_divergence(p: Vec<f64>, q: Vec<f64>) -> PyResult<f64> {
    echotrace::features::js_divergence(&p, &q).map_err(py_err)
}

#[pyfunction]
fn f1(preds: Vec<u8>, labels: Vec<u8>) -> PyResult<f64> {
    echotrace::eval::f1(&preds, &labels).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, p = 0.15, seed = 0))]
fn random_baseline(n: usize, p: f64, seed: u64) -> PyResult<Vec<u8>> {
    echotrace::learn::random_baseline(n, p, seed).map_err(py_err)
}

#[pyfunction]
fn feature_names() -> Vec<&'static str> {
    echotrace::features::feature_names().collect()
}

/// One OP / PC / explanation triple.
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct Triple {
    #[pyo3(get)]
    triple_id: String,
    #[pyo3(get)]
    op: String,
    #[pyo3(get)]
    pc: String,
    #[pyo3(get)]
    explanation: String,
    #[pyo3(get)]
    pc_depth: u32,
}

#[pymethods]
impl Triple {
    #[new]
    #[pyo3(signature = (triple_id, op, pc, explanation, pc_depth = 1))]
    fn new(triple_id: String, op: String, pc: String, explanation: String, pc_depth: u32) -> Self {
        Triple {
            triple_id,
            op,
            pc,
            explanation,
            pc_depth,
        }
    }
}

fn annotate(triples: &[Triple]) -> PyResult<Vec<AnnotatedTriple>> {
    let raw: Vec<ConversationTriple> = triples
        .iter()
        .map(|t| ConversationTriple {
            triple_id: t.triple_id.clone(),
            op_text: t.op.clone(),
            pc_text: t.pc.clone(),
            explanation_text: t.explanation.clone(),
            op_author: String::new(),
            pc_depth: t.pc_depth,
            created_at: 0,
        })
        .collect();
    pipeline::annotate_all(&Annotator::Builtin, &raw).map_err(py_err)
}

/// Candidate rows `(triple_id, stem, label, features)` for `triples`, with
/// corpus statistics fitted on `train`.
#[pyfunction]
#[pyo3(signature = (train, triples = None, js_distance = false))]
fn featurize(
    train: Vec<Triple>,
    triples: Option<Vec<Triple>>,
    js_distance: bool,
) -> PyResult<Vec<(String, String, u8, Vec<f64>)>> {
    let train_ann = annotate(&train)?;
    let stats = build_corpus_stats(&train_ann).map_err(py_err)?;
    let target = match triples {
        Some(t) => annotate(&t)?,
        None => train_ann,
    };
    let rows = featurize_all(&target, &stats, FeaturizeOptions { js_distance });
    Ok(rows
        .into_iter()
        .map(|r| (r.triple_id, r.stem, r.label, r.features.to_vec()))
        .collect())
}

#[pyclass(frozen)]
struct Model {
    inner: TrainedModel,
}

fn to_rows(features: Vec<Vec<f64>>, labels: Vec<u8>) -> PyResult<Vec<CandidateRow>> {
    if features.len() != labels.len() {
        return Err(PyValueError::new_err("features and labels differ in length"));
    }
    features
        .into_iter()
        .zip(labels)
        .enumerate()
        .map(|(i, (f, label))| {
            Ok(CandidateRow {
                triple_id: i.to_string(),
                stem: String::new(),
                features: FeatureVector::try_from(f.as_slice()).map_err(py_err)?,
                label,
            })
        })
        .collect()
}

#[pymethods]
impl Model {
    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(Model {
            inner: TrainedModel::load(&path).map_err(py_err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (features, labels, n_trees = 50, max_depth = 5, min_child_weight = 3.0, pos_weight = 3.0, learning_rate = 0.1))]
    fn fit_gbt(
        features: Vec<Vec<f64>>,
        labels: Vec<u8>,
        n_trees: usize,
        max_depth: usize,
        min_child_weight: f64,
        pos_weight: f64,
        learning_rate: f64,
    ) -> PyResult<Self> {
        let rows = to_rows(features, labels)?;
        let spec = ModelSpec::Gbt(GbtConfig {
            n_trees,
            max_depth,
            min_child_weight,
            pos_weight,
            learning_rate,
            ..Default::default()
        });
        let all: Vec<usize> = (0..echotrace::features::NUM_FEATURES).collect();
        Ok(Model {
            inner: fit_model(&rows, &spec, &all, 0.5).map_err(py_err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (features, labels, c = 1.0, class_weights = (0.15, 0.85)))]
    fn fit_logreg(features: Vec<Vec<f64>>, labels: Vec<u8>, c: f64, class_weights: (f64, f64)) -> PyResult<Self> {
        let rows = to_rows(features, labels)?;
        let spec = ModelSpec::Logreg(LogRegConfig::new(c, class_weights));
        let all: Vec<usize> = (0..echotrace::features::NUM_FEATURES).collect();
        Ok(Model {
            inner: fit_model(&rows, &spec, &all, 0.5).map_err(py_err)?,
        })
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner.kind() {
            echotrace::learn::ModelKind::Logreg => "logreg",
            echotrace::learn::ModelKind::Gbt => "gbt",
        }
    }

    fn predict_proba(&self, features: Vec<f64>) -> PyResult<f64> {
        self.inner.predict_proba(&features).map_err(py_err)
    }

    fn predict(&self, features: Vec<f64>) -> PyResult<u8> {
        self.inner.predict(&features).map_err(py_err)
    }

    /// Total-gain importance in percent per feature; `None` for logistic
    /// regression.
    fn importance(&self) -> Option<Vec<f64>> {
        self.inner.importance()
    }

    fn save(&self, path: PathBuf) -> PyResult<()> {
        self.inner.save(&path).map_err(py_err)
    }
}

/// Runs one pipeline stage from a config file.
#[pyfunction]
#[pyo3(signature = (stage, config, seed = None))]
fn run_stage(stage: &str, config: PathBuf, seed: Option<u64>) -> PyResult<()> {
    let root = config.parent().map(PathBuf::from).unwrap_or_default();
    let mut cfg = PipelineConfig::load(&config).map_err(py_err)?.resolve(&root);
    if let Some(s) = seed {
        cfg.seed = s;
    }
    match stage {
        "ingest" => pipeline::ingest(&cfg).map(drop),
        "featurize" => pipeline::featurize(&cfg).map(drop),
        "train" => pipeline::train(&cfg).map(drop),
        "evaluate" => pipeline::evaluate_stage(&cfg).map(drop),
        "stats" => pipeline::stats_stage(&cfg),
        "export-augmented" => pipeline::export_augmented(&cfg).map(drop),
        _ => return Err(PyValueError::new_err(format!("unknown stage {stage:?}"))),
    }
    .map_err(py_err)
}

#[pymodule]
fn echotrace_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(normalize_text, m)?)?;
    m.add_function(wrap_pyfunction!(tokenize, m)?)?;
    m.add_function(wrap_pyfunction!(porter_stem, m)?)?;
    m.add_function(wrap_pyfunction!(is_stopword, m)?)?;
    m.add_function(wrap_pyfunction!(js_divergence, m)?)?;
    m.add_function(wrap_pyfunction!(f1, m)?)?;
    m.add_function(wrap_pyfunction!(random_baseline, m)?)?;
    m.add_function(wrap_pyfunction!(feature_names, m)?)?;
    m.add_function(wrap_pyfunction!(featurize, m)?)?;
    m.add_function(wrap_pyfunction!(run_stage, m)?)?;
    m.add_class::<Triple>()?;
    m.add_class::<Model>()?;
    Ok(())
}
