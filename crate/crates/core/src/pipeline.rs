//! File-based stages: ingest, featurize, train, evaluate, stats and
//! export-augmented. Each stage reads the artifacts of earlier stages from
//! `out_dir` and writes its own atomically.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use log::info;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::annotate::{adapter_documents, AnnotatedTriple, Annotator};
use crate::corpus::{extract_triples, load_dump, split_by_time, ConversationTriple, ExtractReport};
use crate::error::{Error, Result};
use crate::eval::{
    ablation, corpus_descriptives, echo_prob_by_df_decile, evaluate, pc_from_op_decile, significance_tests,
    write_decile_csv, write_significance_csv,
};
use crate::features::{
    build_corpus_stats, featurize_all, read_feature_csv, write_feature_csv, CandidateRow, CorpusStats,
    FeatureGroup, FeaturizeOptions, Taxonomy, NUM_FEATURES,
};
use crate::io::{read_json, read_jsonl, write_json, write_jsonl};
use crate::learn::{grid_search, GridSpec, ModelKind, TrainedModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnnotationMode {
    #[default]
    Builtin,
    Exchange,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    /// Pushshift-style JSONL dumps.
    pub dumps: Vec<PathBuf>,
    pub out_dir: PathBuf,
    pub annotation: AnnotationMode,
    /// Exchange-format annotations, required when `annotation = "exchange"`.
    pub exchange_file: Option<PathBuf>,
    /// Alternative `lemma, min depth, max depth` TSV.
    pub taxonomy: Option<PathBuf>,
    pub model: ModelKind,
    pub test_months: u32,
    pub validation_months: u32,
    pub threshold: f64,
    pub random_p: f64,
    pub js_distance: bool,
    /// Run forward and backward group ablations during `evaluate`.
    pub ablation: bool,
    pub grid: GridSpec,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            dumps: Vec::new(),
            out_dir: PathBuf::from("out"),
            annotation: AnnotationMode::Builtin,
            exchange_file: None,
            taxonomy: None,
            model: ModelKind::Gbt,
            test_months: 6,
            validation_months: 6,
            threshold: 0.5,
            random_p: 0.15,
            js_distance: false,
            ablation: false,
            grid: GridSpec::default(),
            seed: 0,
        }
    }
}

impl PipelineConfig {
    /// Parses TOML, or JSON when the file ends in `.json`.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        if path.extension().is_some_and(|e| e == "json") {
            Ok(serde_json::from_str(&text)?)
        } else {
            toml::from_str(&text).map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))
        }
    }

    /// Makes every relative path absolute against `root`.
    pub fn resolve(mut self, root: &Path) -> Self {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = root.join(&*p);
            }
        };
        self.dumps.iter_mut().for_each(fix);
        fix(&mut self.out_dir);
        self.exchange_file.iter_mut().for_each(fix);
        self.taxonomy.iter_mut().for_each(fix);
        self
    }

    pub fn artifact(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }
}

pub const SPLITS: [&str; 3] = ["train", "validation", "test"];

pub fn triples_file(split: &str) -> String {
    format!("triples_{split}.jsonl")
}

pub fn features_file(split: &str) -> String {
    format!("features_{split}.csv")
}

fn require(path: &Path, stage: &'static str) -> Result<()> {
    if path.exists() {
        Ok(())
    } else {
        Err(Error::MissingInput {
            stage,
            path: path.to_path_buf(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IngestSummary {
    pub extract: ExtractReport,
    pub skipped_lines: usize,
    pub train: usize,
    pub validation: usize,
    pub test: usize,
}

/// Dumps → `triples_{split}.jsonl`, `docs.jsonl` (annotation adapter input)
/// and `ingest.json`.
pub fn ingest(cfg: &PipelineConfig) -> Result<IngestSummary> {
    if cfg.dumps.is_empty() {
        return Err(Error::InvalidConfig("no dumps configured".into()));
    }
    let mut submissions = Vec::new();
    let mut comments = Vec::new();
    let mut skipped = 0;
    for path in &cfg.dumps {
        let d = load_dump(path)?;
        submissions.extend(d.submissions);
        comments.extend(d.comments);
        skipped += d.skipped;
    }
    let (mut triples, extract) = extract_triples(&submissions, &comments);
    triples.sort_by(|a, b| (a.created_at, &a.triple_id).cmp(&(b.created_at, &b.triple_id)));
    let split = split_by_time(&triples, cfg.test_months, cfg.validation_months)?;
    for (name, part) in SPLITS.iter().zip([&split.train, &split.validation, &split.test]) {
        write_jsonl(&cfg.artifact(&triples_file(name)), part)?;
    }
    write_jsonl(&cfg.artifact("docs.jsonl"), &adapter_documents(&triples))?;
    let summary = IngestSummary {
        extract,
        skipped_lines: skipped,
        train: split.train.len(),
        validation: split.validation.len(),
        test: split.test.len(),
    };
    write_json(&cfg.artifact("ingest.json"), &summary)?;
    info!(
        "ingest: {} / {} / {} triples",
        summary.train, summary.validation, summary.test
    );
    Ok(summary)
}

fn annotator(cfg: &PipelineConfig) -> Result<Annotator> {
    match cfg.annotation {
        AnnotationMode::Builtin => Ok(Annotator::Builtin),
        AnnotationMode::Exchange => {
            let path = cfg
                .exchange_file
                .as_deref()
                .ok_or_else(|| Error::InvalidConfig("annotation = \"exchange\" needs exchange_file".into()))?;
            require(path, "annotation adapter")?;
            Annotator::from_exchange_file(path)
        }
    }
}

pub fn annotate_all(annotator: &Annotator, triples: &[ConversationTriple]) -> Result<Vec<AnnotatedTriple>> {
    triples.par_iter().map(|t| annotator.annotate_triple(t)).collect()
}

/// Annotated triples of every split, read from the ingest artifacts.
pub fn load_annotated(cfg: &PipelineConfig) -> Result<BTreeMap<&'static str, Vec<AnnotatedTriple>>> {
    let annotator = annotator(cfg)?;
    let mut out = BTreeMap::new();
    for split in SPLITS {
        let path = cfg.artifact(&triples_file(split));
        require(&path, "ingest")?;
        let triples: Vec<ConversationTriple> = read_jsonl(&path)?;
        out.insert(split, annotate_all(&annotator, &triples)?);
    }
    Ok(out)
}

fn taxonomy(cfg: &PipelineConfig) -> Result<Arc<Taxonomy>> {
    match &cfg.taxonomy {
        Some(p) => Ok(Arc::new(Taxonomy::load(p)?)),
        None => Ok(Taxonomy::bundled()),
    }
}

pub fn load_stats(cfg: &PipelineConfig) -> Result<CorpusStats> {
    let path = cfg.artifact("stats.json");
    require(&path, "featurize")?;
    let stats: CorpusStats = read_json(&path)?;
    Ok(stats.with_taxonomy(taxonomy(cfg)?))
}

pub fn load_features(cfg: &PipelineConfig, split: &str) -> Result<Vec<CandidateRow>> {
    let path = cfg.artifact(&features_file(split));
    require(&path, "featurize")?;
    read_feature_csv(&path)
}

/// Training statistics plus `features_{split}.csv` for every split.
pub fn featurize(cfg: &PipelineConfig) -> Result<BTreeMap<&'static str, usize>> {
    let annotated = load_annotated(cfg)?;
    let stats = build_corpus_stats(&annotated["train"])?.with_taxonomy(taxonomy(cfg)?);
    write_json(&cfg.artifact("stats.json"), &stats)?;
    let opts = FeaturizeOptions {
        js_distance: cfg.js_distance,
    };
    let mut counts = BTreeMap::new();
    for split in SPLITS {
        let rows = featurize_all(&annotated[split], &stats, opts);
        write_feature_csv(&cfg.artifact(&features_file(split)), &rows)?;
        counts.insert(split, rows.len());
    }
    info!("featurize: {counts:?}");
    Ok(counts)
}

/// Grid search on validation F1; writes `model.json` and `grid_results.json`.
pub fn train(cfg: &PipelineConfig) -> Result<TrainedModel> {
    let train = load_features(cfg, "train")?;
    let validation = load_features(cfg, "validation")?;
    let configs = cfg.grid.configs(cfg.model);
    let all: Vec<usize> = (0..NUM_FEATURES).collect();
    let result = grid_search(&train, &validation, &configs, &all, cfg.threshold)?;
    result.best.save(&cfg.artifact("model.json"))?;
    write_json(
        &cfg.artifact("grid_results.json"),
        &serde_json::json!({ "best_index": result.best_index, "scores": result.scores }),
    )?;
    Ok(result.best)
}

/// Test-set report (`report.json`), optionally with group ablations.
pub fn evaluate_stage(cfg: &PipelineConfig) -> Result<crate::eval::EvalReport> {
    let model_path = cfg.artifact("model.json");
    require(&model_path, "train")?;
    let model = TrainedModel::load(&model_path)?;
    let test = load_features(cfg, "test")?;
    let mut report = evaluate(&model, &test, cfg.random_p, cfg.seed)?;
    if cfg.ablation {
        let train = load_features(cfg, "train")?;
        let validation = load_features(cfg, "validation")?;
        let configs = cfg.grid.configs(model.kind());
        let table = ablation(&train, &validation, &test, &FeatureGroup::ALL, &configs, cfg.threshold)?;
        report.ablation = table.into_iter().map(|(g, e)| (g.as_str().to_string(), e)).collect();
    }
    write_json(&cfg.artifact("report.json"), &report)?;
    Ok(report)
}

/// `descriptives.json`, `decile_curve.csv` and `significance.csv`, all
/// computed on the training split.
pub fn stats_stage(cfg: &PipelineConfig) -> Result<()> {
    let stats = load_stats(cfg)?;
    let rows = load_features(cfg, "train")?;
    let annotated = load_annotated(cfg)?;
    let train = &annotated["train"];
    write_json(&cfg.artifact("descriptives.json"), &corpus_descriptives(train))?;
    let echo = echo_prob_by_df_decile(&rows, &stats);
    let pc = pc_from_op_decile(train, &stats);
    write_decile_csv(
        &cfg.artifact("decile_curve.csv"),
        &[("explanation_echo", &echo), ("pc_from_op", &pc)],
    )?;
    write_significance_csv(&cfg.artifact("significance.csv"), &significance_tests(&rows)?)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AugmentedToken {
    pub text: String,
    pub stem: String,
    /// `op`, `pc` or `sep`.
    pub source: String,
    pub features: Vec<f64>,
    pub label: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AugmentedTriple {
    pub triple_id: String,
    pub split: String,
    pub tokens: Vec<AugmentedToken>,
}

pub const SEPARATOR: &str = "[SEP]";

/// One line per triple: the OP tokens, a separator, then the PC tokens,
/// each with its stem's 66 features and echo label. The separator carries
/// zeros and label 0.
pub fn augment_triple(triple: &AnnotatedTriple, split: &str, rows: &HashMap<&str, &CandidateRow>) -> Result<AugmentedTriple> {
    let mut tokens = Vec::with_capacity(triple.op.len() + triple.pc.len() + 1);
    let side = |doc: &crate::textprep::AnnotatedDoc, source: &str, tokens: &mut Vec<AugmentedToken>| -> Result<()> {
        for t in &doc.tokens {
            let row = rows.get(t.stem.as_str()).ok_or_else(|| {
                Error::Schema(format!("triple {}: no feature row for stem `{}`", triple.triple_id, t.stem))
            })?;
            tokens.push(AugmentedToken {
                text: t.surface.clone(),
                stem: t.stem.clone(),
                source: source.to_string(),
                features: row.features.to_vec(),
                label: row.label,
            });
        }
        Ok(())
    };
    side(&triple.op, "op", &mut tokens)?;
    tokens.push(AugmentedToken {
        text: SEPARATOR.to_string(),
        stem: SEPARATOR.to_string(),
        source: "sep".to_string(),
        features: vec![0.0; NUM_FEATURES],
        label: 0,
    });
    side(&triple.pc, "pc", &mut tokens)?;
    Ok(AugmentedTriple {
        triple_id: triple.triple_id.clone(),
        split: split.to_string(),
        tokens,
    })
}

/// Token streams for external sequence models (`augmented.jsonl`).
pub fn export_augmented(cfg: &PipelineConfig) -> Result<usize> {
    let annotated = load_annotated(cfg)?;
    let mut out = Vec::new();
    for split in SPLITS {
        let rows = load_features(cfg, split)?;
        let mut by_triple: HashMap<&str, HashMap<&str, &CandidateRow>> = HashMap::new();
        for r in &rows {
            by_triple.entry(&r.triple_id).or_default().insert(&r.stem, r);
        }
        let empty = HashMap::new();
        for t in &annotated[split] {
            let rows = by_triple.get(t.triple_id.as_str()).unwrap_or(&empty);
            out.push(augment_triple(t, split, rows)?);
        }
    }
    write_jsonl(&cfg.artifact("augmented.jsonl"), &out)?;
    Ok(out.len())
}
