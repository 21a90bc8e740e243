//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. The real-data parity check runs only when
//! `ECHOTRACE_REAL_CONFIG` points at a pipeline config.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use echotrace::annotate::Annotator;
use echotrace::corpus::split_by_time;
use echotrace::eval::{ablation, decile_curve, f1};
use echotrace::features::{
    build_corpus_stats, featurize_all, js_divergence, FeatureGroup, FeaturizeOptions, NUM_FEATURES, TRANSFER_PROB,
};
use echotrace::learn::{
    feature_importance, grid_search, random_baseline, train_gbt_traced, GbtConfig, GridSpec, LogRegConfig,
    LogisticObjective, Matrix, ModelKind, Node,
};
use echotrace::pipeline::{self, annotate_all, PipelineConfig};
use echotrace::synth::{planted_triples, PlantedConfig};
use echotrace::textprep::{normalize_text, porter_stem, DocKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    ensure(start.elapsed() < limit, format!("took {:.1?}, limit {limit:?}", start.elapsed()))
}

fn feature_oracle() -> Outcome {
    let start = Instant::now();
    let n = common::oracle::check_fixture();
    within(Duration::from_secs(5), start)?;
    Ok(format!("{n} candidates x {NUM_FEATURES} features within 1e-9"))
}

fn porter() -> Outcome {
    let start = Instant::now();
    let text = include_str!("../data/porter_fixture.tsv");
    let mut n = 0;
    for line in text.lines() {
        let (w, s) = line.split_once('\t').ok_or("malformed fixture line")?;
        let got = porter_stem(w);
        ensure(got == s, format!("{w}: got {got}, want {s}"))?;
        n += 1;
    }
    ensure(porter_stem("traditions") == "tradit", "traditions")?;
    within(Duration::from_secs(5), start)?;
    Ok(format!("{n} vocabulary pairs exact"))
}

fn preprocessing() -> Outcome {
    let cases = [
        (DocKind::Pc, "ok.\nHello, users of CMV! This is a footnote from your moderators.", "ok."),
        (DocKind::Op, "see https://www.quora.com/profile/", "see @url@"),
        (DocKind::Explanation, "!delta that helped", "that helped"),
        (DocKind::Op, "r/ideasforcmv, /r/nba u/Ansuz07", "ideasforcmv, nba Ansuz07"),
        (
            DocKind::Op,
            "Hi\nEDIT for clarification: This isn't to suggest that you have to remain financially independent to vote",
            "Hi",
        ),
        (DocKind::Pc, "> quoted text\nreply", "\"quoted text\" reply"),
    ];
    for (kind, input, want) in cases {
        let got = normalize_text(input, kind);
        ensure(got.as_str() == want, format!("{input:?} -> {got:?}, want {want:?}"))?;
    }
    Ok(format!("{} golden samples byte-exact", cases.len()))
}

fn lr_gradient() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let rows: Vec<Vec<f64>> = (0..100).map(|_| (0..NUM_FEATURES).map(|_| rng.random::<f64>()).collect()).collect();
    let y: Vec<u8> = (0..100).map(|_| u8::from(rng.random_bool(0.2))).collect();
    let x = Matrix::from_rows(&rows).map_err(|e| e.to_string())?;
    let obj = LogisticObjective::new(&x, &y, LogRegConfig::new(1.0, (0.15, 0.85)));
    let params: Vec<f64> = (0..obj.n_params()).map(|_| rng.random_range(-0.5..0.5)).collect();
    let grad = obj.gradient(&params);
    let mut worst: f64 = 0.0;
    for j in 0..params.len() {
        let h = 1e-5;
        let (mut a, mut b) = (params.clone(), params.clone());
        a[j] += h;
        b[j] -= h;
        let fd = (obj.value(&a) - obj.value(&b)) / (2.0 * h);
        worst = worst.max((fd - grad[j]).abs() / fd.abs().max(grad[j].abs()).max(1e-8));
    }
    ensure(worst < 1e-5, format!("max relative error {worst:e}"))?;
    Ok(format!("max relative error {worst:.2e} over 100 instances"))
}

fn gbt() -> Outcome {
    let triples = common::mini_annotated();
    let stats = build_corpus_stats(&triples).map_err(|e| e.to_string())?;
    let rows = featurize_all(&triples, &stats, FeaturizeOptions::default());
    let x = Matrix::from_rows(&rows.iter().map(|r| r.features.to_vec()).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
    let y: Vec<u8> = rows.iter().map(|r| r.label).collect();
    let cfg = GbtConfig {
        n_trees: 50,
        ..Default::default()
    };
    let (model, trace) = train_gbt_traced(&x, &y, cfg).map_err(|e| e.to_string())?;
    ensure(trace.windows(2).all(|w| w[1] <= w[0] + 1e-12), "log-loss increased")?;
    let imp = feature_importance(&model);
    ensure(imp.iter().all(|&v| v >= 0.0), "negative importance")?;
    let total: f64 = imp.iter().sum();
    ensure((total - 100.0).abs() < 1e-6, format!("importance sums to {total}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let rigged: Vec<Vec<f64>> = (0..400)
        .map(|i| {
            let mut r: Vec<f64> = (0..10).map(|_| rng.random::<f64>()).collect();
            r[6] = f64::from(i % 5 == 0);
            r
        })
        .collect();
    let ry: Vec<u8> = rigged.iter().map(|r| r[6] as u8).collect();
    let rx = Matrix::from_rows(&rigged).map_err(|e| e.to_string())?;
    let (rm, _) = train_gbt_traced(&rx, &ry, GbtConfig { n_trees: 20, max_depth: 3, ..cfg }).map_err(|e| e.to_string())?;
    for t in &rm.trees {
        if let Node::Split { feature, .. } = t.nodes[0] {
            ensure(feature == 6, format!("root split on feature {feature}"))?;
        }
    }
    Ok(format!(
        "loss {:.4} -> {:.4} over 50 rounds; rigged root splits all on feature 6; importance sum {total:.6}",
        trace[0],
        trace[50]
    ))
}

fn random_baseline_calibration() -> Outcome {
    let labels = random_baseline(10_000, 0.15, 1).map_err(|e| e.to_string())?;
    let preds = random_baseline(10_000, 0.15, 2).map_err(|e| e.to_string())?;
    let got = f1(&preds, &labels).map_err(|e| e.to_string())?;
    ensure((got - 0.15).abs() <= 0.02, format!("F1 {got}"))?;
    Ok(format!("empirical F1 {got:.4} (closed form 0.15)"))
}

fn js_properties() -> Outcome {
    let js = |p: &[f64], q: &[f64]| js_divergence(p, q).map_err(|e| e.to_string());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let mut p: Vec<f64> = (0..16).map(|_| rng.random::<f64>()).collect();
        let mut q: Vec<f64> = (0..16).map(|_| rng.random::<f64>()).collect();
        let (sp, sq) = (p.iter().sum::<f64>(), q.iter().sum::<f64>());
        p.iter_mut().for_each(|v| *v /= sp);
        q.iter_mut().for_each(|v| *v /= sq);
        let (a, b) = (js(&p, &q)?, js(&q, &p)?);
        ensure((a - b).abs() <= 1e-12, "asymmetric")?;
        ensure(a >= -1e-12, "negative")?;
        ensure(js(&p, &p)?.abs() <= 1e-12, "js(p,p) != 0")?;
    }
    let one = js(&[1.0, 0.0], &[0.0, 1.0])?;
    ensure((one - 1.0).abs() <= 1e-12, format!("js((1,0),(0,1)) = {one}"))?;
    Ok("symmetry, nonnegativity, identity and unit maximum hold to 1e-12".into())
}

fn signal_recovery() -> Outcome {
    let start = Instant::now();
    let err = |e: echotrace::Error| e.to_string();
    let triples = planted_triples(&PlantedConfig::default());
    let split = split_by_time(&triples, 6, 6).map_err(err)?;
    let train = annotate_all(&Annotator::Builtin, &split.train).map_err(err)?;
    let stats = build_corpus_stats(&train).map_err(err)?;
    let opts = FeaturizeOptions::default();
    let rows = |t: &[echotrace::annotate::AnnotatedTriple]| featurize_all(t, &stats, opts);
    let train_rows = rows(&train);
    let val_rows = rows(&annotate_all(&Annotator::Builtin, &split.validation).map_err(err)?);
    let test_rows = rows(&annotate_all(&Annotator::Builtin, &split.test).map_err(err)?);

    let grid = GridSpec {
        gbt_max_depth: vec![4],
        gbt_min_child_weight: vec![3.0],
        gbt_pos_weight: vec![3.0],
        gbt_n_trees: 50,
        ..Default::default()
    };
    let configs = grid.configs(ModelKind::Gbt);
    let all: Vec<usize> = (0..NUM_FEATURES).collect();
    let full = grid_search(&train_rows, &val_rows, &configs, &all, 0.5).map_err(err)?;
    let labels: Vec<u8> = test_rows.iter().map(|r| r.label).collect();
    let model_f1 = f1(&full.best.predict_rows(&test_rows).map_err(err)?, &labels).map_err(err)?;
    let random_f1 = f1(&random_baseline(test_rows.len(), 0.15, 42).map_err(err)?, &labels).map_err(err)?;
    ensure(
        model_f1 >= 1.5 * random_f1,
        format!("full GBT F1 {model_f1:.3} vs random {random_f1:.3}"),
    )?;

    let table = ablation(
        &train_rows,
        &val_rows,
        &test_rows,
        &[FeatureGroup::OpPcRelation, FeatureGroup::General],
        &configs,
        0.5,
    )
    .map_err(err)?;
    let rel = table[&FeatureGroup::OpPcRelation];
    let gen = table[&FeatureGroup::General];
    let (rel_c, gen_c) = (rel.forward_content.unwrap_or(0.0), gen.forward_content.unwrap_or(0.0));
    ensure(
        rel_c > gen_c,
        format!("forward content F1: relation {rel_c:.3} <= general {gen_c:.3}"),
    )?;
    within(Duration::from_secs(120), start)?;
    Ok(format!(
        "{} test rows; full F1 {model_f1:.3} vs random {random_f1:.3}; forward content F1 relation {rel_c:.3} > general {gen_c:.3} \
         (backward content: without relation {:.3}, without general {:.3}); {:.1?}",
        test_rows.len(),
        rel.backward_content.unwrap_or(f64::NAN),
        gen.backward_content.unwrap_or(f64::NAN),
        start.elapsed()
    ))
}

fn deciles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let items: Vec<(u64, bool)> = (0..5000).map(|_| (rng.random_range(1..500), rng.random_bool(0.2))).collect();
    let c = decile_curve(&items);
    ensure((c.weighted_mean() - c.global_rate).abs() <= 1e-12, "weighted mean != global rate")?;

    let u: Vec<(u64, bool)> = (0..1000)
        .map(|i| {
            let d = i / 100;
            ((i / 10 + 1) as u64, if d == 0 || d == 9 { i % 10 < 6 } else { i % 10 < 1 })
        })
        .collect();
    let uc = decile_curve(&u);
    let mut probs: Vec<f64> = uc.bins.iter().map(|b| b.probability).collect();
    let (first, last) = (probs[0], probs[probs.len() - 1]);
    probs.sort_by(f64::total_cmp);
    let median = 0.5 * (probs[4] + probs[5]);
    ensure(first > median && last > median, format!("ends {first}/{last}, median {median}"))?;
    Ok(format!("weighted mean matches global rate; U-shape ends {first:.2}/{last:.2} > median {median:.2}"))
}

fn real_data() -> Option<Outcome> {
    let path = PathBuf::from(std::env::var_os("ECHOTRACE_REAL_CONFIG")?);
    Some((|| {
        let err = |e: echotrace::Error| e.to_string();
        let root = path.parent().map(PathBuf::from).unwrap_or_default();
        let cfg = PipelineConfig::load(&path).map_err(err)?.resolve(&root);
        let summary = pipeline::ingest(&cfg).map_err(err)?;
        ensure(
            (summary.train, summary.validation, summary.test) == (26_617, 5_831, 5_270),
            format!("split sizes {} / {} / {}", summary.train, summary.validation, summary.test),
        )?;
        pipeline::featurize(&cfg).map_err(err)?;
        let train = pipeline::load_features(&cfg, "train").map_err(err)?;
        let rate = train.iter().filter(|r| r.is_positive()).count() as f64 / train.len() as f64;
        ensure((rate - 0.15).abs() <= 0.01, format!("training base rate {rate:.3}"))?;
        let annotated = pipeline::load_annotated(&cfg).map_err(err)?;
        let d = echotrace::eval::corpus_descriptives(&annotated["train"]);
        let e = d.echo.explanation_from_op_pc.unwrap_or(0.0);
        let p = d.echo.pc_from_op.unwrap_or(0.0);
        ensure((e - 0.598).abs() <= 0.02 && (p - 0.39).abs() <= 0.02, format!("echo fractions {e:.3} / {p:.3}"))?;
        let model = pipeline::train(&PipelineConfig { model: ModelKind::Gbt, ..cfg }).map_err(err)?;
        let imp = model.importance().ok_or("not a GBT")?;
        let top = (0..imp.len()).max_by(|&a, &b| imp[a].total_cmp(&imp[b])).unwrap_or(0);
        ensure(top == TRANSFER_PROB, format!("top-gain feature {top}"))?;
        Ok(format!("splits, base rate {rate:.3}, echo {e:.3}/{p:.3}, transfer probability ranks first"))
    })())
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("feature oracle equivalence", feature_oracle),
        ("porter stemmer vocabulary", porter),
        ("preprocessing golden tests", preprocessing),
        ("LR gradient vs finite differences", lr_gradient),
        ("GBT training properties", gbt),
        ("random baseline calibration", random_baseline_calibration),
        ("JS divergence properties", js_properties),
        ("signal recovery", signal_recovery),
        ("decile machinery", deciles),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(msg) => println!("PASS  {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    match real_data() {
        None => println!("SKIP  real-data parity (optional): set ECHOTRACE_REAL_CONFIG to a pipeline config"),
        Some(Ok(msg)) => println!("PASS  real-data parity (optional): {msg}"),
        Some(Err(msg)) => println!("FAIL  real-data parity (optional): {msg}"),
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
