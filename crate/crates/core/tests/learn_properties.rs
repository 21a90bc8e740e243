mod common;

use echotrace::eval::f1;
use echotrace::features::{build_corpus_stats, featurize_all, CandidateRow, FeatureVector, FeaturizeOptions, NUM_FEATURES};
use echotrace::learn::{
    feature_importance, fit_model, grid_search, random_baseline, train_gbt_traced, GbtConfig, LogRegConfig,
    LogisticObjective, Matrix, ModelSpec, Node, TrainedModel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mini_rows() -> Vec<CandidateRow> {
    let triples = common::mini_annotated();
    let stats = build_corpus_stats(&triples).unwrap();
    featurize_all(&triples, &stats, FeaturizeOptions::default())
}

#[test]
fn logreg_gradient_matches_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let rows: Vec<Vec<f64>> = (0..100).map(|_| (0..8).map(|_| rng.random::<f64>()).collect()).collect();
    let y: Vec<u8> = (0..100).map(|_| u8::from(rng.random_bool(0.3))).collect();
    let x = Matrix::from_rows(&rows).unwrap();
    let obj = LogisticObjective::new(&x, &y, LogRegConfig::new(10.0, (0.2, 0.8)));
    let params: Vec<f64> = (0..obj.n_params()).map(|_| rng.random_range(-1.0..1.0)).collect();
    let grad = obj.gradient(&params);
    let mut worst: f64 = 0.0;
    for j in 0..params.len() {
        let h = 1e-5;
        let (mut a, mut b) = (params.clone(), params.clone());
        a[j] += h;
        b[j] -= h;
        let fd = (obj.value(&a) - obj.value(&b)) / (2.0 * h);
        let rel = (fd - grad[j]).abs() / fd.abs().max(grad[j].abs()).max(1e-8);
        worst = worst.max(rel);
    }
    assert!(worst < 1e-5, "max relative error {worst}");
}

#[test]
fn gbt_loss_non_increasing_on_fixture() {
    let rows = mini_rows();
    let x = Matrix::from_rows(&rows.iter().map(|r| r.features.to_vec()).collect::<Vec<_>>()).unwrap();
    let y: Vec<u8> = rows.iter().map(|r| r.label).collect();
    let cfg = GbtConfig {
        n_trees: 50,
        max_depth: 5,
        min_child_weight: 3.0,
        pos_weight: 3.0,
        ..Default::default()
    };
    let (model, trace) = train_gbt_traced(&x, &y, cfg).unwrap();
    assert!(trace.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{trace:?}");
    assert!(trace.last().unwrap() < &trace[0]);
    let imp = feature_importance(&model);
    assert!(imp.iter().all(|&v| v >= 0.0));
    assert!((imp.iter().sum::<f64>() - 100.0).abs() < 1e-6);
}

#[test]
fn rigged_feature_wins_every_root_split() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let rows: Vec<Vec<f64>> = (0..300)
        .map(|i| {
            let mut r: Vec<f64> = (0..6).map(|_| rng.random::<f64>()).collect();
            r[3] = f64::from(i % 4 == 0);
            r
        })
        .collect();
    let y: Vec<u8> = rows.iter().map(|r| r[3] as u8).collect();
    let x = Matrix::from_rows(&rows).unwrap();
    let cfg = GbtConfig {
        n_trees: 20,
        max_depth: 2,
        min_child_weight: 1.0,
        pos_weight: 1.0,
        ..Default::default()
    };
    let (model, _) = train_gbt_traced(&x, &y, cfg).unwrap();
    for t in &model.trees {
        match t.nodes[0] {
            Node::Split { feature, .. } => assert_eq!(feature, 3),
            Node::Leaf { .. } => {}
        }
    }
    assert!(matches!(model.trees[0].nodes[0], Node::Split { feature: 3, .. }));
}

#[test]
fn random_baseline_calibration() {
    let n = 10_000;
    let b = 0.15;
    let labels = random_baseline(n, b, 99).unwrap();
    let preds = random_baseline(n, 0.15, 7).unwrap();
    let got = f1(&preds, &labels).unwrap();
    let expected = 2.0 * b * 0.15 / (b + 0.15);
    assert!((got - expected).abs() < 0.02, "{got} vs {expected}");
}

#[test]
fn model_json_round_trip_and_determinism() {
    let rows = mini_rows();
    let spec = ModelSpec::Gbt(GbtConfig {
        n_trees: 10,
        max_depth: 3,
        ..Default::default()
    });
    let all: Vec<usize> = (0..NUM_FEATURES).collect();
    let a = fit_model(&rows, &spec, &all, 0.5).unwrap();
    let b = fit_model(&rows, &spec, &all, 0.5).unwrap();
    let ja = serde_json::to_string(&a).unwrap();
    assert_eq!(ja, serde_json::to_string(&b).unwrap());
    let back: TrainedModel = serde_json::from_str(&ja).unwrap();
    assert_eq!(back.predict_rows(&rows).unwrap(), a.predict_rows(&rows).unwrap());

    let lr = fit_model(&rows, &ModelSpec::Logreg(LogRegConfig::new(1.0, (0.2, 0.8))), &all, 0.5).unwrap();
    assert!(lr.importance().is_none());
    let p = lr.predict_proba(rows[0].features.as_ref()).unwrap();
    assert!(p > 0.0 && p < 1.0);
    assert!(lr.predict_proba(&[0.0; 3]).is_err());
}

fn row(id: usize, x: f64, label: u8) -> CandidateRow {
    let mut f = FeatureVector::default();
    f[0] = x;
    f[1] = (id % 7) as f64;
    CandidateRow {
        triple_id: format!("t{id}"),
        stem: format!("s{id}"),
        features: f,
        label,
    }
}

#[test]
fn grid_search_prefers_dominant_config_and_first_on_ties() {
    // label = x > 0.5 on feature 0; heavy regularization cannot fit it
    let train: Vec<CandidateRow> = (0..200).map(|i| row(i, (i % 100) as f64 / 100.0, u8::from(i % 100 > 50))).collect();
    let val: Vec<CandidateRow> = (0..100).map(|i| row(i, (i as f64 + 0.5) / 100.0, u8::from(i > 50))).collect();
    let weak = ModelSpec::Logreg(LogRegConfig::new(1e-6, (0.5, 0.5)));
    let strong = ModelSpec::Logreg(LogRegConfig::new(1e4, (0.5, 0.5)));
    let all: Vec<usize> = (0..NUM_FEATURES).collect();
    let r = grid_search(&train, &val, &[weak, strong], &all, 0.5).unwrap();
    assert_eq!(r.best_index, 1);
    assert!(r.scores[1].validation_f1 > 0.9);

    let one = grid_search(&train, &val, &[strong], &all, 0.5).unwrap();
    assert_eq!(one.best_index, 0);
    let tie = grid_search(&train, &val, &[strong, strong], &all, 0.5).unwrap();
    assert_eq!(tie.best_index, 0);
    assert!(grid_search(&train, &val, &[], &all, 0.5).is_err());
}
