use sfmotifs::harness::{
    compare_to_theory, load_records, run_experiment, scaling_fit, summarize, ExperimentConfig,
    TheoryOptions,
};
use sfmotifs::model::rng::FIXED_WEIGHTS_REPLICATION;
use sfmotifs::model::{probability_matrix, sample_weights, Kernel};
use sfmotifs::motif::{expected_cliques_given_weights, MotifKind};

#[test]
fn fixed_weights_mean_matches_conditional_expectation() {
    let mut c = ExperimentConfig::new(vec![200], vec![3], 2.5, 2000, 2024);
    c.fixed_weights = true;
    c.kinds = vec![MotifKind::Clique];
    c.oracle = true;
    let report = run_experiment(&c).unwrap();
    let row = summarize(&report.records).rows[0].clone();
    assert_eq!(row.reps, 2000);

    // recompute the oracle from the lineage independently of the harness
    let p = c.model_params(200).unwrap();
    let w = sample_weights(&p, FIXED_WEIGHTS_REPLICATION).unwrap();
    let pm = probability_matrix(&w, 200, p.tau, p.kernel).unwrap();
    let expected = expected_cliques_given_weights(&pm, 3).unwrap();
    assert!((row.oracle_mean.unwrap() - expected).abs() < 1e-9 * expected);
    assert!(
        (row.mean - expected).abs() <= 3.0 * row.stderr,
        "mean {} expected {} se {}",
        row.mean,
        expected,
        row.stderr
    );
}

#[test]
fn resampled_weights_oracle_gate() {
    let mut c = ExperimentConfig::new(vec![120], vec![3, 4], 2.4, 300, 77);
    c.oracle = true;
    c.kernel = Kernel::Ratio;
    let t = summarize(&run_experiment(&c).unwrap().records);
    assert_eq!(t.rows.len(), 4);
    for r in &t.rows {
        assert_eq!(r.oracle_within(3.0), Some(true), "{r:?}");
    }
}

#[test]
fn identical_configs_give_identical_record_sets() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = ExperimentConfig::new(vec![200, 500], vec![3, 4, 5], 2.3, 4, 11);
    let a = run_experiment(&c).unwrap();
    c.output = Some(dir.path().join("a.jsonl"));
    let b = run_experiment(&c).unwrap();
    assert_eq!(a.records.len(), 2 * 3 * 2 * 4);
    let disk = load_records(c.output.as_ref().unwrap()).unwrap();
    assert_eq!(disk.len(), b.records.len());
    let mut disk = disk;
    disk.sort_by_key(|r| (r.n, r.rep, r.k, r.kind));
    for ((x, y), z) in a.records.iter().zip(&b.records).zip(&disk) {
        assert!(x.same_outcome(y));
        assert_eq!(y, z);
    }
    c.seed = 12;
    let d = run_experiment(&ExperimentConfig { output: None, ..c }).unwrap();
    assert!(d
        .records
        .iter()
        .zip(&a.records)
        .any(|(x, y)| x.count != y.count));
}

#[test]
fn small_grid_pipeline() {
    let c = ExperimentConfig::new(vec![500, 1000, 2000], vec![3, 4], 2.5, 20, 5);
    let t = summarize(&run_experiment(&c).unwrap().records);
    let t = compare_to_theory(&t, None, &TheoryOptions::default()).unwrap();
    assert_eq!(t.rows.len(), 12);
    for r in &t.rows {
        let ratio = r.ratio.unwrap();
        assert!(ratio > 0.0 && ratio.is_finite(), "{r:?}");
    }
    let fit = scaling_fit(&t, 3, 2.5, MotifKind::Clique).unwrap();
    assert!(fit.slope > 0.3 && fit.slope < 1.2, "{fit:?}");
}
