use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use graph_lda::{
    apply_whitening, eigh_symmetric, graph_lda_fit, graph_lda_predict, lda_fit, lda_predict, logreg_fit,
    logreg_predict, make_whitening, run_table, Classifier, ExperimentConfig, GraphSpec, LogRegHyper, Preprocessing,
};
use graph_lda_bench::{episode, preset_params};

fn spectral(c: &mut Criterion) {
    let params = preset_params(&GraphSpec::erdos_renyi_preset(), 1);
    c.bench_function("eigh_100", |b| b.iter(|| eigh_symmetric(black_box(&params.gso)).unwrap()));
    let w = make_whitening(&eigh_symmetric(&params.gso).unwrap(), 1.0).unwrap();
    let ep = episode(&params, 5, 100, 1);
    c.bench_function("whiten_200x100", |b| b.iter(|| apply_whitening(&w, black_box(&ep.query_x)).unwrap()));
}

fn classifiers(c: &mut Criterion) {
    let params = preset_params(&GraphSpec::erdos_renyi_preset(), 1);
    let w = make_whitening(&eigh_symmetric(&params.gso).unwrap(), 1.0).unwrap();
    let ep = episode(&params, 5, 100, 1);
    c.bench_function("graph_lda_episode", |b| {
        b.iter(|| {
            let m = graph_lda_fit(&w, &ep.train_x, &ep.train_y).unwrap();
            graph_lda_predict(&m, &ep.query_x).unwrap()
        })
    });
    c.bench_function("lda_oas_episode", |b| {
        b.iter(|| lda_predict(&lda_fit(&ep.train_x, &ep.train_y).unwrap(), &ep.query_x).unwrap())
    });
    c.bench_function("logreg_episode", |b| {
        b.iter(|| {
            let m = logreg_fit(&ep.train_x, &ep.train_y, LogRegHyper::default()).unwrap();
            logreg_predict(&m, &ep.query_x).unwrap()
        })
    });
}

fn harness(c: &mut Criterion) {
    let mut cfg = ExperimentConfig::new(GraphSpec::erdos_renyi_preset());
    cfg.n_problems = 1;
    c.bench_function("table_one_problem_all_cells", |b| b.iter(|| run_table(black_box(&cfg)).unwrap()));
    cfg.n_problems = 100;
    cfg.classifiers = vec![Classifier::Ncm];
    cfg.preprocessings = vec![Preprocessing::Ours];
    let mut group = c.benchmark_group("table");
    group.sample_size(10);
    group.bench_function("ncm_ours_100_problems", |b| b.iter(|| run_table(black_box(&cfg)).unwrap()));
    group.finish();
}

criterion_group!(benches, spectral, classifiers, harness);
criterion_main!(benches);
