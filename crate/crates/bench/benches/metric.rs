use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use ppmetric::{
    corpus, pp, subset_analysis, AnalysisOptions, EfficiencyKind, EfficiencyRecord, PlatformId,
};

fn records(n: usize) -> Vec<EfficiencyRecord> {
    (0..n)
        .map(|i| {
            EfficiencyRecord::from_value(
                PlatformId::new(format!("p{i}")).unwrap(),
                EfficiencyKind::Application,
                0.05 + 0.9 * ((i * 37 % 101) as f64 / 101.0),
            )
        })
        .collect()
}

fn bench_pp(c: &mut Criterion) {
    let mut group = c.benchmark_group("pp");
    for n in [1, 16, 256, 4096] {
        let recs = records(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &recs, |b, recs| {
            b.iter(|| pp(black_box(recs)).unwrap())
        });
    }
    group.finish();
}

fn bench_matrix(c: &mut Criterion) {
    let corpus = corpus("gpustream-shape").unwrap();
    let apps = corpus.dataset.applications(&corpus.problem);
    let options = AnalysisOptions::default();
    c.bench_function("subset_analysis/gpustream-shape", |b| {
        b.iter(|| {
            subset_analysis(
                black_box(&apps),
                &corpus.problem,
                &corpus.sets,
                &EfficiencyKind::ALL,
                &corpus.dataset,
                &options,
            )
        })
    });
}

criterion_group!(benches, bench_pp, bench_matrix);
criterion_main!(benches);
