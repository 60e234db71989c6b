use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use motifcf_bench::{ucr, waves};
use motifcf_core::{
    generate_cf_batch, generate_nun_batch, min_dist_to_series, mine_motifs, train_1nn, MiningConfig,
};

fn distance(c: &mut Criterion) {
    let ds = waves(2, 512);
    let t = &ds.series()[0];
    let mut group = c.benchmark_group("min_dist_to_series");
    for l in [16usize, 153, 358] {
        let s = &ds.series()[1][..l];
        group.bench_with_input(BenchmarkId::from_parameter(l), &l, |b, _| {
            b.iter(|| min_dist_to_series(black_box(s), black_box(t)).unwrap())
        });
    }
    group.finish();
}

fn mining(c: &mut Criterion) {
    let mut group = c.benchmark_group("mine_motifs");
    group.sample_size(10);
    let ds = waves(20, 64);
    for early_abandon in [true, false] {
        let cfg = MiningConfig {
            early_abandon,
            ..MiningConfig::default()
        };
        let id = if early_abandon {
            "waves/pruned"
        } else {
            "waves/exhaustive"
        };
        group.bench_function(id, |b| b.iter(|| mine_motifs(black_box(&ds), &cfg).unwrap()));
    }
    let (coffee, _) = ucr("Coffee");
    group.bench_function("Coffee/pruned", |b| {
        b.iter(|| mine_motifs(black_box(&coffee), &MiningConfig::default()).unwrap())
    });
    group.finish();
}

fn explain(c: &mut Criterion) {
    let (train, test) = ucr("ECG200");
    let motifs = mine_motifs(&train, &MiningConfig::default()).unwrap().motifs;
    let f = train_1nn(train.clone());
    let mut group = c.benchmark_group("explain_ecg200");
    group.bench_function("mgcf", |b| {
        b.iter(|| generate_cf_batch(black_box(test.series()), &f, &motifs, &train).unwrap())
    });
    group.bench_function("nun", |b| {
        b.iter(|| generate_nun_batch(black_box(test.series()), &f, &train).unwrap())
    });
    group.finish();
}

criterion_group!(benches, distance, mining, explain);
criterion_main!(benches);
