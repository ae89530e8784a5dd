use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion, Throughput};
use sensorval::detectors::pca_fit;
use sensorval::simulate::{fault_suite, generate, SignalProfile, SplitMix64};
use sensorval::{PipelineConfig, SensorPipeline, Window};

fn steady_stream(c: &mut Criterion) {
    let samples = generate(&SignalProfile { noise_std: 0.5, seed: 3, ..Default::default() }, 10_000).unwrap();
    let mut group = c.benchmark_group("pipeline");
    group.throughput(Throughput::Elements(samples.len() as u64));
    group.bench_function("steady_10k", |b| {
        b.iter_batched(
            || SensorPipeline::new(PipelineConfig::default(), "sensor").unwrap(),
            |mut p| samples.iter().map(|s| p.step(s).outcome.accepted).sum::<f64>(),
            BatchSize::SmallInput,
        )
    });
    let suite: Vec<_> = fault_suite().into_iter().map(|c| c.stream.samples).collect();
    group.throughput(Throughput::Elements(suite.iter().map(Vec::len).sum::<usize>() as u64));
    group.bench_function("fault_suite", |b| {
        b.iter(|| {
            suite
                .iter()
                .map(|stream| {
                    let mut p = SensorPipeline::new(PipelineConfig::default(), "sensor").unwrap();
                    stream.iter().filter(|s| p.step(s).outcome.reconstructed).count()
                })
                .sum::<usize>()
        })
    });
    group.finish();
}

fn detectors(c: &mut Criterion) {
    let mut rng = SplitMix64::new(5);
    let xs: Vec<f64> = (0..10_000).map(|_| rng.next_normal()).collect();
    c.bench_function("window/push_variance_10k", |b| {
        b.iter(|| {
            let mut w = Window::new(20);
            xs.iter().map(|&x| {
                w.push(x);
                w.variance().unwrap_or(0.0)
            }).sum::<f64>()
        })
    });
    let rows: Vec<Vec<f64>> = (0..500)
        .map(|_| {
            let s = rng.next_normal();
            (0..6).map(|j| s * (j + 1) as f64 + 0.1 * rng.next_normal()).collect()
        })
        .collect();
    c.bench_function("pca/fit_6x500", |b| b.iter(|| pca_fit(black_box(&rows), 2, 99.0).unwrap()));
    let model = pca_fit(&rows, 2, 99.0).unwrap();
    c.bench_function("pca/spe", |b| b.iter(|| model.spe(black_box(&rows[17])).unwrap()));
}

criterion_group!(benches, steady_stream, detectors);
criterion_main!(benches);
