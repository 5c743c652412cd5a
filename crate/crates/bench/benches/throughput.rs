use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use weft_bench::{gen_scenario, gen_trace, Scenario, TraceKind, TraceSpec};
use weft_core::io::open_source;
use weft_core::{feed, CompiledMonitor, TimeModel, TraceFormat};

const STEPS: u64 = 20_000;

fn drive(monitor: &CompiledMonitor, bytes: &[u8], format: TraceFormat) -> u64 {
    let mut src = open_source(bytes, format, &monitor.predicates, monitor.time_model).unwrap();
    let mut hits = 0u64;
    feed(monitor, &mut *src, |step| {
        if let weft_core::StepOutput::Discrete { verdicts, .. } = step {
            hits += verdicts.iter().filter(|&&v| v).count() as u64;
        }
        Ok(())
    })
    .unwrap();
    hits
}

fn shared_vs_separate(c: &mut Criterion) {
    let trace = gen_trace(&TraceSpec::new(TraceKind::Uniform, STEPS, 1)).unwrap();
    let bytes = trace.encode(TraceFormat::Binary);
    let mut group = c.benchmark_group("discrete");
    group.throughput(Throughput::Elements(STEPS));
    for s in Scenario::SHARING {
        let props = gen_scenario(s, 1);
        let multi = CompiledMonitor::from_texts(&props, TimeModel::Discrete).unwrap();
        let separate: Vec<_> = props
            .iter()
            .map(|p| CompiledMonitor::from_texts(&[p], TimeModel::Discrete).unwrap())
            .collect();
        group.bench_with_input(BenchmarkId::new("multi", s), &multi, |b, m| {
            b.iter(|| drive(m, black_box(&bytes), TraceFormat::Binary))
        });
        group.bench_with_input(BenchmarkId::new("sequential", s), &separate, |b, ms| {
            b.iter(|| ms.iter().map(|m| drive(m, black_box(&bytes), TraceFormat::Binary)).sum::<u64>())
        });
    }
    group.finish();
}

fn feeders(c: &mut Criterion) {
    let trace = gen_trace(&TraceSpec::new(TraceKind::Uniform, STEPS, 2)).unwrap();
    let monitor =
        CompiledMonitor::from_texts(&gen_scenario(Scenario::BestCaseShared, 0), TimeModel::Discrete).unwrap();
    let mut group = c.benchmark_group("feeder");
    group.throughput(Throughput::Elements(STEPS));
    for format in [TraceFormat::Json, TraceFormat::Binary] {
        let bytes = trace.encode(format);
        group.bench_function(format.to_string(), |b| b.iter(|| drive(&monitor, black_box(&bytes), format)));
    }
    group.finish();
}

fn dense_segments(c: &mut Criterion) {
    let mut group = c.benchmark_group("dense");
    for density in [10.0, 100.0] {
        let spec = TraceSpec::new(TraceKind::Dense, 1_000_000, 3)
            .density(density)
            .time_model(TimeModel::Dense);
        let trace = gen_trace(&spec).unwrap();
        let bytes = trace.encode(TraceFormat::Binary);
        let monitor =
            CompiledMonitor::from_texts(&gen_scenario(Scenario::WorstUnique, 0), TimeModel::Dense).unwrap();
        group.throughput(Throughput::Elements(trace.len() as u64));
        group.bench_with_input(BenchmarkId::new("worst-unique", density), &bytes, |b, bytes| {
            b.iter(|| drive(&monitor, black_box(bytes), TraceFormat::Binary))
        });
    }
    group.finish();
}

fn point_bound(c: &mut Criterion) {
    let trace = gen_trace(&TraceSpec::new(TraceKind::Adversarial, STEPS, 0)).unwrap();
    let bytes = trace.encode(TraceFormat::Binary);
    let mut group = c.benchmark_group("adversarial");
    group.throughput(Throughput::Elements(STEPS));
    for b in [3u64, 15, 63] {
        let text = format!("once[{b}:{b}] q");
        let monitor = CompiledMonitor::from_texts(&[text], TimeModel::Discrete).unwrap();
        group.bench_with_input(BenchmarkId::new("once-point", b), &monitor, |bch, m| {
            bch.iter(|| drive(m, black_box(&bytes), TraceFormat::Binary))
        });
    }
    group.finish();
}

criterion_group!(benches, shared_vs_separate, feeders, dense_segments, point_bound);
criterion_main!(benches);
