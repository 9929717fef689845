use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use uplink_noma::oracle::{outage_quadrature, QuadratureSpec};
use uplink_noma::sim::{run_batch, run_batch_sequential};
use uplink_noma::{SchemeId, SystemParams};

const TRIALS: u64 = 1 << 17;

fn batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_batch");
    group.sample_size(10);
    group.throughput(Throughput::Elements(TRIALS));
    for m in [1usize, 4, 16] {
        let p = SystemParams::from_snr_db(30.0, 1.0, 1.0, 1.0, m).unwrap();
        group.bench_with_input(BenchmarkId::new("sequential", m), &p, |b, p| {
            b.iter(|| run_batch_sequential(black_box(p), 7, TRIALS).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("parallel", m), &p, |b, p| {
            b.iter(|| run_batch(black_box(p), 7, TRIALS, 0).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("outage_quadrature");
    let p = SystemParams::from_snr_db(40.0, 1.0, 4.0, 1.0, 4).unwrap();
    for s in SchemeId::ALL {
        group.bench_function(s.label(), |b| {
            b.iter(|| outage_quadrature(s, black_box(&p), &QuadratureSpec::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, batch, oracle);
criterion_main!(benches);
