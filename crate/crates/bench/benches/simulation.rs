use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sfasim_bench::{bits_complete, random_complete};
use sfasim_core::simulation::{run, SimOptions};
use sfasim_core::{Algo, Limits};

fn random_inputs(c: &mut Criterion) {
    let mut group = c.benchmark_group("random");
    for n in [8, 16, 32] {
        let inputs = random_complete(n, 8);
        for algo in Algo::ALL {
            group.bench_with_input(BenchmarkId::new(algo.name(), n), &inputs, |b, inputs| {
                let opts = SimOptions::default();
                b.iter(|| {
                    for m in inputs {
                        black_box(run(algo, m, &opts).unwrap());
                    }
                })
            });
        }
    }
    group.finish();
}

fn independent_bits(c: &mut Criterion) {
    let mut group = c.benchmark_group("independent_bits");
    group.sample_size(10);
    let opts = SimOptions::with_limits(Limits::default().with_cap(1 << 12));
    for bits in [4, 6, 8, 10, 12] {
        let m = bits_complete(bits);
        for algo in [Algo::Global, Algo::Local, Algo::NoCount] {
            group.bench_with_input(BenchmarkId::new(algo.name(), bits), &m, |b, m| {
                b.iter(|| black_box(run(algo, m, &opts)))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, random_inputs, independent_bits);
criterion_main!(benches);
