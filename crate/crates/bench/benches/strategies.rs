//! Criterion benchmarks racing the inversion strategies per signature.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spincover_bench::corpus;
use spincover_core::group::Signature;
use spincover_core::inversion::{invert, Strategy};

fn bench_strategies(c: &mut Criterion) {
    for (p, q) in [(2usize, 1usize), (2, 2), (3, 2), (4, 1)] {
        let sig = Signature::new(p, q);
        let targets = corpus(sig, 16);
        let mut group = c.benchmark_group(format!("invert_{p}{q}"));
        for strategy in Strategy::applicable(sig) {
            group.bench_with_input(
                BenchmarkId::from_parameter(strategy.name()),
                &targets,
                |b, targets| {
                    let mut k = 0usize;
                    b.iter(|| {
                        let x = &targets[k % targets.len()];
                        k += 1;
                        invert(std::hint::black_box(x), sig, strategy, 1e-9, false).unwrap()
                    })
                },
            );
        }
        group.finish();
    }
}

fn bench_decompose(c: &mut Criterion) {
    for (p, q) in [(2usize, 2usize), (4, 1)] {
        let sig = Signature::new(p, q);
        let targets = corpus(sig, 16);
        c.bench_function(&format!("decompose_{p}{q}"), |b| {
            let mut k = 0usize;
            b.iter(|| {
                let x = &targets[k % targets.len()];
                k += 1;
                spincover_core::group::givens_decompose(std::hint::black_box(x), sig, 1e-9)
                    .unwrap()
            })
        });
    }
}

criterion_group!(benches, bench_strategies, bench_decompose);
criterion_main!(benches);
