//! Sequential vs. parallel execution of batch workloads.
//!
//! Run with: cargo bench -p majenc-core --bench parallel
//! Without the `parallel` feature both arms run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use majenc_core::codes::{random_code, random_gate};
use majenc_core::majorana::{BraidGate, MajoranaString};
use majenc_core::oracle::gate_conjugation_agrees;
use majenc_core::par::{self, Execution};
use majenc_core::synth::{synthesize_batch, Variant};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn batch_synthesis(c: &mut Criterion) {
    let mut group = c.benchmark_group("batch_synthesis");
    for n in [16usize, 40] {
        let codes: Vec<_> = (0..64).map(|s| random_code(n, n / 4, s).unwrap()).collect();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &codes, |b, codes| {
                b.iter(|| synthesize_batch(black_box(codes), Variant::WithAncilla, exec))
            });
        }
    }
    group.finish();
}

fn oracle_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_sweep");
    group.sample_size(10);
    let n = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let samples: Vec<(BraidGate, MajoranaString)> = (0..512)
        .map(|_| {
            let g = random_gate(&mut rng, n);
            let m = MajoranaString::from_modes(n, &[0, 3, 4], 0).unwrap();
            (g, m)
        })
        .collect();
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                par::all(exec, black_box(&samples), |(g, m)| {
                    gate_conjugation_agrees(g, m).unwrap()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, batch_synthesis, oracle_sweep);
criterion_main!(benches);
