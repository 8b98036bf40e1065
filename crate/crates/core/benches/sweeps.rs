use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use paracalc::commutator::{instance_field, tilde_commutator, CommutatorInstance};
use paracalc::experiments::{scaling_experiment, Experiment, ScalingConfig};
use paracalc::spectral::{build_partition, synth_holder, Grid};
use paracalc::Exec;

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn seed_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("commutator_seed_sweep");
    group.sample_size(10);
    let config = ScalingConfig {
        experiment: Experiment::Commutator,
        beta: 0.55,
        alphas: vec![0.35],
        gamma: -0.7,
        log2_size: 12,
        seeds: (0..8).collect(),
    };
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| scaling_experiment(&config, exec).unwrap())
        });
    }
    group.finish();
}

fn reconstruction(c: &mut Criterion) {
    let mut group = c.benchmark_group("pointwise_reconstruction");
    group.sample_size(10);
    let pou = build_partition(Grid::line(11).unwrap(), 2).unwrap();
    let g = synth_holder(0.6, 15, &pou, 8).unwrap();
    let fs = vec![
        synth_holder(0.2, 0, &pou, 8).unwrap(),
        synth_holder(0.15, 1, &pou, 8).unwrap(),
    ];
    let xi = synth_holder(-0.5, 14, &pou, 8).unwrap();
    let inst = CommutatorInstance::new(g, 0.6, fs, vec![0.2, 0.15], xi, -0.5).unwrap();
    let field = instance_field(&inst, &pou).unwrap();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| tilde_commutator(&inst, &field, &pou, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, seed_sweep, reconstruction);
criterion_main!(benches);
