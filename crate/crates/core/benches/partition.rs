use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use ldd_core::validate::{validate_with, DiameterMethod};
use ldd_core::{gen, partition_once_with, Execution, ShiftAssignment, TieBreak};

fn shifted_bfs(c: &mut Criterion) {
    let mut group = c.benchmark_group("partition_once");
    group.sample_size(20);
    for side in [100usize, 300, 1000] {
        let g = gen::grid(side, side).unwrap();
        let s = ShiftAssignment::sample(g.n(), 0.01, 42, TieBreak::Fractional).unwrap();
        group.throughput(Throughput::Elements(2 * g.m() as u64));
        for exec in [Execution::Sequential, Execution::Parallel] {
            group.bench_with_input(
                BenchmarkId::new(format!("{exec:?}").to_lowercase(), format!("grid{side}")),
                &(&g, &s),
                |b, (g, s)| b.iter(|| partition_once_with(g, s, exec).unwrap()),
            );
        }
    }
    group.finish();
}

fn piece_diameters(c: &mut Criterion) {
    let mut group = c.benchmark_group("validate");
    group.sample_size(10);
    let g = gen::grid(200, 200).unwrap();
    let s = ShiftAssignment::sample(g.n(), 0.02, 7, TieBreak::Fractional).unwrap();
    let run = partition_once_with(&g, &s, Execution::Sequential).unwrap();
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_function(format!("{exec:?}").to_lowercase(), |b| {
            b.iter(|| {
                validate_with(
                    &g,
                    &run.decomposition,
                    0.02,
                    None,
                    DiameterMethod::Exact,
                    exec,
                )
            })
        });
    }
    group.finish();
}

criterion_group!(benches, shifted_bfs, piece_diameters);
criterion_main!(benches);
