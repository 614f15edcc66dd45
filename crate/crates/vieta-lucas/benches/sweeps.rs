use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use vieta_lucas::fieldcore::OddPrime;
use vieta_lucas::lucas::{lucas_uv_fast, lucas_uv_naive, LucasParams};
use vieta_lucas::solver::theorem13_equiv_sweep_with;

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("theorem13_sweep");
    group.sample_size(10);
    for &(p_max, n_max) in &[(31u64, 8u64), (61, 12)] {
        group.bench_with_input(
            BenchmarkId::new("sequential", format!("p{p_max}_n{n_max}")),
            &(p_max, n_max),
            |b, &(p_max, n_max)| b.iter(|| theorem13_equiv_sweep_with(p_max, n_max, false)),
        );
        group.bench_with_input(
            BenchmarkId::new("parallel", format!("p{p_max}_n{n_max}")),
            &(p_max, n_max),
            |b, &(p_max, n_max)| b.iter(|| theorem13_equiv_sweep_with(p_max, n_max, true)),
        );
    }
    group.finish();
}

fn bench_ladder(c: &mut Criterion) {
    let p = OddPrime::new(1_000_000_007).unwrap();
    let params = LucasParams::from_ints(p, 6, 3);
    let mut group = c.benchmark_group("ladder");
    group.bench_function("fast_1e18", |b| {
        b.iter(|| lucas_uv_fast(&params, 1_000_000_000_000_000_000u128))
    });
    group.bench_function("naive_2000", |b| {
        b.iter(|| lucas_uv_naive(&params, 2000).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_sweep, bench_ladder);
criterion_main!(benches);
