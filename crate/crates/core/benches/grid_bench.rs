use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kg_symm::model::SystemClass;
use kg_symm::numlab::{apply_on_grid, default_packets, gaussian_packet, Grid2D, GridCfg};
use kg_symm::opalg::generator;
use kg_symm::par::ExecMode;
use kg_symm::suite::{default_vals, run_suite};

fn modes() -> [ExecMode; 2] {
    [ExecMode::Sequential, ExecMode::Parallel]
}

fn mode_label(mode: ExecMode) -> &'static str {
    match mode {
        ExecMode::Sequential => "sequential",
        ExecMode::Parallel => "parallel",
    }
}

/// Packet application of a composite generator, the hot path of the numeric
/// identity suite.
fn bench_apply(c: &mut Criterion) {
    let vals = default_vals(SystemClass::PlaneCoulomb);
    let cfg = GridCfg::default();
    let packet = default_packets()[0];
    let grid = Grid2D::centered(packet.center, cfg.half_extent, cfg.h);
    let field = gaussian_packet(&grid, &packet);
    let r1 = generator(SystemClass::PlaneCoulomb, "R1").unwrap();
    let op = r1.mul(&r1);

    let mut group = c.benchmark_group("apply_on_grid");
    group.sample_size(10);
    for mode in modes() {
        group.bench_with_input(
            BenchmarkId::new("runge_lenz_square", mode_label(mode)),
            &mode,
            |b, &mode| b.iter(|| apply_on_grid(&op, &vals, &grid, &field, mode).unwrap()),
        );
    }
    group.finish();
}

/// Whole symbolic suite, parallelized over identities.
fn bench_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("symbolic_suite");
    for mode in modes() {
        group.bench_with_input(
            BenchmarkId::new("sphere_coulomb", mode_label(mode)),
            &mode,
            |b, &mode| b.iter(|| run_suite(SystemClass::SphereCoulomb, false, mode).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_apply, bench_suite);
criterion_main!(benches);
