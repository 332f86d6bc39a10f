use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use primroot_core::{build_certificate, construct_zeta, select_zeta, solve_unity, twiddle_table, HpComplex};

const P: u32 = 128;

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_unity");
    group.sample_size(10);
    for n in [16usize, 64, 128, 256] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| solve_unity(black_box(n), P).unwrap())
        });
    }
    group.finish();
}

fn zeta(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct_zeta");
    group.sample_size(10);
    for n in [7usize, 12, 64] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| construct_zeta(black_box(n), P).unwrap())
        });
    }
    group.finish();
}

fn certificate(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_certificate");
    group.sample_size(10);
    for n in [12usize, 64] {
        let set = solve_unity(n, P).unwrap();
        let zeta = select_zeta(&set).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| build_certificate(black_box(&zeta), &set).unwrap())
        });
    }
    group.finish();
}

fn dft(c: &mut Criterion) {
    let mut group = c.benchmark_group("dft_forward");
    for n in [16usize, 64] {
        let table = twiddle_table(n, P).unwrap();
        let x: Vec<HpComplex> = (0..n as i64).map(|k| HpComplex::from_i64(k % 5 - 2, k % 3, P)).collect();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| table.forward_dft(black_box(&x)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, solver, zeta, certificate, dft);
criterion_main!(benches);
