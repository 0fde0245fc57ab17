//! Parallel versus sequential grid evaluation: the rayon-backed
//! `par::map` against the always-sequential `par::map_seq` on the two
//! grid-shaped workloads, immersion evaluation and lift integration.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

use fronts::flat::{frame_at, Sl2Frame};
use fronts::gallery;
use fronts::mesh::{DomainSpec, ParamGrid};
use fronts::par;
use fronts::affine::Immersion;

fn grid_points(radius: f64, n: usize) -> Vec<Complex64> {
    ParamGrid::build(DomainSpec::Disk { radius }, n)
        .unwrap()
        .points
}

fn bench_affine_grid(c: &mut Criterion) {
    let data = gallery::zn(4).unwrap();
    let imm = Immersion::prepare(&data, None).unwrap();
    let mut group = c.benchmark_group("affine_grid");
    for n in [32usize, 64] {
        let pts = grid_points(1.5, n);
        group.bench_with_input(BenchmarkId::new("parallel", n), &pts, |b, pts| {
            b.iter(|| {
                par::map(pts.clone(), |z| imm.eval(z).ok().map(|p| p.phi))
            })
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &pts, |b, pts| {
            b.iter(|| {
                par::map_seq(pts.clone(), |z| imm.eval(z).ok().map(|p| p.phi))
            })
        });
    }
    group.finish();
}

fn bench_lift_grid(c: &mut Criterion) {
    let forms = gallery::horosphere().unwrap();
    let base = Complex64::new(0.0, 0.0);
    let mut group = c.benchmark_group("lift_grid");
    group.sample_size(10);
    for n in [8usize, 16] {
        let pts = grid_points(1.0, n);
        group.bench_with_input(BenchmarkId::new("parallel", n), &pts, |b, pts| {
            b.iter(|| {
                par::map(pts.clone(), |z| -> Option<Sl2Frame> {
                    frame_at(&forms, base, z).ok()
                })
            })
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &pts, |b, pts| {
            b.iter(|| {
                par::map_seq(pts.clone(), |z| -> Option<Sl2Frame> {
                    frame_at(&forms, base, z).ok()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_affine_grid, bench_lift_grid);
criterion_main!(benches);
