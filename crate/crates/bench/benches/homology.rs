use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use gbh_core::complex::{boundary_matrix, enumerate_basis};
use gbh_core::family::{betti_tables, FIGraphFamily};
use gbh_core::module::homology_betti_table;
use gbh_core::oracle::oracle_homology;
use gbh_core::snf::smith_normal_form;
use gbh_core::{corpus, FieldKind, Mode, SwComplex};

fn boundaries(c: &mut Criterion) {
    let mut group = c.benchmark_group("boundary");
    let g = Arc::new(corpus::complete_bipartite(2, 3));
    for mode in [Mode::Reduced, Mode::Full] {
        for n in [3usize, 4] {
            group.bench_with_input(BenchmarkId::new(mode.to_string(), n), &n, |b, &n| {
                b.iter(|| {
                    let src = enumerate_basis(g.clone(), 1, n, mode).unwrap();
                    let tgt = enumerate_basis(g.clone(), 0, n, mode).unwrap();
                    black_box(boundary_matrix(&src, &tgt).unwrap())
                })
            });
        }
    }
    group.finish();
}

fn homology(c: &mut Criterion) {
    let mut group = c.benchmark_group("homology");
    group.sample_size(10);
    for (name, g) in [("C_4", corpus::cycle(4)), ("K_4_1", corpus::star(4)), ("K_2_3", corpus::complete_bipartite(2, 3))] {
        let g = Arc::new(g);
        for mode in [Mode::Reduced, Mode::Full] {
            group.bench_function(format!("{name}/{mode}/n4"), |b| {
                b.iter(|| {
                    let cx = SwComplex::new(g.clone(), mode).unwrap();
                    black_box((0..=2).map(|q| cx.homology(q, 4)).collect::<Vec<_>>())
                })
            });
        }
    }
    group.finish();
}

fn smith(c: &mut Criterion) {
    let cx = SwComplex::new(Arc::new(corpus::complete_bipartite(2, 3)), Mode::Full).unwrap();
    let d = cx.boundary(2, 3);
    c.bench_function(&format!("snf/{}x{}", d.rows(), d.cols()), |b| b.iter(|| black_box(smith_normal_form(&d))));
}

fn betti(c: &mut Criterion) {
    let mut group = c.benchmark_group("betti");
    group.sample_size(10);
    let g = corpus::star(4);
    for field in [FieldKind::Prime(2), FieldKind::Rational] {
        group.bench_function(format!("K_4_1/H1/{field}"), |b| {
            b.iter(|| black_box(homology_betti_table(&g, 1, 1, 4, field, Mode::Reduced).unwrap()))
        });
    }
    let star = FIGraphFamily::star();
    group.bench_function("star_family/3..6", |b| {
        b.iter(|| black_box(betti_tables(&star, 1, 1, 4, 3..=6, FieldKind::Prime(2)).unwrap()))
    });
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for (name, g) in [("C_3", corpus::cycle(3)), ("K_3_1", corpus::star(3))] {
        group.bench_function(format!("{name}/n3/q1"), |b| b.iter(|| black_box(oracle_homology(&g, 3, 1).unwrap())));
    }
    group.finish();
}

criterion_group!(benches, boundaries, homology, smith, betti, oracle);
criterion_main!(benches);
