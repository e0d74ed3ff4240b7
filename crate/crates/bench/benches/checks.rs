use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use morita_core::algkit::{cyclic_group_table, FiniteAlgebra};
use morita_core::bgdkit::{check_bialgebroid, group_bialgebra, sweedler_bialgebroid};
use morita_core::exactfield::Matrix;
use morita_core::examples::{azumaya_inverse_cell, build_azumaya_cell, build_blowup, sqm_base_change, BaseChangeData};
use morita_core::moritakit::morita_verdict;
use morita_core::Field;

fn rref(c: &mut Criterion) {
    let f = Field::Rationals;
    let m = Matrix::from_rows(
        f,
        (0..24).map(|i| (0..24).map(|j| f.int(((i * 7 + j * 13) % 11) as i64 - 5)).collect()).collect(),
    )
    .unwrap();
    c.bench_function("rref 24x24 over Q", |b| b.iter(|| black_box(&m).rref()));
    let p = Field::prime(7).unwrap();
    let m = Matrix::from_rows(
        p,
        (0..48).map(|i| (0..48).map(|j| p.int((i * 5 + j * 3 + i * j) as i64)).collect()).collect(),
    )
    .unwrap();
    c.bench_function("rank 48x48 over GF(7)", |b| b.iter(|| black_box(&m).rank()));
}

fn sweedler(c: &mut Criterion) {
    let r = Arc::new(FiniteAlgebra::matrix(Field::Rationals, 2).unwrap());
    let e = sweedler_bialgebroid(&r).unwrap();
    c.bench_function("check E(Mat_2(Q))", |b| b.iter(|| check_bialgebroid(black_box(&e))));
}

fn verdicts(c: &mut Criterion) {
    let qz2 = Arc::new(group_bialgebra(Field::Rationals, &cyclic_group_table(2)).unwrap());
    let bl = build_blowup(qz2.clone(), 2).unwrap();
    c.bench_function("verdict blow-up Mat_2(Q[Z2])", |b| b.iter(|| morita_verdict(black_box(&bl.cell)).unwrap()));
    let r = Arc::new(FiniteAlgebra::matrix(Field::Rationals, 2).unwrap());
    let d = BaseChangeData { p: build_azumaya_cell(&r).unwrap(), q: azumaya_inverse_cell(&r).unwrap(), b: qz2 };
    let mut g = c.benchmark_group("base change");
    g.sample_size(10);
    g.bench_function("assemble over Mat_2(Q)", |b| b.iter(|| sqm_base_change(black_box(&d)).unwrap()));
    g.finish();
}

criterion_group!(benches, rref, sweedler, verdicts);
criterion_main!(benches);
