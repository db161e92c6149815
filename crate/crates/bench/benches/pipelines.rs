use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use gwmirror::algebra::{normalize, RatFunExpr};
use gwmirror::identities::three_edge_chain;
use gwmirror::localization::{gw_equivariant_seeded, gw_residue};
use gwmirror::mirror::mirror_transform;
use gwmirror::vsc::{vsc_recursive, vsc_residue};
use gwmirror::{GwRequest, SparsePoly, VscKey, VscTable};

fn vsc(c: &mut Criterion) {
    c.bench_function("recursion row N=6 k=5 d=3", |b| {
        b.iter(|| {
            let mut table = VscTable::new();
            for n in 0..=black_box(8) {
                vsc_recursive(VscKey::new(6, 5, 3, n), &mut table).unwrap();
            }
        })
    });
    c.bench_function("residue N=6 k=5 d=3 n=4", |b| b.iter(|| vsc_residue(black_box(VscKey::new(6, 5, 3, 4))).unwrap()));
}

fn invariants(c: &mut Criterion) {
    let conics = GwRequest::new(5, 5, 2, 1, 1);
    let cubics = GwRequest::new(5, 5, 3, 1, 1);
    c.bench_function("gw residue quintic d=2", |b| b.iter(|| gw_residue(black_box(&conics)).unwrap()));
    c.bench_function("gw residue quintic d=3", |b| b.iter(|| gw_residue(black_box(&cubics)).unwrap()));
    c.bench_function("gw equivariant quintic d=2", |b| b.iter(|| gw_equivariant_seeded(black_box(&conics), 0).unwrap()));
    c.bench_function("mirror transform N=6 k=7 d=3", |b| {
        b.iter(|| mirror_transform(black_box(VscKey::new(6, 7, 3, 4)), &mut VscTable::new()).unwrap())
    });
}

fn algebra(c: &mut Criterion) {
    let expr = RatFunExpr::quotient(
        SparsePoly::linear(&[(0, 1), (1, -1)]).pow(6).into(),
        (SparsePoly::linear(&[(0, 1), (1, -1)]) * SparsePoly::linear(&[(0, 2), (2, -1)])).into(),
    );
    c.bench_function("normalize cancelling quotient", |b| b.iter(|| normalize(black_box(&expr)).unwrap()));
    c.bench_function("three-edge decomposition a,b <= 3", |b| b.iter(|| assert!(three_edge_chain(black_box(3)).passed())));
}

criterion_group!(benches, vsc, invariants, algebra);
criterion_main!(benches);
