use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use qiso_bench::lattice;
use qiso_core::classify::classify;
use qiso_core::oracle::{enumerate_weyl, Oracle, DEFAULT_ORACLE_CAP, DEFAULT_POINT_CAP};
use qiso_core::{verify, AffineDiagram, VerifyOptions};

fn classification(c: &mut Criterion) {
    for (t, spec) in [("E6", "ad"), ("E7", "ad"), ("E8", "sc"), ("D8", "ad"), ("A10", "ad")] {
        let l = lattice(t, spec);
        c.bench_function(&format!("classify {t} {spec}"), |b| b.iter(|| classify(black_box(&l), 0).unwrap()));
    }
}

fn construction(c: &mut Criterion) {
    for t in ["E8", "D8"] {
        let ct = t.parse().unwrap();
        c.bench_function(&format!("affine diagram {t}"), |b| b.iter(|| AffineDiagram::new(black_box(&ct)).unwrap()));
    }
}

fn oracle(c: &mut Criterion) {
    let f4 = lattice("F4", "sc");
    c.bench_function("enumerate W(F4)", |b| {
        b.iter(|| enumerate_weyl(f4.diagram().root_system(), DEFAULT_ORACLE_CAP).unwrap())
    });
    let e6 = lattice("E6", "ad");
    let w = enumerate_weyl(e6.diagram().root_system(), DEFAULT_ORACLE_CAP).unwrap();
    let o = Oracle::new(&e6, &w);
    let lambda = e6.diagram().vertex(4);
    c.bench_function("stabilizer in W(E6)", |b| b.iter(|| o.stabilizer(black_box(&lambda))));

    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    let b4 = lattice("B4", "ad");
    let wb = enumerate_weyl(b4.diagram().root_system(), DEFAULT_ORACLE_CAP).unwrap();
    let ob = Oracle::new(&b4, &wb);
    group.bench_function("alcove grid B4 den 4", |b| b.iter(|| ob.exhaustive_search(0, 4, DEFAULT_POINT_CAP).unwrap()));
    let d4 = lattice("D4", "z1");
    group.bench_function("verify D4 z1", |b| b.iter(|| verify(&d4, 0, &VerifyOptions::default()).unwrap()));
    group.finish();
}

criterion_group!(benches, classification, construction, oracle);
criterion_main!(benches);
