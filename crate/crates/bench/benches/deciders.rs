use criterion::{black_box, criterion_group, criterion_main, Criterion};

use trivext_core::ideal::{enumerate_ideals, DEFAULT_LATTICE_BOUND};
use trivext_core::poly::gaussian_witness_search;
use trivext_core::{classify, ClassifyConfig, FiniteModule, FiniteRing, RingPoly};

fn residue_ext(modulus: usize, n: usize) -> FiniteRing {
    let a = FiniteRing::zmod(modulus).unwrap();
    let e = FiniteModule::residue_space(&a, n).unwrap();
    FiniteRing::trivial_extension(&a, &e).unwrap().0
}

fn plane_over(p: usize) -> FiniteRing {
    let k = FiniteRing::zmod(p).unwrap();
    FiniteRing::trivial_extension(&k, &FiniteModule::free(&k, 2).unwrap())
        .unwrap()
        .0
}

// Rings are rebuilt inside each iteration: lattices are cached per ring.
fn lattices(c: &mut Criterion) {
    let mut g = c.benchmark_group("lattice");
    g.bench_function("z64", |b| {
        b.iter(|| {
            enumerate_ideals(&FiniteRing::zmod(64).unwrap(), DEFAULT_LATTICE_BOUND)
                .unwrap()
                .len()
        })
    });
    g.bench_function("z8 ext residue^2", |b| {
        b.iter(|| {
            enumerate_ideals(&residue_ext(8, 2), DEFAULT_LATTICE_BOUND)
                .unwrap()
                .len()
        })
    });
    g.bench_function("f5 ext plane", |b| {
        b.iter(|| {
            enumerate_ideals(&plane_over(5), DEFAULT_LATTICE_BOUND)
                .unwrap()
                .len()
        })
    });
    g.finish();
}

fn classification(c: &mut Criterion) {
    let cfg = ClassifyConfig::default();
    let mut g = c.benchmark_group("classify");
    g.sample_size(20);
    g.bench_function("z4 ext residue", |b| {
        b.iter(|| classify(&residue_ext(4, 1), &cfg).unwrap())
    });
    g.bench_function("f2 ext plane", |b| {
        b.iter(|| classify(&plane_over(2), &cfg).unwrap())
    });
    g.bench_function("z8 ext residue", |b| {
        b.iter(|| classify(&residue_ext(8, 1), &cfg).unwrap())
    });
    g.finish();
}

fn witness_search(c: &mut Criterion) {
    let r = residue_ext(4, 1);
    let f = RingPoly::new(&r, vec![2, 1]);
    let mut g = c.benchmark_group("witness");
    for d in [1u32, 2] {
        g.bench_function(format!("z4 ext residue D={d}"), |b| {
            b.iter(|| gaussian_witness_search(black_box(&f), d, u64::MAX, true).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, lattices, classification, witness_search);
criterion_main!(benches);
