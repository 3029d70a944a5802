use criterion::{black_box, criterion_group, criterion_main, Criterion};
use e10pairs::arith::{zeta_d, Rational};
use e10pairs::e10::{enumerate_roots, find_pairs, positivity_search};
use e10pairs::genus::{genus_of, predicted_k_genus};
use e10pairs::lattice::{anti_isometries, discriminant_form, smith_normal_form};
use e10pairs::mass::{mass_closed_form, mass_stepwise};
use e10pairs::padic::{jordan_symbol, Sign};
use e10pairs_bench::{complement_gram, pair_gram};
use num::BigInt;

fn lattice(c: &mut Criterion) {
    let k7 = complement_gram(7);
    c.bench_function("snf complement k=7", |b| {
        b.iter(|| smith_normal_form(black_box(&k7.to_big())))
    });
    c.bench_function("jordan symbol complement k=7 p=2", |b| {
        b.iter(|| jordan_symbol(black_box(&k7), 2).unwrap())
    });
    c.bench_function("genus of complement k=7", |b| {
        b.iter(|| genus_of(black_box(&k7)).unwrap())
    });
    let l = discriminant_form(&pair_gram(7)).unwrap();
    let k = discriminant_form(&k7).unwrap();
    c.bench_function("anti-isometries k=7", |b| {
        b.iter(|| anti_isometries(black_box(&l), &k))
    });
}

fn mass(c: &mut Criterion) {
    c.bench_function("stepwise mass k=3..50", |b| {
        b.iter(|| {
            for k in 3..=50 {
                mass_stepwise(&predicted_k_genus(k).unwrap()).unwrap();
            }
        })
    });
    c.bench_function("closed mass k=3..50", |b| {
        b.iter(|| {
            for k in 3..=50 {
                mass_closed_form(black_box(k)).unwrap();
            }
        })
    });
    let r = Rational::new(1.into(), BigInt::from(10u64).pow(12));
    c.bench_function("zeta_d(4) d=39996 radius 1e-12", |b| {
        b.iter(|| zeta_d(black_box(39996), 4, &r))
    });
}

fn roots(c: &mut Criterion) {
    c.bench_function("enumerate roots height 6", |b| {
        b.iter(|| enumerate_roots(black_box(6)))
    });
    c.bench_function("find saturated pair k=7", |b| {
        b.iter(|| find_pairs(black_box(7), 60, 1, true))
    });
    let rs = enumerate_roots(4);
    c.bench_function("positivity words, 20 roots of height <= 4", |b| {
        b.iter(|| {
            for (i, r) in rs.iter().enumerate().take(20) {
                for rp in &rs[i + 1..] {
                    positivity_search(r, rp, Sign::Plus, 30);
                }
            }
        })
    });
}

criterion_group!(benches, lattice, mass, roots);
criterion_main!(benches);
