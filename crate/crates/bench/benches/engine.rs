use criterion::{black_box, criterion_group, criterion_main, Criterion};

use fiberprod::cover::{BranchPoint, BranchedCover};
use fiberprod::fiber::decompose;
use fiberprod::label::BranchLabel;
use fiberprod::perm::{orbits, simultaneous_conjugator, Permutation};
use fiberprod_cli::cover_file::parse_cover_file;
use fiberprod_cli::corpus::corpus_file;
use fiberprod_cli::expr::parse_map_file;

fn translation(n: usize, t: i64) -> Permutation {
    let shift = t.rem_euclid(n as i64) as usize;
    Permutation::from_images((0..n).map(|x| (x + shift) % n).collect()).unwrap()
}

fn cyclic_cover(n: usize) -> BranchedCover {
    BranchedCover::new(
        0,
        n,
        Vec::new(),
        vec![
            BranchPoint::new(BranchLabel::integer(0), translation(n, 1)),
            BranchPoint::new(BranchLabel::integer(1), translation(n, 1)),
            BranchPoint::new(BranchLabel::Infinity, translation(n, -2)),
        ],
    )
    .unwrap()
}

fn bench_decompose(c: &mut Criterion) {
    let c12 = parse_cover_file(corpus_file("cyclic12.cover").unwrap()).unwrap();
    let c18 = parse_cover_file(corpus_file("cyclic18.cover").unwrap()).unwrap();
    c.bench_function("decompose cyclic 12x18 (216 points)", |b| {
        b.iter(|| decompose(black_box(&c12), black_box(&c18)).unwrap())
    });
}

fn bench_orbits(c: &mut Criterion) {
    // A 2000-point orbit computation, the scale the engine targets.
    let a = translation(2000, 1);
    let b2 = translation(2000, 17);
    let gens = vec![a, b2];
    c.bench_function("orbits on 2000 points", |b| {
        b.iter(|| orbits(black_box(&gens), 2000).unwrap())
    });
}

fn bench_conjugator(c: &mut Criterion) {
    let cover = cyclic_cover(48);
    let tuple = cover.monodromy_tuple();
    let h = Permutation::from_images((0..48).map(|x| (x * 7 + 3) % 48).collect()).unwrap();
    let relabelled: Vec<Permutation> = tuple.iter().map(|p| p.conjugated_by(&h)).collect();
    c.bench_function("simultaneous conjugator, degree 48", |b| {
        b.iter(|| {
            simultaneous_conjugator(black_box(&tuple), black_box(&relabelled), 48)
                .unwrap()
                .unwrap()
        })
    });
}

fn bench_monodromy(c: &mut Criterion) {
    let map = parse_map_file(corpus_file("beta1.map").unwrap()).unwrap();
    c.bench_function("numerical monodromy of a degree-6 polynomial", |b| {
        b.iter(|| black_box(&map).monodromy().unwrap())
    });
}

criterion_group!(
    benches,
    bench_decompose,
    bench_orbits,
    bench_conjugator,
    bench_monodromy
);
criterion_main!(benches);
