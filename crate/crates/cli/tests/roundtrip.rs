//! Parse/emit round-trip: the file grammar preserves the semantic content of
//! every cover, fuzzed over random valid constellations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fiberprod::cover::{BranchPoint, BranchedCover};
use fiberprod::gauss::GaussianRational;
use fiberprod::label::BranchLabel;
use fiberprod::perm::Permutation;
use fiberprod::sample::random_cover;
use fiberprod_cli::cover_file::{emit_cover_file, parse_cover_file};

#[test]
fn random_covers_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x207d);
    for _ in 0..300 {
        let degree = rng.gen_range(1..=9);
        let base_genus = rng.gen_range(0..=2);
        let cover = random_cover(&mut rng, degree, base_genus, 4);
        let text = emit_cover_file(&cover);
        let reparsed = parse_cover_file(&text)
            .unwrap_or_else(|e| panic!("emitted file failed to parse: {e}\n{text}"));
        assert_eq!(reparsed, cover, "round trip changed semantics:\n{text}");
    }
}

#[test]
fn exotic_labels_round_trip() {
    let swap = Permutation::parse_cycles("(1 2)", 2).unwrap();
    let cover = BranchedCover::new(
        0,
        2,
        Vec::new(),
        vec![
            BranchPoint::new(
                BranchLabel::Point(GaussianRational::new(
                    num::BigRational::new(1.into(), 2.into()),
                    num::BigRational::new((-3).into(), 4.into()),
                )),
                swap.clone(),
            ),
            BranchPoint::new(BranchLabel::named("lambda_0"), swap.clone()),
            BranchPoint::padding(BranchLabel::Infinity, 2),
        ],
    )
    .unwrap();
    cover.validate().unwrap();
    let text = emit_cover_file(&cover);
    assert!(text.contains("branch 1/2-3/4i"));
    assert!(text.contains("pad"));
    let reparsed = parse_cover_file(&text).unwrap();
    assert_eq!(reparsed, cover);
}
