//! Random valid covers for property tests and benchmarks.
//!
//! Constellations are built by completing a random prefix: all but the last
//! branch permutation are drawn uniformly and the last one is solved from the
//! surface-group relation, then non-transitive draws are rejected.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cover::{BranchPoint, BranchedCover};
use crate::label::BranchLabel;
use crate::perm::Permutation;

pub fn random_permutation(rng: &mut impl Rng, degree: usize) -> Permutation {
    let mut images: Vec<usize> = (0..degree).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("shuffle of identity is a bijection")
}

/// A uniformly random valid cover of the given degree over a base of genus
/// `base_genus`, with at most `max_branch` branch entries.  Labels are the
/// integers `0, 1, 2, ...`.
pub fn random_cover(
    rng: &mut impl Rng,
    degree: usize,
    base_genus: usize,
    max_branch: usize,
) -> BranchedCover {
    assert!(degree >= 1);
    let min_branch = if base_genus == 0 && degree > 1 { 2 } else { 1 };
    let max_branch = max_branch.max(min_branch);
    loop {
        let handles: Vec<(Permutation, Permutation)> = (0..base_genus)
            .map(|_| {
                (
                    random_permutation(rng, degree),
                    random_permutation(rng, degree),
                )
            })
            .collect();
        let k = rng.gen_range(min_branch..=max_branch);
        let mut prefix = Permutation::identity(degree);
        for (a, b) in &handles {
            prefix = prefix.then(&Permutation::commutator(a, b));
        }
        let mut perms = Vec::with_capacity(k);
        for _ in 0..k - 1 {
            let c = random_permutation(rng, degree);
            prefix = prefix.then(&c);
            perms.push(c);
        }
        perms.push(prefix.inverse());
        let branch_points = perms
            .into_iter()
            .enumerate()
            .map(|(i, monodromy)| {
                let padding = monodromy.is_identity();
                BranchPoint {
                    label: BranchLabel::integer(i as i64),
                    monodromy,
                    padding,
                }
            })
            .collect();
        let cover = BranchedCover::new(base_genus, degree, handles, branch_points)
            .expect("degrees are consistent by construction");
        if cover.validate().is_ok() {
            return cover;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sampled_covers_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let degree = rng.gen_range(1..=10);
            let base_genus = rng.gen_range(0..=2);
            let c = random_cover(&mut rng, degree, base_genus, 4);
            assert!(c.validate().is_ok());
            assert_eq!(c.degree(), degree);
            assert_eq!(c.base_genus(), base_genus);
        }
    }
}
