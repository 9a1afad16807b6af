//! Branched covers of a closed surface, represented by monodromy data.
//!
//! A cover of degree `n` over a base of genus `g0` is stored as `g0` handle
//! generator pairs plus an ordered list of branch points, each a label with
//! its local monodromy permutation.  The surface-group relation
//! `[a_1,b_1]...[a_g,b_g] * c_1 * ... * c_k = id` is taken in list order with
//! the crate's left-first composition, and the full generator set must act
//! transitively (the covering surface is connected).
//!
//! Identity branch entries are only allowed when flagged as padding; the
//! fiber-product alignment inserts such entries, raw input should not contain
//! silent no-ops.

use std::fmt;

use num::integer::lcm;
use thiserror::Error;

use crate::label::BranchLabel;
use crate::perm::{group_order_bounded, orbits, CycleType, GroupOrder, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverViolation {
    #[error("product relation fails: residual permutation {residual}")]
    Relation { residual: Permutation },
    #[error("monodromy group is not transitive: {orbit_count} orbits")]
    NotTransitive { orbit_count: usize },
    #[error("duplicate branch label {label}")]
    DuplicateLabel { label: BranchLabel },
    #[error("branch entry {index} at {label} is the identity but not flagged as padding")]
    IdentityNotPadded { index: usize, label: BranchLabel },
    #[error("branch entry {index} at {label} is flagged as padding but not the identity")]
    PaddingNotIdentity { index: usize, label: BranchLabel },
    #[error("degree mismatch: cover has degree {expected}, permutation has degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree must be at least 1")]
    ZeroDegree,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("invalid cover: {0}")]
    Invalid(#[from] CoverViolation),
    #[error("inconsistent cover: Riemann-Hurwitz gives 2-2g = {chi}")]
    InconsistentCover { chi: i64 },
}

/// One branch value together with its local monodromy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchPoint {
    pub label: BranchLabel,
    pub monodromy: Permutation,
    /// Set on identity entries inserted by branch-set alignment.
    pub padding: bool,
}

impl BranchPoint {
    pub fn new(label: BranchLabel, monodromy: Permutation) -> Self {
        BranchPoint {
            label,
            monodromy,
            padding: false,
        }
    }

    pub fn padding(label: BranchLabel, degree: usize) -> Self {
        BranchPoint {
            label,
            monodromy: Permutation::identity(degree),
            padding: true,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct BranchedCover {
    base_genus: usize,
    degree: usize,
    handles: Vec<(Permutation, Permutation)>,
    branch_points: Vec<BranchPoint>,
}

impl BranchedCover {
    pub fn new(
        base_genus: usize,
        degree: usize,
        handles: Vec<(Permutation, Permutation)>,
        branch_points: Vec<BranchPoint>,
    ) -> Result<Self, CoverViolation> {
        if degree == 0 {
            return Err(CoverViolation::ZeroDegree);
        }
        let check = |p: &Permutation| -> Result<(), CoverViolation> {
            if p.degree() != degree {
                return Err(CoverViolation::DegreeMismatch {
                    expected: degree,
                    found: p.degree(),
                });
            }
            Ok(())
        };
        for (a, b) in &handles {
            check(a)?;
            check(b)?;
        }
        for bp in &branch_points {
            check(&bp.monodromy)?;
        }
        debug_assert_eq!(handles.len(), base_genus);
        Ok(BranchedCover {
            base_genus,
            degree,
            handles,
            branch_points,
        })
    }

    /// Convenience constructor for genus-zero covers from `(label, cycles)`
    /// pairs in 1-based cycle notation.
    pub fn over_sphere(
        degree: usize,
        branches: &[(BranchLabel, &str)],
    ) -> Result<Self, CoverError> {
        let mut points = Vec::new();
        for (label, cycles) in branches {
            let p = Permutation::parse_cycles(cycles, degree)
                .unwrap_or_else(|e| panic!("bad cycles {cycles:?}: {e}"));
            points.push(BranchPoint::new(label.clone(), p));
        }
        let cover = BranchedCover::new(0, degree, Vec::new(), points)?;
        cover.validate()?;
        Ok(cover)
    }

    pub fn base_genus(&self) -> usize {
        self.base_genus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn handles(&self) -> &[(Permutation, Permutation)] {
        &self.handles
    }

    pub fn branch_points(&self) -> &[BranchPoint] {
        &self.branch_points
    }

    pub fn branch_point(&self, label: &BranchLabel) -> Option<&BranchPoint> {
        self.branch_points.iter().find(|bp| &bp.label == label)
    }

    /// All generators of the monodromy group: handle pairs in order, then
    /// branch permutations in order.
    pub fn generators(&self) -> Vec<Permutation> {
        let mut gens = Vec::with_capacity(2 * self.handles.len() + self.branch_points.len());
        for (a, b) in &self.handles {
            gens.push(a.clone());
            gens.push(b.clone());
        }
        for bp in &self.branch_points {
            gens.push(bp.monodromy.clone());
        }
        gens
    }

    /// The full monodromy tuple in generator order; two covers over the same
    /// branch set are isomorphic exactly when their tuples are simultaneously
    /// conjugate.
    pub fn monodromy_tuple(&self) -> Vec<Permutation> {
        self.generators()
    }

    /// Product `[a_1,b_1]...[a_g,b_g] * c_1 * ... * c_k` in list order.
    pub fn relation_product(&self) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for (a, b) in &self.handles {
            acc = acc.then(&Permutation::commutator(a, b));
        }
        for bp in &self.branch_points {
            acc = acc.then(&bp.monodromy);
        }
        acc
    }

    /// Checks the surface-group relation, transitivity, label distinctness
    /// and padding flags; violations are reported as data.
    pub fn validate(&self) -> Result<(), CoverViolation> {
        for (i, bp) in self.branch_points.iter().enumerate() {
            for other in &self.branch_points[i + 1..] {
                if bp.label == other.label {
                    return Err(CoverViolation::DuplicateLabel {
                        label: bp.label.clone(),
                    });
                }
            }
            let is_id = bp.monodromy.is_identity();
            if is_id && !bp.padding {
                return Err(CoverViolation::IdentityNotPadded {
                    index: i,
                    label: bp.label.clone(),
                });
            }
            if !is_id && bp.padding {
                return Err(CoverViolation::PaddingNotIdentity {
                    index: i,
                    label: bp.label.clone(),
                });
            }
        }
        let residual = self.relation_product();
        if !residual.is_identity() {
            return Err(CoverViolation::Relation { residual });
        }
        let parts = orbits(&self.generators(), self.degree).expect("degrees checked at build");
        if parts.len() != 1 {
            return Err(CoverViolation::NotTransitive {
                orbit_count: parts.len(),
            });
        }
        Ok(())
    }

    /// Genus by Riemann-Hurwitz: `2 - 2g = n(2 - 2g0) - sum_j (n - #cycles(c_j))`.
    pub fn genus(&self) -> Result<usize, CoverError> {
        let n = self.degree as i64;
        let mut chi = n * (2 - 2 * self.base_genus as i64);
        for bp in &self.branch_points {
            chi -= n - bp.monodromy.cycles().len() as i64;
        }
        if chi > 2 || chi % 2 != 0 {
            return Err(CoverError::InconsistentCover { chi });
        }
        Ok(((2 - chi) / 2) as usize)
    }

    /// Cycle type of the monodromy at `q`: the local orders of the cover over
    /// that point.  A label the cover is unbranched at yields all ones.
    pub fn local_orders(&self, q: &BranchLabel) -> CycleType {
        match self.branch_point(q) {
            Some(bp) => bp.monodromy.cycle_type(),
            None => CycleType::from_lengths(vec![1; self.degree]),
        }
    }

    /// Least common multiple of the local orders over `q`.
    pub fn a_lcm(&self, q: &BranchLabel) -> u64 {
        self.local_orders(q)
            .lengths()
            .iter()
            .fold(1u64, |acc, &l| lcm(acc, l as u64))
    }

    /// A cover is regular (its deck group acts transitively on fibers)
    /// exactly when the monodromy group order equals the degree.
    pub fn is_regular(&self) -> bool {
        matches!(
            group_order_bounded(&self.generators(), self.degree, self.degree),
            Ok(GroupOrder::Exact(order)) if order as usize == self.degree
        )
    }
}

impl fmt::Debug for BranchedCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BranchedCover(degree {}, base genus {}",
            self.degree, self.base_genus
        )?;
        for bp in &self.branch_points {
            write!(f, ", {} -> {}", bp.label, bp.monodromy)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::BranchLabel as L;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn z3_cover() -> BranchedCover {
        BranchedCover::over_sphere(
            3,
            &[
                (L::integer(0), "(1 2 3)"),
                (L::integer(1), "(1 2 3)"),
                (L::Infinity, "(1 2 3)"),
            ],
        )
        .unwrap()
    }

    pub fn klein_cover() -> BranchedCover {
        BranchedCover::over_sphere(
            4,
            &[
                (L::integer(0), "(1 2)(3 4)"),
                (L::integer(1), "(1 3)(2 4)"),
                (L::Infinity, "(1 4)(2 3)"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn z3_cover_is_valid() {
        assert!(z3_cover().validate().is_ok());
    }

    #[test]
    fn relation_violation_reports_residual() {
        let bad = BranchedCover::new(
            0,
            3,
            Vec::new(),
            vec![
                BranchPoint::new(L::integer(0), Permutation::parse_cycles("(1 2 3)", 3).unwrap()),
                BranchPoint::new(L::integer(1), Permutation::parse_cycles("(1 2 3)", 3).unwrap()),
                BranchPoint::new(L::Infinity, Permutation::parse_cycles("(1 3 2)", 3).unwrap()),
            ],
        )
        .unwrap();
        match bad.validate() {
            Err(CoverViolation::Relation { residual }) => {
                assert!(!residual.is_identity());
            }
            other => panic!("expected relation violation, got {other:?}"),
        }
    }

    #[test]
    fn transitivity_violation_detected() {
        let bad = BranchedCover::new(
            0,
            4,
            Vec::new(),
            vec![
                BranchPoint::new(L::integer(0), Permutation::parse_cycles("(1 2)", 4).unwrap()),
                BranchPoint::new(L::integer(1), Permutation::parse_cycles("(3 4)", 4).unwrap()),
                BranchPoint::new(
                    L::Infinity,
                    Permutation::parse_cycles("(1 2)(3 4)", 4).unwrap(),
                ),
            ],
        )
        .unwrap();
        assert!(matches!(
            bad.validate(),
            Err(CoverViolation::NotTransitive { orbit_count: 2 })
        ));
    }

    #[test]
    fn unflagged_identity_rejected() {
        let bad = BranchedCover::new(
            0,
            2,
            Vec::new(),
            vec![
                BranchPoint::new(L::integer(0), Permutation::parse_cycles("(1 2)", 2).unwrap()),
                BranchPoint::new(L::integer(1), Permutation::identity(2)),
                BranchPoint::new(L::Infinity, Permutation::parse_cycles("(1 2)", 2).unwrap()),
            ],
        )
        .unwrap();
        assert!(matches!(
            bad.validate(),
            Err(CoverViolation::IdentityNotPadded { index: 1, .. })
        ));
    }

    #[test]
    fn genus_of_z3_cover_is_one() {
        assert_eq!(z3_cover().genus().unwrap(), 1);
    }

    #[test]
    fn genus_of_trivial_cover_is_base_genus() {
        for g0 in 0..3 {
            let handles = vec![
                (Permutation::identity(1), Permutation::identity(1));
                g0
            ];
            let c = BranchedCover::new(g0, 1, handles, Vec::new()).unwrap();
            c.validate().unwrap();
            assert_eq!(c.genus().unwrap(), g0);
            assert!(c.is_regular());
        }
    }

    /// The degree-16 regular cover with deck group Z4 x Z4, acting on itself
    /// by translations; branch monodromies are the translations by (1,0),
    /// (0,1) and (-1,-1).
    pub fn fermat_cover(n: usize) -> BranchedCover {
        let shift = |dx: usize, dy: usize| -> Permutation {
            Permutation::from_images(
                (0..n * n)
                    .map(|p| {
                        let (x, y) = (p % n, p / n);
                        (x + dx) % n + n * ((y + dy) % n)
                    })
                    .collect(),
            )
            .unwrap()
        };
        let cover = BranchedCover::new(
            0,
            n * n,
            Vec::new(),
            vec![
                BranchPoint::new(L::integer(0), shift(1, 0)),
                BranchPoint::new(L::integer(1), shift(0, 1)),
                BranchPoint::new(L::Infinity, shift(n - 1, n - 1)),
            ],
        )
        .unwrap();
        cover.validate().unwrap();
        cover
    }

    #[test]
    fn genus_of_fermat_four_rep_is_three() {
        let c = fermat_cover(4);
        assert_eq!(c.degree(), 16);
        for bp in c.branch_points() {
            assert_eq!(bp.monodromy.cycle_type().lengths(), &[4, 4, 4, 4]);
        }
        assert_eq!(c.genus().unwrap(), 3);
        assert!(c.is_regular());
    }

    #[test]
    fn local_orders_and_lcm() {
        // Transitive degree-6 constellation with types (3,1,1,1)/(2,2,2)/(6),
        // the shape of the first map in the not-necessary-conditions example.
        let s0 = Permutation::parse_cycles("(1 2 3)", 6).unwrap();
        let s1 = Permutation::parse_cycles("(1 4)(2 5)(3 6)", 6).unwrap();
        let s_inf = s0.then(&s1).inverse();
        let c = BranchedCover::new(
            0,
            6,
            Vec::new(),
            vec![
                BranchPoint::new(L::integer(0), s0),
                BranchPoint::new(L::integer(1), s1),
                BranchPoint::new(L::Infinity, s_inf),
            ],
        )
        .unwrap();
        c.validate().unwrap();
        assert_eq!(c.local_orders(&L::integer(0)).lengths(), &[3, 1, 1, 1]);
        assert_eq!(c.local_orders(&L::Infinity).lengths(), &[6]);
        assert_eq!(c.a_lcm(&L::integer(0)), 3);
        assert_eq!(c.a_lcm(&L::Infinity), 6);
        assert_eq!(c.a_lcm(&L::integer(7)), 1);
        assert_eq!(
            c.local_orders(&L::named("elsewhere")).lengths(),
            &[1, 1, 1, 1, 1, 1]
        );
        assert!(!c.is_regular());
        assert!(z3_cover().is_regular());
        assert!(klein_cover().is_regular());
    }

    #[test]
    fn local_orders_sum_to_degree() {
        let c = fermat_cover(3);
        for bp in c.branch_points() {
            assert_eq!(c.local_orders(&bp.label).degree(), c.degree());
        }
    }

    #[test]
    fn riemann_hurwitz_parity_on_random_valid_covers() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let degree = rng.gen_range(1..=9);
            let base_genus = rng.gen_range(0..=2);
            let c = crate::sample::random_cover(&mut rng, degree, base_genus, 4);
            c.validate().unwrap();
            // genus() errors exactly when chi is odd or positive beyond 2;
            // valid covers always pass.
            let g = c.genus().unwrap();
            if c.branch_points().iter().all(|bp| bp.padding) && c.degree() == 1 {
                assert_eq!(g, base_genus);
            }
        }
    }

    #[test]
    fn regular_covers_have_uniform_local_orders() {
        for c in [z3_cover(), klein_cover(), fermat_cover(3), fermat_cover(4)] {
            assert!(c.is_regular());
            for bp in c.branch_points() {
                let lengths = bp.monodromy.cycle_type();
                let first = lengths.lengths()[0];
                assert!(lengths.lengths().iter().all(|&l| l == first));
            }
        }
    }
}
