//! Dessins d'enfants as permutation pairs on edge labels.
//!
//! A dessin is a bipartite map stored as rotations `sigma0` (black vertices)
//! and `sigma1` (white vertices) acting transitively on the edges;
//! `sigma_inf = (sigma0 * sigma1)^{-1}` describes the faces, whose degrees
//! are its cycle lengths.  Dessins correspond to Belyi pairs (covers of the
//! sphere branched inside {0, 1, inf}), and fiber products of dessins are
//! computed through that correspondence.

use thiserror::Error;

use crate::cover::{BranchPoint, BranchedCover, CoverError};
use crate::fiber::{self, FiberError};
use crate::label::BranchLabel;
use crate::perm::{orbits, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DessinError {
    #[error("edge permutations do not act transitively: {orbit_count} orbits")]
    NotTransitive { orbit_count: usize },
    #[error("degree mismatch between sigma0 ({0}) and sigma1 ({1})")]
    DegreeMismatch(usize, usize),
    #[error("not a Belyi pair: branch value {0} lies outside {{0, 1, inf}}")]
    NotABelyiPair(BranchLabel),
    #[error("not a Belyi pair: base genus is {0}, expected 0")]
    PositiveBaseGenus(usize),
    #[error("branch list is not in the order 0, 1, inf; the face permutation is ambiguous")]
    NonCanonicalBranchOrder,
    #[error("inconsistent dessin: Euler characteristic {0} is not of the form 2-2g")]
    InconsistentDessin(i64),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Fiber(#[from] FiberError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dessin {
    sigma0: Permutation,
    sigma1: Permutation,
}

/// Sorted degree lists at black vertices, white vertices and faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valence {
    pub blacks: Vec<usize>,
    pub whites: Vec<usize>,
    pub faces: Vec<usize>,
}

/// Outcome of the dessin-level irreducibility test: coprime edge counts, or
/// coprime lcm's of black, white and face degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Teo2Report {
    pub cond1: bool,
    pub cond2: bool,
    pub predicted_single_dessin: bool,
}

impl Dessin {
    pub fn new(sigma0: Permutation, sigma1: Permutation) -> Result<Self, DessinError> {
        if sigma0.degree() != sigma1.degree() {
            return Err(DessinError::DegreeMismatch(
                sigma0.degree(),
                sigma1.degree(),
            ));
        }
        let parts = orbits(&[sigma0.clone(), sigma1.clone()], sigma0.degree())
            .expect("degrees checked above");
        if parts.len() != 1 {
            return Err(DessinError::NotTransitive {
                orbit_count: parts.len(),
            });
        }
        Ok(Dessin { sigma0, sigma1 })
    }

    /// Number of edges.
    pub fn edges(&self) -> usize {
        self.sigma0.degree()
    }

    pub fn sigma0(&self) -> &Permutation {
        &self.sigma0
    }

    pub fn sigma1(&self) -> &Permutation {
        &self.sigma1
    }

    pub fn sigma_inf(&self) -> Permutation {
        self.sigma0.then(&self.sigma1).inverse()
    }

    pub fn valence(&self) -> Valence {
        Valence {
            blacks: self.sigma0.cycle_type().ascending(),
            whites: self.sigma1.cycle_type().ascending(),
            faces: self.sigma_inf().cycle_type().ascending(),
        }
    }

    /// Genus from Euler's formula `2 - 2g = alpha + beta + gamma - n`.
    pub fn euler_genus(&self) -> Result<usize, DessinError> {
        let v = self.valence();
        let chi = (v.blacks.len() + v.whites.len() + v.faces.len()) as i64 - self.edges() as i64;
        if chi > 2 || chi % 2 != 0 {
            return Err(DessinError::InconsistentDessin(chi));
        }
        Ok(((2 - chi) / 2) as usize)
    }

    /// The corresponding Belyi cover, branched over 0, 1, inf in that order
    /// (identity entries flagged as padding).
    pub fn to_cover(&self) -> BranchedCover {
        let n = self.edges();
        let entry = |label: BranchLabel, p: Permutation| {
            let padding = p.is_identity();
            BranchPoint {
                label,
                monodromy: p,
                padding,
            }
        };
        let cover = BranchedCover::new(
            0,
            n,
            Vec::new(),
            vec![
                entry(BranchLabel::integer(0), self.sigma0.clone()),
                entry(BranchLabel::integer(1), self.sigma1.clone()),
                entry(BranchLabel::Infinity, self.sigma_inf()),
            ],
        )
        .expect("dessin data has one degree");
        debug_assert!(cover.validate().is_ok());
        cover
    }

    /// Reads a dessin off a Belyi cover: base genus 0 and branch set inside
    /// {0, 1, inf} after discarding padding.  The branch list must respect
    /// the canonical 0, 1, inf loop order so that the face permutation is
    /// `(sigma0 * sigma1)^{-1}`.
    pub fn from_cover(cover: &BranchedCover) -> Result<Self, DessinError> {
        if cover.base_genus() != 0 {
            return Err(DessinError::PositiveBaseGenus(cover.base_genus()));
        }
        let allowed = [
            BranchLabel::integer(0),
            BranchLabel::integer(1),
            BranchLabel::Infinity,
        ];
        for bp in cover.branch_points() {
            if !bp.padding && !allowed.contains(&bp.label) {
                return Err(DessinError::NotABelyiPair(bp.label.clone()));
            }
        }
        let n = cover.degree();
        let at = |label: &BranchLabel| -> Permutation {
            cover
                .branch_point(label)
                .map(|bp| bp.monodromy.clone())
                .unwrap_or_else(|| Permutation::identity(n))
        };
        let sigma0 = at(&allowed[0]);
        let sigma1 = at(&allowed[1]);
        let sigma_inf = at(&allowed[2]);
        if !sigma0.then(&sigma1).then(&sigma_inf).is_identity() {
            return Err(DessinError::NonCanonicalBranchOrder);
        }
        Dessin::new(sigma0, sigma1)
    }
}

/// The dessin-level restatement of the irreducibility criteria: `A, B, C`
/// are the lcm's of black, white and face degrees.
pub fn teo2_check(d1: &Dessin, d2: &Dessin) -> Teo2Report {
    let cond1 = num::integer::gcd(d1.edges(), d2.edges()) == 1;
    let lcm_of = |v: &[usize]| v.iter().fold(1u64, |acc, &x| num::integer::lcm(acc, x as u64));
    let (v1, v2) = (d1.valence(), d2.valence());
    let cond2 = num::integer::gcd(lcm_of(&v1.blacks), lcm_of(&v2.blacks)) == 1
        && num::integer::gcd(lcm_of(&v1.whites), lcm_of(&v2.whites)) == 1
        && num::integer::gcd(lcm_of(&v1.faces), lcm_of(&v2.faces)) == 1;
    Teo2Report {
        cond1,
        cond2,
        predicted_single_dessin: cond1 || cond2,
    }
}

/// Fiber product of two dessins: converts to Belyi covers, decomposes, and
/// converts each component back.  Base genus 0 guarantees connectivity, so
/// the criteria of [`teo2_check`] predict when the result is one dessin.
pub fn dessin_fiber_product(d1: &Dessin, d2: &Dessin) -> Result<Vec<Dessin>, DessinError> {
    let dec = fiber::decompose(&d1.to_cover(), &d2.to_cover())?;
    dec.components
        .iter()
        .map(|c| Dessin::from_cover(&c.cover))
        .collect()
}
