//! Fiber products of two branched covers over a common base.
//!
//! Both covers are first aligned over the union of their branch sets (with
//! flagged identity padding), then their monodromies are paired into the
//! product action on `n1*n2` points.  Orbits of that action are the
//! irreducible components; each one is relabelled into a standalone cover and
//! its genus computed.  Pairs of simultaneous-critical cycles form the
//! singular-point catalog (each gluing `gcd` cones of the product action),
//! which also drives the connectivity graph.  The irreducibility criteria,
//! the `gcd` component-count bound, pairwise component isomorphism and the
//! Jacobian dimension identity are reported on top.

use std::collections::BTreeSet;
use std::fmt;

use num::integer::gcd;
use thiserror::Error;

use crate::cover::{BranchPoint, BranchedCover, CoverError};
use crate::label::BranchLabel;
use crate::perm::{orbits, simultaneous_conjugator, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiberError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("base genus mismatch: {0} vs {1}")]
    BaseGenusMismatch(usize, usize),
    #[error("shared branch labels {0} and {1} appear in opposite orders; no common loop ordering exists")]
    BranchOrderConflict(BranchLabel, BranchLabel),
    #[error("Jacobian dimension identity produced a negative value {0}")]
    NegativeJacobianDimension(i64),
}

impl From<crate::cover::CoverViolation> for FiberError {
    fn from(v: crate::cover::CoverViolation) -> Self {
        FiberError::Cover(CoverError::Invalid(v))
    }
}

/// A point `(i, j)` of the fiber product, `0`-based on both factors.
/// Its canonical linear index is `i + n1 * j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairPoint {
    pub i: usize,
    pub j: usize,
}

impl PairPoint {
    pub fn linear(&self, n1: usize) -> usize {
        self.i + n1 * self.j
    }

    pub fn from_linear(index: usize, n1: usize) -> Self {
        PairPoint {
            i: index % n1,
            j: index / n1,
        }
    }
}

impl fmt::Display for PairPoint {
    /// 1-based, matching cycle notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i + 1, self.j + 1)
    }
}

/// The permutation `(x, y) -> (s(x), t(y))` on `deg(s) * deg(t)` points
/// under the canonical linear index.
pub fn pair_permutation(s: &Permutation, t: &Permutation) -> Permutation {
    let n1 = s.degree();
    let n2 = t.degree();
    let mut images = vec![0; n1 * n2];
    for j in 0..n2 {
        let offset = n1 * t.image(j);
        for i in 0..n1 {
            images[i + n1 * j] = s.image(i) + offset;
        }
    }
    Permutation::from_images(images).expect("pairing bijections is a bijection")
}

/// One irreducible component: an orbit of the product action together with
/// the cover structure it inherits.
#[derive(Debug, Clone)]
pub struct FiberComponent {
    /// Sorted linear indices of the orbit.
    pub orbit: Vec<usize>,
    /// The component as a standalone cover of the base, points relabelled to
    /// `0..orbit.len()` in orbit order.
    pub cover: BranchedCover,
    /// Degree of the projection to the first factor.
    pub d1: usize,
    /// Degree of the projection to the second factor.
    pub d2: usize,
    pub genus: usize,
}

/// One cone of a singular point: a cycle of the product action inside the
/// block of a simultaneous-critical cycle pair.
#[derive(Debug, Clone)]
pub struct Cone {
    /// Linear indices in traversal order, starting from the least.
    pub points: Vec<usize>,
    /// Index of the component owning this cone.
    pub component: usize,
}

/// A singular point of the fiber product: a pair of cycles of the two local
/// monodromies at the same branch value, both of length at least 2.  Locally
/// the fiber product is `gcd(n1, n2)` cones glued at a vertex; `gcd = 1`
/// points are disc-like but still recorded.
#[derive(Debug, Clone)]
pub struct SingularPoint {
    pub label: BranchLabel,
    /// The first cover's cycle (0-based points, least point first).
    pub cycle1: Vec<usize>,
    /// The second cover's cycle.
    pub cycle2: Vec<usize>,
    pub n1: usize,
    pub n2: usize,
    pub cone_count: usize,
    pub cones: Vec<Cone>,
}

impl SingularPoint {
    pub fn disc_like(&self) -> bool {
        self.cone_count == 1
    }
}

/// Evaluation of the irreducibility criteria: coprime degrees, or coprime
/// lcm's of local orders over every aligned branch value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriteriaReport {
    pub cond1: bool,
    pub cond2: bool,
    /// Per aligned label: lcm of local orders of each cover.
    pub a_values: Vec<(BranchLabel, u64, u64)>,
    /// `cond1 || cond2`; meaningful only when the fiber product is connected.
    pub predicted_irreducible: bool,
    pub actual_component_count: usize,
}

#[derive(Debug, Clone)]
pub struct FiberDecomposition {
    aligned1: BranchedCover,
    aligned2: BranchedCover,
    pub components: Vec<FiberComponent>,
    pub singular_points: Vec<SingularPoint>,
    /// Edges between components sharing the cones of one singular point.
    pub adjacency: Vec<(usize, usize)>,
    pub connected: bool,
    pub criteria: CriteriaReport,
    /// `gcd(n1, n2)`, the upper bound for the component count.
    pub bound: usize,
}

impl FiberDecomposition {
    pub fn aligned(&self) -> (&BranchedCover, &BranchedCover) {
        (&self.aligned1, &self.aligned2)
    }

    pub fn degree1(&self) -> usize {
        self.aligned1.degree()
    }

    pub fn degree2(&self) -> usize {
        self.aligned2.degree()
    }

    /// Component index owning a linear pair index.
    pub fn component_of(&self, linear: usize) -> usize {
        self.components
            .iter()
            .position(|c| c.orbit.binary_search(&linear).is_ok())
            .expect("orbits partition the pair points")
    }

    /// Multiset of orbit sizes, ascending.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.components.iter().map(|c| c.orbit.len()).collect();
        v.sort_unstable();
        v
    }

    /// Multiset of component genera, ascending.
    pub fn genera(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.components.iter().map(|c| c.genus).collect();
        v.sort_unstable();
        v
    }
}

/// Extends both covers over the union of their branch sets with flagged
/// identity padding, producing identical label lists.
///
/// The common order is a merge of the two branch lists: shared labels must
/// appear in the same relative order in both (otherwise no loop ordering
/// satisfies both product relations and an error is returned), and unshared
/// labels are interleaved canonically.  Inputs with canonically sorted branch
/// lists — every file this crate emits — align to the canonical sorted union.
pub fn align_branch_sets(
    c1: &BranchedCover,
    c2: &BranchedCover,
) -> Result<(BranchedCover, BranchedCover), FiberError> {
    if c1.base_genus() != c2.base_genus() {
        return Err(FiberError::BaseGenusMismatch(
            c1.base_genus(),
            c2.base_genus(),
        ));
    }
    let labels1: Vec<&BranchLabel> = c1.branch_points().iter().map(|bp| &bp.label).collect();
    let labels2: Vec<&BranchLabel> = c2.branch_points().iter().map(|bp| &bp.label).collect();
    let shared: Vec<&BranchLabel> = labels1
        .iter()
        .filter(|l| labels2.contains(l))
        .copied()
        .collect();

    let mut order: Vec<BranchLabel> = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < labels1.len() || j < labels2.len() {
        let next = if i == labels1.len() {
            j += 1;
            labels2[j - 1]
        } else if j == labels2.len() {
            i += 1;
            labels1[i - 1]
        } else {
            let (a, b) = (labels1[i], labels2[j]);
            if a == b {
                i += 1;
                j += 1;
                a
            } else {
                match (shared.contains(&a), shared.contains(&b)) {
                    (false, false) => {
                        if a <= b {
                            i += 1;
                            a
                        } else {
                            j += 1;
                            b
                        }
                    }
                    (false, true) => {
                        i += 1;
                        a
                    }
                    (true, false) => {
                        j += 1;
                        b
                    }
                    (true, true) => {
                        return Err(FiberError::BranchOrderConflict(a.clone(), b.clone()))
                    }
                }
            }
        };
        order.push(next.clone());
    }

    let extend = |c: &BranchedCover| -> Result<BranchedCover, FiberError> {
        let points = order
            .iter()
            .map(|label| match c.branch_point(label) {
                Some(bp) => bp.clone(),
                None => BranchPoint::padding(label.clone(), c.degree()),
            })
            .collect();
        Ok(BranchedCover::new(
            c.base_genus(),
            c.degree(),
            c.handles().to_vec(),
            points,
        )?)
    };
    Ok((extend(c1)?, extend(c2)?))
}

/// Generators of the product action on `n1*n2` pair points: handle pairs in
/// order, then one pair permutation per aligned branch position.
pub fn product_action(aligned1: &BranchedCover, aligned2: &BranchedCover) -> Vec<Permutation> {
    let mut gens = Vec::new();
    for ((a1, b1), (a2, b2)) in aligned1.handles().iter().zip(aligned2.handles()) {
        gens.push(pair_permutation(a1, a2));
        gens.push(pair_permutation(b1, b2));
    }
    for (bp1, bp2) in aligned1
        .branch_points()
        .iter()
        .zip(aligned2.branch_points())
    {
        gens.push(pair_permutation(&bp1.monodromy, &bp2.monodromy));
    }
    gens
}

fn restrict(p: &Permutation, orbit: &[usize], local_of: impl Fn(usize) -> usize) -> Permutation {
    let images = orbit.iter().map(|&x| local_of(p.image(x))).collect();
    Permutation::from_images(images).expect("orbit is invariant under the action")
}

/// `gcd(deg(c1), deg(c2))`: the component-count bound.
pub fn component_bound(c1: &BranchedCover, c2: &BranchedCover) -> usize {
    gcd(c1.degree(), c2.degree())
}

/// Full decomposition of the fiber product of two valid covers over the same
/// base: alignment, components with genera, singular catalog, connectivity,
/// criteria and the component bound.
pub fn decompose(
    c1: &BranchedCover,
    c2: &BranchedCover,
) -> Result<FiberDecomposition, FiberError> {
    c1.validate()?;
    c2.validate()?;
    let (aligned1, aligned2) = align_branch_sets(c1, c2)?;
    let (n1, n2) = (aligned1.degree(), aligned2.degree());
    let total = n1 * n2;

    let generators = product_action(&aligned1, &aligned2);
    let orbit_list = orbits(&generators, total).expect("product generators share one degree");

    let mut local = vec![usize::MAX; total];
    let mut owner = vec![usize::MAX; total];
    for (k, orbit) in orbit_list.iter().enumerate() {
        for (pos, &x) in orbit.iter().enumerate() {
            local[x] = pos;
            owner[x] = k;
        }
    }

    let mut components = Vec::with_capacity(orbit_list.len());
    for orbit in &orbit_list {
        let size = orbit.len();
        debug_assert!(size % n1 == 0 && size % n2 == 0);
        let handles = aligned1
            .handles()
            .iter()
            .zip(aligned2.handles())
            .map(|((a1, b1), (a2, b2))| {
                (
                    restrict(&pair_permutation(a1, a2), orbit, |x| local[x]),
                    restrict(&pair_permutation(b1, b2), orbit, |x| local[x]),
                )
            })
            .collect();
        let branch_points = aligned1
            .branch_points()
            .iter()
            .zip(aligned2.branch_points())
            .map(|(bp1, bp2)| {
                let p = restrict(
                    &pair_permutation(&bp1.monodromy, &bp2.monodromy),
                    orbit,
                    |x| local[x],
                );
                let padding = p.is_identity();
                BranchPoint {
                    label: bp1.label.clone(),
                    monodromy: p,
                    padding,
                }
            })
            .collect();
        let cover = BranchedCover::new(aligned1.base_genus(), size, handles, branch_points)?;
        cover
            .validate()
            .expect("orbit restriction of a valid product is valid");
        let genus = cover.genus()?;
        components.push(FiberComponent {
            orbit: orbit.clone(),
            cover,
            d1: size / n1,
            d2: size / n2,
            genus,
        });
    }

    let mut singular_points = Vec::new();
    for (bp1, bp2) in aligned1
        .branch_points()
        .iter()
        .zip(aligned2.branch_points())
    {
        let pair = pair_permutation(&bp1.monodromy, &bp2.monodromy);
        for cycle1 in bp1.monodromy.cycles() {
            if cycle1.len() < 2 {
                continue;
            }
            for cycle2 in bp2.monodromy.cycles() {
                if cycle2.len() < 2 {
                    continue;
                }
                let mut block: Vec<usize> = cycle1
                    .iter()
                    .flat_map(|&i| cycle2.iter().map(move |&j| i + n1 * j))
                    .collect();
                block.sort_unstable();
                let mut seen: BTreeSet<usize> = BTreeSet::new();
                let mut cones = Vec::new();
                for &start in &block {
                    if seen.contains(&start) {
                        continue;
                    }
                    let mut points = vec![start];
                    seen.insert(start);
                    let mut x = pair.image(start);
                    while x != start {
                        seen.insert(x);
                        points.push(x);
                        x = pair.image(x);
                    }
                    let component = owner[start];
                    cones.push(Cone { points, component });
                }
                let (a, b) = (cycle1.len(), cycle2.len());
                let cone_count = gcd(a, b);
                debug_assert_eq!(cones.len(), cone_count);
                debug_assert!(cones.iter().all(|c| c.points.len() == num::integer::lcm(a, b)));
                singular_points.push(SingularPoint {
                    label: bp1.label.clone(),
                    cycle1: cycle1.clone(),
                    cycle2: cycle2.clone(),
                    n1: a,
                    n2: b,
                    cone_count,
                    cones,
                });
            }
        }
    }

    let mut edge_set: BTreeSet<(usize, usize)> = BTreeSet::new();
    for sp in &singular_points {
        for (a, cone_a) in sp.cones.iter().enumerate() {
            for cone_b in &sp.cones[a + 1..] {
                if cone_a.component != cone_b.component {
                    let (lo, hi) = (
                        cone_a.component.min(cone_b.component),
                        cone_a.component.max(cone_b.component),
                    );
                    edge_set.insert((lo, hi));
                }
            }
        }
    }
    let adjacency: Vec<(usize, usize)> = edge_set.into_iter().collect();
    let connected = graph_connected(components.len(), &adjacency);

    let cond1 = gcd(n1, n2) == 1;
    let a_values: Vec<(BranchLabel, u64, u64)> = aligned1
        .branch_points()
        .iter()
        .map(|bp| {
            (
                bp.label.clone(),
                aligned1.a_lcm(&bp.label),
                aligned2.a_lcm(&bp.label),
            )
        })
        .collect();
    let cond2 = a_values.iter().all(|(_, a1, a2)| gcd(*a1, *a2) == 1);
    let criteria = CriteriaReport {
        cond1,
        cond2,
        predicted_irreducible: cond1 || cond2,
        actual_component_count: components.len(),
        a_values,
    };

    let bound = gcd(n1, n2);
    assert!(
        components.len() <= bound,
        "component count {} exceeds the gcd bound {}",
        components.len(),
        bound
    );

    Ok(FiberDecomposition {
        aligned1,
        aligned2,
        components,
        singular_points,
        adjacency,
        connected,
        criteria,
        bound,
    })
}

fn graph_connected(nodes: usize, edges: &[(usize, usize)]) -> bool {
    if nodes <= 1 {
        return true;
    }
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; nodes];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == nodes
}

/// Criteria evaluation without keeping the rest of the decomposition.
pub fn criteria(c1: &BranchedCover, c2: &BranchedCover) -> Result<CriteriaReport, FiberError> {
    Ok(decompose(c1, c2)?.criteria)
}

/// The singular points of a decomposition (also embedded in it).
pub fn singular_catalog(dec: &FiberDecomposition) -> &[SingularPoint] {
    &dec.singular_points
}

/// Whether the glued singular surface is connected (also embedded).
pub fn connectivity(dec: &FiberDecomposition) -> bool {
    dec.connected
}

#[derive(Debug, Clone)]
pub struct IsomorphismWitness {
    pub from: usize,
    pub to: usize,
    pub conjugator: Permutation,
}

#[derive(Debug, Clone)]
pub struct IsomorphismReport {
    pub all_isomorphic: bool,
    /// Conjugators from component 0 to each other component (conjugacy is
    /// transitive, so these certify every pair).
    pub witnesses: Vec<IsomorphismWitness>,
    /// First pair found non-isomorphic, when any.
    pub failed: Option<(usize, usize)>,
}

/// Checks whether all components are isomorphic as covers, i.e. whether their
/// full monodromy tuples are simultaneously conjugate.
pub fn components_pairwise_isomorphic(dec: &FiberDecomposition) -> IsomorphismReport {
    let mut witnesses = Vec::new();
    if dec.components.len() <= 1 {
        return IsomorphismReport {
            all_isomorphic: true,
            witnesses,
            failed: None,
        };
    }
    let tuples: Vec<Vec<Permutation>> = dec
        .components
        .iter()
        .map(|c| c.cover.monodromy_tuple())
        .collect();
    for k in 1..dec.components.len() {
        if dec.components[k].orbit.len() != dec.components[0].orbit.len() {
            return IsomorphismReport {
                all_isomorphic: false,
                witnesses,
                failed: Some((0, k)),
            };
        }
        match simultaneous_conjugator(&tuples[0], &tuples[k], dec.components[0].orbit.len())
            .expect("component tuples share degree and length")
        {
            Some(conjugator) => witnesses.push(IsomorphismWitness {
                from: 0,
                to: k,
                conjugator,
            }),
            None => {
                return IsomorphismReport {
                    all_isomorphic: false,
                    witnesses,
                    failed: Some((0, k)),
                }
            }
        }
    }
    IsomorphismReport {
        all_isomorphic: true,
        witnesses,
        failed: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobianHypothesis {
    /// One of the covers is not regular.
    Regularity,
    /// The product action is not transitive.
    Transitivity,
    /// The fiber product has singular points.
    NonSingular,
}

impl fmt::Display for JacobianHypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            JacobianHypothesis::Regularity => "regularity",
            JacobianHypothesis::Transitivity => "transitivity",
            JacobianHypothesis::NonSingular => "non-singular",
        };
        write!(f, "{name}")
    }
}

/// Dimension bookkeeping for the isogeny `JC x JS0 ~ JS1 x JS2 x P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobianReport {
    pub g_component: usize,
    pub g_base: usize,
    pub g_cover1: usize,
    pub g_cover2: usize,
    /// `dim P = g_C + g0 - g1 - g2`.
    pub dim_p: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JacobianOutcome {
    Applicable(JacobianReport),
    NotApplicable(JacobianHypothesis),
}

/// The Jacobian dimension identity for the fiber product of two regular
/// covers whose product is transitive and non-singular; any failed hypothesis
/// is reported by name.
pub fn jacobian_report(
    c1: &BranchedCover,
    c2: &BranchedCover,
    dec: &FiberDecomposition,
) -> Result<JacobianOutcome, FiberError> {
    if !c1.is_regular() || !c2.is_regular() {
        return Ok(JacobianOutcome::NotApplicable(
            JacobianHypothesis::Regularity,
        ));
    }
    if dec.components.len() != 1 {
        return Ok(JacobianOutcome::NotApplicable(
            JacobianHypothesis::Transitivity,
        ));
    }
    if !dec.singular_points.is_empty() {
        return Ok(JacobianOutcome::NotApplicable(
            JacobianHypothesis::NonSingular,
        ));
    }
    let g_component = dec.components[0].genus;
    let g_base = c1.base_genus();
    let g_cover1 = c1.genus()?;
    let g_cover2 = c2.genus()?;
    let dim = g_component as i64 + g_base as i64 - g_cover1 as i64 - g_cover2 as i64;
    if dim < 0 {
        return Err(FiberError::NegativeJacobianDimension(dim));
    }
    Ok(JacobianOutcome::Applicable(JacobianReport {
        g_component,
        g_base,
        g_cover1,
        g_cover2,
        dim_p: dim as usize,
    }))
}
