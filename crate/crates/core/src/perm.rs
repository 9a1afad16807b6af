//! Permutation algebra: cycle-notation parsing, orbit computation, bounded
//! group enumeration and simultaneous conjugacy of permutation tuples.
//!
//! Points are 0-based internally and 1-based in every human-facing string.
//! Composition applies the left factor first: `(p * q)(x) = q(p(x))`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num::integer::lcm;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("malformed cycle expression: {0}")]
    MalformedCycle(String),
    #[error("symbol {symbol} out of range 1..={degree}")]
    SymbolOutOfRange { symbol: usize, degree: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("representation lists have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("images do not form a bijection: value {0} repeated or missing")]
    NotBijective(usize),
}

/// A permutation of `{0..n-1}` stored by its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from an image table (`images[x]` is the image of
    /// `x`, 0-based), rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || seen[y] {
                return Err(PermError::NotBijective(y + 1));
            }
            seen[y] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of degree `n` from 0-based disjoint cycles.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(PermError::SymbolOutOfRange {
                        symbol: x + 1,
                        degree,
                    });
                }
                if seen[x] {
                    return Err(PermError::MalformedCycle(format!(
                        "symbol {} appears twice",
                        x + 1
                    )));
                }
                seen[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses disjoint-cycle notation with 1-based symbols, e.g. `"(1 2 3)(4 5)"`.
    /// The empty string is the identity; points not mentioned are fixed.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut chars = text.chars().peekable();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
            } else if c == '(' {
                if current.is_some() {
                    return Err(PermError::MalformedCycle("nested '('".into()));
                }
                current = Some(Vec::new());
                chars.next();
            } else if c == ')' {
                match current.take() {
                    Some(cycle) if !cycle.is_empty() => cycles.push(cycle),
                    _ => return Err(PermError::MalformedCycle("empty cycle '()'".into())),
                }
                chars.next();
            } else if c.is_ascii_digit() {
                let cycle = current
                    .as_mut()
                    .ok_or_else(|| PermError::MalformedCycle("number outside '(...)'".into()))?;
                let mut value = 0usize;
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        value = value
                            .saturating_mul(10)
                            .saturating_add(d.to_digit(10).unwrap() as usize);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if value == 0 || value > degree {
                    return Err(PermError::SymbolOutOfRange {
                        symbol: value,
                        degree,
                    });
                }
                cycle.push(value - 1);
            } else {
                return Err(PermError::MalformedCycle(format!(
                    "unexpected character {c:?}"
                )));
            }
        }
        if current.is_some() {
            return Err(PermError::MalformedCycle("unclosed '('".into()));
        }
        Self::from_cycles(&cycles, degree)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Left-first product: `self.then(q)` maps `x` to `q(self(x))`.
    pub fn then(&self, q: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), q.degree());
        Permutation {
            images: self.images.iter().map(|&y| q.images[y]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    /// Conjugate `g * self * g^{-1}` in the left-first convention,
    /// i.e. the map `x -> g^{-1}(self(g(x)))`.
    pub fn conjugated_by(&self, g: &Permutation) -> Permutation {
        g.then(self).then(&g.inverse())
    }

    /// Commutator `[a, b] = a * b * a^{-1} * b^{-1}`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.then(b).then(&a.inverse()).then(&b.inverse())
    }

    /// Disjoint cycles (including fixed points), each rotated to start at its
    /// least element, listed by least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_lengths(self.cycles().iter().map(|c| c.len()).collect())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl fmt::Display for Permutation {
    /// 1-based disjoint-cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            write!(f, "(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Multiset of cycle lengths, stored in descending order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    lengths: Vec<usize>,
}

impl CycleType {
    pub fn from_lengths(mut lengths: Vec<usize>) -> Self {
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { lengths }
    }

    /// Lengths in descending order.
    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Lengths in ascending order (the order valence lists use).
    pub fn ascending(&self) -> Vec<usize> {
        let mut v = self.lengths.clone();
        v.sort_unstable();
        v
    }

    /// Sum of the lengths, i.e. the degree of the underlying permutation.
    pub fn degree(&self) -> usize {
        self.lengths.iter().sum()
    }

    pub fn lcm(&self) -> u64 {
        self.lengths.iter().fold(1u64, |acc, &l| lcm(acc, l as u64))
    }

    pub fn all_ones(&self) -> bool {
        self.lengths.iter().all(|&l| l == 1)
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleType{self}")
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, l) in self.lengths.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

fn check_degrees(generators: &[Permutation], degree: usize) -> Result<(), PermError> {
    for g in generators {
        if g.degree() != degree {
            return Err(PermError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    Ok(())
}

/// Orbits of the group generated by `generators` on `{0..degree-1}`.
/// Each orbit is sorted ascending and orbits are listed by least element.
pub fn orbits(generators: &[Permutation], degree: usize) -> Result<Vec<Vec<usize>>, PermError> {
    check_degrees(generators, degree)?;
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    Ok(out)
}

/// Outcome of [`group_order_bounded`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOrder {
    Exact(u64),
    ExceedsCap,
}

/// Order of the group generated by `generators`, computed by breadth-first
/// closure under generator multiplication, or [`GroupOrder::ExceedsCap`] as
/// soon as more than `cap` elements have been found.
pub fn group_order_bounded(
    generators: &[Permutation],
    degree: usize,
    cap: usize,
) -> Result<GroupOrder, PermError> {
    check_degrees(generators, degree)?;
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(identity.images.clone());
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = p.then(g);
            if !seen.contains(&q.images) {
                seen.insert(q.images.clone());
                if seen.len() > cap {
                    return Ok(GroupOrder::ExceedsCap);
                }
                queue.push_back(q);
            }
        }
    }
    Ok(GroupOrder::Exact(seen.len() as u64))
}

/// Searches for `g` with `g * a_i * g^{-1} = b_i` for all `i` (left-first
/// products), by backtracking on point images with consistency propagation.
///
/// The search assigns the least unresolved point first and tries candidate
/// images in increasing order, so the result is deterministic; in particular
/// the identity is returned whenever it is a valid conjugator.
pub fn simultaneous_conjugator(
    rep_a: &[Permutation],
    rep_b: &[Permutation],
    degree: usize,
) -> Result<Option<Permutation>, PermError> {
    if rep_a.len() != rep_b.len() {
        return Err(PermError::LengthMismatch(rep_a.len(), rep_b.len()));
    }
    check_degrees(rep_a, degree)?;
    check_degrees(rep_b, degree)?;
    for (a, b) in rep_a.iter().zip(rep_b) {
        if a.cycle_type() != b.cycle_type() {
            return Ok(None);
        }
    }
    let a_inv: Vec<Permutation> = rep_a.iter().map(Permutation::inverse).collect();
    let b_inv: Vec<Permutation> = rep_b.iter().map(Permutation::inverse).collect();

    // g * a * g^{-1} = b  <=>  a(g(x)) = g(b(x)) for all x, so a fixed value
    // g(x) = y forces g(b(x)) = a(y) and g(b^{-1}(x)) = a^{-1}(y).
    const UNSET: usize = usize::MAX;
    let mut fwd = vec![UNSET; degree];
    let mut bwd = vec![UNSET; degree];

    fn propagate(
        x0: usize,
        y0: usize,
        fwd: &mut [usize],
        bwd: &mut [usize],
        rep_a: &[Permutation],
        rep_b: &[Permutation],
        a_inv: &[Permutation],
        b_inv: &[Permutation],
        trail: &mut Vec<usize>,
    ) -> bool {
        const UNSET: usize = usize::MAX;
        let mut queue = VecDeque::from([(x0, y0)]);
        while let Some((x, y)) = queue.pop_front() {
            if fwd[x] != UNSET {
                if fwd[x] != y {
                    return false;
                }
                continue;
            }
            if bwd[y] != UNSET {
                return false;
            }
            fwd[x] = y;
            bwd[y] = x;
            trail.push(x);
            for i in 0..rep_a.len() {
                queue.push_back((rep_b[i].image(x), rep_a[i].image(y)));
                queue.push_back((b_inv[i].image(x), a_inv[i].image(y)));
            }
        }
        true
    }

    fn search(
        fwd: &mut Vec<usize>,
        bwd: &mut Vec<usize>,
        rep_a: &[Permutation],
        rep_b: &[Permutation],
        a_inv: &[Permutation],
        b_inv: &[Permutation],
    ) -> bool {
        const UNSET: usize = usize::MAX;
        let x = match fwd.iter().position(|&y| y == UNSET) {
            Some(x) => x,
            None => return true,
        };
        for y in 0..fwd.len() {
            if bwd[y] != UNSET {
                continue;
            }
            let mut trail = Vec::new();
            if propagate(x, y, fwd, bwd, rep_a, rep_b, a_inv, b_inv, &mut trail)
                && search(fwd, bwd, rep_a, rep_b, a_inv, b_inv)
            {
                return true;
            }
            for x in trail {
                bwd[fwd[x]] = UNSET;
                fwd[x] = UNSET;
            }
        }
        false
    }

    if search(&mut fwd, &mut bwd, rep_a, rep_b, &a_inv, &b_inv) {
        Ok(Some(Permutation { images: fwd }))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    /// Independent closure oracle: plain set-growing without the BFS queue.
    fn brute_force_closure(generators: &[Permutation], degree: usize) -> usize {
        let mut elements = vec![Permutation::identity(degree)];
        loop {
            let mut grew = false;
            let snapshot = elements.clone();
            for e in &snapshot {
                for g in generators {
                    let q = e.then(g);
                    if !elements.contains(&q) {
                        elements.push(q);
                        grew = true;
                    }
                }
            }
            if !grew {
                return elements.len();
            }
        }
    }

    fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(rng);
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn parse_basic_cycle() {
        let q = p("(1 2 3)", 4);
        assert_eq!(q.images(), &[1, 2, 0, 3]);
    }

    #[test]
    fn parse_empty_is_identity() {
        assert!(p("", 5).is_identity());
        assert!(p("   ", 5).is_identity());
    }

    #[test]
    fn parse_rejects_repeated_symbol() {
        assert!(matches!(
            Permutation::parse_cycles("(1 2 2)", 3),
            Err(PermError::MalformedCycle(_))
        ));
        // Repetition across cycles is rejected too: cycles must be disjoint.
        assert!(matches!(
            Permutation::parse_cycles("(1 2)(1 3)", 3),
            Err(PermError::MalformedCycle(_))
        ));
    }

    #[test]
    fn parse_rejects_out_of_range() {
        assert!(matches!(
            Permutation::parse_cycles("(1 5)", 4),
            Err(PermError::SymbolOutOfRange { symbol: 5, .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("(0 1)", 4),
            Err(PermError::SymbolOutOfRange { symbol: 0, .. })
        ));
    }

    #[test]
    fn composition_is_left_first() {
        let a = p("(1 2)", 3);
        let b = p("(2 3)", 3);
        // (a*b)(1) = b(a(1)) = b(2) = 3.
        assert_eq!(a.then(&b).image(0), 2);
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(p("(1 2 3 4)", 6).cycle_type().lengths(), &[4, 1, 1]);
        assert_eq!(
            Permutation::identity(5).cycle_type().lengths(),
            &[1, 1, 1, 1, 1]
        );
        assert_eq!(p("(1 4)(2 6)(3 5)", 6).cycle_type().lengths(), &[2, 2, 2]);
    }

    #[test]
    fn orbit_of_identity_is_singletons() {
        let parts = orbits(&[Permutation::identity(4)], 4).unwrap();
        assert_eq!(parts, vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    /// Pairs two permutations into the product action on n1*n2 points with
    /// linear index i + n1*j; the same layout the fiber engine uses.
    fn pair_perm(s: &Permutation, t: &Permutation) -> Permutation {
        let (n1, n2) = (s.degree(), t.degree());
        let mut images = vec![0; n1 * n2];
        for j in 0..n2 {
            for i in 0..n1 {
                images[i + n1 * j] = s.image(i) + n1 * t.image(j);
            }
        }
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn product_action_orbits_of_coprime_degrees() {
        // Degree-3 cyclic Belyi cover paired with the Klein four-group cover:
        // the 12-point product action is transitive.
        let z3 = p("(1 2 3)", 3);
        let gens = vec![
            pair_perm(&z3, &p("(1 2)(3 4)", 4)),
            pair_perm(&z3, &p("(1 3)(2 4)", 4)),
            pair_perm(&z3, &p("(1 4)(2 3)", 4)),
        ];
        let parts = orbits(&gens, 12).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].len(), 12);
    }

    fn translation(n: usize, t: i64) -> Permutation {
        let shift = t.rem_euclid(n as i64) as usize;
        Permutation::from_images((0..n).map(|x| (x + shift) % n).collect()).unwrap()
    }

    #[test]
    fn product_action_orbits_of_cyclic_6_4() {
        let gens = vec![
            pair_perm(&translation(6, 1), &translation(4, 1)),
            pair_perm(&translation(6, 1), &translation(4, 1)),
            pair_perm(&translation(6, -2), &translation(4, -2)),
        ];
        let parts = orbits(&gens, 24).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|o| o.len() == 12));
    }

    #[test]
    fn orbits_rejects_degree_mismatch() {
        let gens = vec![Permutation::identity(3), Permutation::identity(4)];
        assert!(matches!(
            orbits(&gens, 3),
            Err(PermError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn group_order_of_cyclic_group() {
        let gens = vec![translation(7, 1)];
        assert_eq!(
            group_order_bounded(&gens, 7, 100).unwrap(),
            GroupOrder::Exact(7)
        );
    }

    #[test]
    fn group_order_of_klein_four_group() {
        let gens = vec![p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)];
        assert_eq!(
            group_order_bounded(&gens, 4, 100).unwrap(),
            GroupOrder::Exact(4)
        );
    }

    #[test]
    fn group_order_exceeding_degree() {
        // A transitive degree-6 constellation with cycle types
        // (3,1,1,1)/(2,2,2)/(6): its monodromy group is strictly larger than
        // the degree, so the order-equals-degree regularity test fails.
        let s0 = p("(1 2 3)", 6);
        let s1 = p("(1 4)(2 5)(3 6)", 6);
        let s_inf = s0.then(&s1).inverse();
        assert_eq!(s_inf.cycle_type().lengths(), &[6]);
        let gens = vec![s0, s1, s_inf];
        match group_order_bounded(&gens, 6, 100).unwrap() {
            GroupOrder::Exact(order) => {
                assert!(order > 6);
                assert_eq!(order as usize, brute_force_closure(&gens, 6));
            }
            GroupOrder::ExceedsCap => {
                assert!(brute_force_closure(&gens, 6) > 100);
            }
        }
    }

    #[test]
    fn group_order_cap_signal() {
        let gens = vec![translation(12, 1)];
        assert_eq!(
            group_order_bounded(&gens, 12, 5).unwrap(),
            GroupOrder::ExceedsCap
        );
    }

    #[test]
    fn conjugator_of_equal_representations_is_identity() {
        let rep = vec![p("(1 2 3)", 5), p("(4 5)", 5)];
        let g = simultaneous_conjugator(&rep, &rep, 5).unwrap().unwrap();
        assert!(g.is_identity());
    }

    #[test]
    fn conjugator_found_for_relabelled_representation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = 8;
            let rep_a = vec![random_perm(&mut rng, n), random_perm(&mut rng, n)];
            let h = random_perm(&mut rng, n);
            let rep_b: Vec<Permutation> =
                rep_a.iter().map(|a| a.conjugated_by(&h)).collect();
            let g = simultaneous_conjugator(&rep_a, &rep_b, n).unwrap().unwrap();
            for (a, b) in rep_a.iter().zip(&rep_b) {
                assert_eq!(&a.conjugated_by(&g), b);
            }
        }
    }

    #[test]
    fn conjugator_none_for_distinct_cycle_types() {
        let rep_a = vec![p("(1 2 3 4)", 4)];
        let rep_b = vec![p("(1 2)(3 4)", 4)];
        assert_eq!(simultaneous_conjugator(&rep_a, &rep_b, 4).unwrap(), None);
    }

    #[test]
    fn conjugator_none_agrees_with_exhaustive_search() {
        // Two non-conjugate pairs with equal per-position cycle types: the
        // first generates a transitive group, the second does not.
        let rep_a = vec![p("(1 2)", 4), p("(2 3)(1 4)", 4)];
        let rep_b = vec![p("(1 2)", 4), p("(1 2)(3 4)", 4)];
        let fast = simultaneous_conjugator(&rep_a, &rep_b, 4).unwrap();
        let brute = (0..4).permutations(4).find_map(|images| {
            let g = Permutation::from_images(images).unwrap();
            rep_a
                .iter()
                .zip(&rep_b)
                .all(|(a, b)| &a.conjugated_by(&g) == b)
                .then_some(g)
        });
        assert_eq!(fast.is_some(), brute.is_some());
        assert_eq!(fast, None);
    }

    proptest! {
        #[test]
        fn conjugation_preserves_cycle_type(seed in 0u64..500, n in 1usize..9) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = random_perm(&mut rng, n);
            let g = random_perm(&mut rng, n);
            prop_assert_eq!(q.conjugated_by(&g).cycle_type(), q.cycle_type());
        }

        #[test]
        fn orbits_invariant_under_reorder_and_inversion(seed in 0u64..200, n in 1usize..10) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let gens: Vec<Permutation> = (0..3).map(|_| random_perm(&mut rng, n)).collect();
            let base = orbits(&gens, n).unwrap();
            let mut reordered = gens.clone();
            reordered.reverse();
            reordered[0] = reordered[0].inverse();
            prop_assert_eq!(orbits(&reordered, n).unwrap(), base);
        }

        #[test]
        fn conjugator_matches_brute_force(seed in 0u64..150) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 5;
            let rep_a = vec![random_perm(&mut rng, n), random_perm(&mut rng, n)];
            let rep_b = vec![random_perm(&mut rng, n), random_perm(&mut rng, n)];
            let fast = simultaneous_conjugator(&rep_a, &rep_b, n).unwrap();
            if let Some(g) = &fast {
                for (a, b) in rep_a.iter().zip(&rep_b) {
                    prop_assert_eq!(&a.conjugated_by(g), b);
                }
            }
            let brute = (0..n).permutations(n).any(|images| {
                let g = Permutation::from_images(images).unwrap();
                rep_a.iter().zip(&rep_b).all(|(a, b)| &a.conjugated_by(&g) == b)
            });
            prop_assert_eq!(fast.is_some(), brute);
        }

        #[test]
        fn bounded_order_matches_brute_force(seed in 0u64..80, n in 1usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let gens: Vec<Permutation> = (0..2).map(|_| random_perm(&mut rng, n)).collect();
            let cap = (1..=n).product::<usize>();
            match group_order_bounded(&gens, n, cap).unwrap() {
                GroupOrder::Exact(order) => {
                    prop_assert_eq!(order as usize, brute_force_closure(&gens, n));
                }
                GroupOrder::ExceedsCap => prop_assert!(false, "order cannot exceed n!"),
            }
        }
    }
}
