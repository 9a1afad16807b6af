//! Numerical monodromy of rational self-maps of the sphere.
//!
//! The exact layer computes critical values and their local multiplicity
//! data from the coefficients (derivative, gcd and square-free decomposition
//! over the Gaussian rationals).  The numeric layer tracks the fiber around
//! one loop per finite critical value — lassos from a common base point,
//! composed counterclockwise by argument as seen from the base point — and
//! the loop around infinity is defined as the inverse of their product, so
//! the surface-group relation holds by construction.  Every permutation's
//! cycle type is then checked against the exact multiplicity oracle: the
//! final output is exact combinatorics, floats never leak downstream.
//!
//! The base point sits on a large circle, by preference on the positive
//! imaginary axis.  Maps with all-real critical values (the common case)
//! therefore see their loops ordered by ascending real part, which is the
//! canonical label order, and any two such maps are tracked along loop
//! systems that agree on shared branch values.

mod poly;
mod roots;
mod track;

pub use poly::Poly;
pub use roots::RootError;
pub use track::{LoopPath, SpherePoint, TrackedFiber, TrackerConfig, TrackError};

use num::complex::Complex64;
use num::{BigInt, BigRational, Zero};
use thiserror::Error;

use crate::cover::{BranchPoint, BranchedCover, CoverViolation};
use crate::fiber::{self, FiberDecomposition, FiberError};
use crate::gauss::GaussianRational;
use crate::label::BranchLabel;
use crate::perm::{CycleType, Permutation};

/// Degree cap for v1; far above the corpus but below anything that would
/// need certified arithmetic.
pub const MAX_DEGREE: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MapError {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("map is constant after reduction")]
    ConstantMap,
    #[error("degree {0} exceeds the supported cap {MAX_DEGREE}")]
    DegreeCap(usize),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MonodromyError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("critical values {0} and {1} are closer than the working resolution")]
    ResolutionFailure(Complex64, Complex64),
    #[error(transparent)]
    Tracking(#[from] TrackError),
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error("monodromy inconsistency: {0}")]
    Inconsistent(String),
    #[error("total ramification {found} does not match 2*deg-2 = {expected}")]
    RamificationMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Fiber(#[from] FiberError),
}

impl From<CoverViolation> for MonodromyError {
    fn from(v: CoverViolation) -> Self {
        MonodromyError::Inconsistent(format!("assembled cover is invalid: {v}"))
    }
}

/// Where a critical value sits, for loop planning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ValuePosition {
    Finite(Complex64),
    Infinity,
}

/// One critical value with its exact local multiplicity data.
#[derive(Debug, Clone)]
pub struct CriticalValue {
    pub label: BranchLabel,
    /// Local multiplicities of all preimages, summing to the degree.
    pub cycle_type: CycleType,
    pub position: ValuePosition,
    /// The exact coordinate when the value is Gaussian rational.
    pub exact: Option<GaussianRational>,
}

/// A rational self-map of the sphere with exact coefficients, reduced so
/// numerator and denominator are coprime and the denominator is monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMap {
    numer: Poly,
    denom: Poly,
    degree: usize,
}

impl RationalMap {
    pub fn new(numer: Poly, denom: Poly) -> Result<Self, MapError> {
        if denom.is_zero() {
            return Err(MapError::ZeroDenominator);
        }
        let g = numer.gcd(&denom);
        let (mut numer, mut denom) = if g.degree_or_zero() >= 1 {
            (numer.exact_div(&g), denom.exact_div(&g))
        } else {
            (numer, denom)
        };
        let lead_inv = denom.leading().unwrap().inverse().unwrap();
        numer = numer.scale(&lead_inv);
        denom = denom.scale(&lead_inv);
        let degree = numer.degree_or_zero().max(denom.degree_or_zero());
        if degree == 0 {
            return Err(MapError::ConstantMap);
        }
        if degree > MAX_DEGREE {
            return Err(MapError::DegreeCap(degree));
        }
        Ok(RationalMap {
            numer,
            denom,
            degree,
        })
    }

    /// Polynomial map from ascending integer coefficients.
    pub fn from_integer_coeffs(numer: &[i64], denom: &[i64]) -> Result<Self, MapError> {
        let build = |cs: &[i64]| {
            Poly::from_coeffs(cs.iter().map(|&c| GaussianRational::from_integer(c)).collect())
        };
        RationalMap::new(build(numer), build(denom))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn numer(&self) -> &Poly {
        &self.numer
    }

    pub fn denom(&self) -> &Poly {
        &self.denom
    }

    /// `f(inf)`: `None` means the map sends infinity to infinity.
    pub fn value_at_infinity(&self) -> Option<GaussianRational> {
        let (dp, dq) = (self.numer.degree_or_zero(), self.denom.degree_or_zero());
        if dp > dq {
            None
        } else if dp < dq {
            Some(GaussianRational::zero())
        } else {
            Some(self.numer.leading().unwrap().clone())
        }
    }

    /// Critical values with certified local multiplicity data.
    ///
    /// Values that are Gaussian rational are reported exactly (verified by
    /// multiplicity-counting of `P - vQ`); the rest are numerical clusters
    /// under symbolic labels `cv1, cv2, ...`.  The total ramification is
    /// checked against `2*deg - 2` exactly.
    pub fn critical_values(&self) -> Result<Vec<CriticalValue>, MonodromyError> {
        let n = self.degree;
        let p = &self.numer;
        let q = &self.denom;

        // Infinity: preimages are the roots of Q, plus infinity itself when
        // deg P > deg Q.
        let mut inf_mults = q.root_multiplicities();
        let (dp, dq) = (p.degree_or_zero(), q.degree_or_zero());
        if dp > dq {
            inf_mults.push(dp - dq);
        }
        let inf_type = CycleType::from_lengths(inf_mults);
        debug_assert_eq!(inf_type.degree(), n);

        // Finite critical points: roots of the Wronskian numerator of f',
        // with those lying over infinity (shared with Q) removed exactly.
        let wronskian = p.derivative().mul(q).sub(&p.mul(&q.derivative()));
        debug_assert!(!wronskian.is_zero(), "nonconstant map has nonzero W");
        let mut points: Vec<(Complex64, usize)> = Vec::new();
        for (mu, factor) in wronskian.square_free_decomposition() {
            let over_inf = factor.gcd(q);
            let finite_part = if over_inf.degree_or_zero() >= 1 {
                factor.exact_div(&over_inf)
            } else {
                factor
            };
            if finite_part.degree_or_zero() >= 1 {
                for root in roots::all_roots(&finite_part.to_complex_coeffs())? {
                    points.push((root, mu + 1));
                }
            }
        }

        let pc = p.to_complex_coeffs();
        let qc = q.to_complex_coeffs();
        let mut evals: Vec<(Complex64, usize)> = Vec::with_capacity(points.len());
        for (pt, e) in &points {
            let denom_val = roots::eval(&qc, *pt);
            if denom_val.norm() < 1e-250 {
                return Err(MonodromyError::Inconsistent(format!(
                    "critical point {pt} sits on a pole"
                )));
            }
            evals.push((roots::eval(&pc, *pt) / denom_val, *e));
        }

        let scale = evals
            .iter()
            .map(|(v, _)| v.norm())
            .fold(1.0f64, f64::max);
        let tol = 1e-6 * scale;

        // Union-find clustering of the critical values.
        let k = evals.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for i in 0..k {
            for j in i + 1..k {
                if (evals[i].0 - evals[j].0).norm() < tol {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        {
            let mut root_of: Vec<(usize, usize)> =
                (0..k).map(|i| (find(&mut parent, i), i)).collect();
            root_of.sort_unstable();
            let mut current_root = usize::MAX;
            for (root, i) in root_of {
                if root != current_root {
                    clusters.push(Vec::new());
                    current_root = root;
                }
                clusters.last_mut().unwrap().push(i);
            }
        }
        let centroid = |members: &[usize]| -> Complex64 {
            members.iter().map(|&i| evals[i].0).sum::<Complex64>() / members.len() as f64
        };
        clusters.sort_by(|a, b| {
            let (ca, cb) = (centroid(a), centroid(b));
            ca.re.total_cmp(&cb.re).then(ca.im.total_cmp(&cb.im))
        });

        // Exact candidates: snapped cluster centroids plus f(inf).
        let mut candidates: Vec<GaussianRational> = Vec::new();
        if let Some(v) = self.value_at_infinity() {
            candidates.push(v);
        }
        for members in &clusters {
            let c = centroid(members);
            if let (Some(re), Some(im)) = (
                snap_rational(c.re, 1_000_000, tol),
                snap_rational(c.im, 1_000_000, tol),
            ) {
                candidates.push(GaussianRational::new(re, im));
            }
        }
        candidates.dedup_by(|a, b| a == b);
        let mut seen: Vec<GaussianRational> = Vec::new();
        candidates.retain(|v| {
            if seen.contains(v) {
                false
            } else {
                seen.push(v.clone());
                true
            }
        });

        let mut consumed = vec![false; clusters.len()];
        let mut exact_values: Vec<CriticalValue> = Vec::new();
        for v in candidates {
            let h = p.sub(&q.scale(&v));
            if h.is_zero() {
                return Err(MonodromyError::Inconsistent(
                    "P - vQ vanished identically".into(),
                ));
            }
            let mut mults = h.root_multiplicities();
            if h.degree_or_zero() < n {
                mults.push(n - h.degree_or_zero());
            }
            let cycle_type = CycleType::from_lengths(mults);
            debug_assert_eq!(cycle_type.degree(), n);
            if cycle_type.lengths().iter().all(|&l| l < 2) {
                continue; // candidate was not actually critical
            }
            let position = v.to_complex_f64();
            for (ci, members) in clusters.iter().enumerate() {
                if (centroid(members) - position).norm() < 3.0 * tol {
                    consumed[ci] = true;
                }
            }
            exact_values.push(CriticalValue {
                label: BranchLabel::Point(v.clone()),
                cycle_type,
                position: ValuePosition::Finite(position),
                exact: Some(v),
            });
        }
        exact_values.sort_by(|a, b| {
            a.exact
                .as_ref()
                .unwrap()
                .lex_cmp(b.exact.as_ref().unwrap())
        });

        let mut symbolic: Vec<CriticalValue> = Vec::new();
        for (ci, members) in clusters.iter().enumerate() {
            if consumed[ci] {
                continue;
            }
            let mut lengths: Vec<usize> = members.iter().map(|&i| evals[i].1).collect();
            let covered: usize = lengths.iter().sum();
            if covered > n {
                let c = centroid(members);
                return Err(MonodromyError::ResolutionFailure(c, c));
            }
            lengths.extend(std::iter::repeat_n(1, n - covered));
            symbolic.push(CriticalValue {
                label: BranchLabel::named(format!("cv{}", symbolic.len() + 1)),
                cycle_type: CycleType::from_lengths(lengths),
                position: ValuePosition::Finite(centroid(members)),
                exact: None,
            });
        }

        let mut out = exact_values;
        out.extend(symbolic);
        if inf_type.lengths().iter().any(|&l| l >= 2) {
            out.push(CriticalValue {
                label: BranchLabel::Infinity,
                cycle_type: inf_type,
                position: ValuePosition::Infinity,
                exact: None,
            });
        }

        // Distinct values must stay separated by the working resolution.
        let finite_positions: Vec<Complex64> = out
            .iter()
            .filter_map(|cv| match cv.position {
                ValuePosition::Finite(z) => Some(z),
                ValuePosition::Infinity => None,
            })
            .collect();
        for (i, a) in finite_positions.iter().enumerate() {
            for b in &finite_positions[i + 1..] {
                if (a - b).norm() < 10.0 * tol {
                    return Err(MonodromyError::ResolutionFailure(*a, *b));
                }
            }
        }

        let total_ram: usize = out
            .iter()
            .map(|cv| {
                cv.cycle_type
                    .lengths()
                    .iter()
                    .map(|&l| l - 1)
                    .sum::<usize>()
            })
            .sum();
        if total_ram != 2 * n - 2 {
            return Err(MonodromyError::RamificationMismatch {
                expected: 2 * n - 2,
                found: total_ram,
            });
        }
        Ok(out)
    }

    pub fn monodromy(&self) -> Result<BranchedCover, MonodromyError> {
        self.monodromy_with(&TrackerConfig::default())
    }

    /// The monodromy constellation of the map as a validated genus-zero
    /// cover: one permutation per critical value, those at finite values
    /// obtained by fiber tracking, the one at infinity as the inverse of
    /// their ordered product, with every cycle type checked against the
    /// exact multiplicity oracle.
    pub fn monodromy_with(&self, config: &TrackerConfig) -> Result<BranchedCover, MonodromyError> {
        let n = self.degree;
        let values = self.critical_values()?;
        if n == 1 {
            let cover = BranchedCover::new(0, 1, Vec::new(), Vec::new())?;
            return Ok(cover);
        }
        let finite: Vec<&CriticalValue> = values
            .iter()
            .filter(|cv| matches!(cv.position, ValuePosition::Finite(_)))
            .collect();
        let positions: Vec<Complex64> = finite
            .iter()
            .map(|cv| match cv.position {
                ValuePosition::Finite(z) => z,
                ValuePosition::Infinity => unreachable!(),
            })
            .collect();

        let radius = 2.0 + positions.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let avoid_degree_drop = self
            .value_at_infinity()
            .map(|v| v.to_complex_f64())
            .filter(|_| self.numer.degree_or_zero() == self.denom.degree_or_zero());
        let t0 = choose_base_point(radius, &positions, avoid_degree_drop)?;
        let radii: Vec<f64> = positions
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let nearest = positions
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, w)| (v - w).norm())
                    .fold(f64::INFINITY, f64::min);
                let cap = (v - t0).norm() / 3.0;
                (nearest / 3.0).min(cap).min(1.0f64.max(radius / 8.0))
            })
            .collect();

        // Base fiber: the roots of P - t0 Q.
        let pc = self.numer.to_complex_coeffs();
        let qc = self.denom.to_complex_coeffs();
        let p_rev = self.numer.reversed_padded(n).to_complex_coeffs();
        let q_rev = self.denom.reversed_padded(n).to_complex_coeffs();
        let h0: Vec<Complex64> = (0..n + 1)
            .map(|k| {
                let a = pc.get(k).copied().unwrap_or_else(Complex64::zero);
                let b = qc.get(k).copied().unwrap_or_else(Complex64::zero);
                a - t0 * b
            })
            .collect();
        let mut base_affine = roots::all_roots(&h0)?;
        if base_affine.len() != n {
            return Err(MonodromyError::Inconsistent(format!(
                "fiber over the base point has {} points, expected {n}",
                base_affine.len()
            )));
        }
        base_affine.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let base_fiber: Vec<SpherePoint> = base_affine
            .iter()
            .map(|&z| SpherePoint::from_affine(z))
            .collect();

        // Loop order: counterclockwise by argument as seen from the base点.
        let mut order: Vec<usize> = (0..finite.len()).collect();
        order.sort_by(|&a, &b| {
            let (va, vb) = (positions[a] - t0, positions[b] - t0);
            va.arg()
                .total_cmp(&vb.arg())
                .then(va.norm().total_cmp(&vb.norm()))
        });

        let mut branch_points: Vec<BranchPoint> = Vec::new();
        let mut product = Permutation::identity(n);
        for &idx in &order {
            let path = LoopPath::around(t0, positions[idx], radii[idx]);
            let mut fiber = TrackedFiber::new(&pc, &qc, &p_rev, &q_rev, config, base_fiber.clone());
            fiber.track(&path)?;
            let images = track::match_fibers(&base_fiber, &fiber.points)?;
            let perm = Permutation::from_images(images).map_err(|e| {
                MonodromyError::Inconsistent(format!("fiber matching is not a bijection: {e}"))
            })?;
            if perm.cycle_type() != finite[idx].cycle_type {
                return Err(MonodromyError::Inconsistent(format!(
                    "cycle type {} at {} disagrees with the multiplicity oracle {}",
                    perm.cycle_type(),
                    finite[idx].label,
                    finite[idx].cycle_type
                )));
            }
            product = product.then(&perm);
            branch_points.push(BranchPoint::new(finite[idx].label.clone(), perm));
        }

        let sigma_inf = product.inverse();
        match values
            .iter()
            .find(|cv| matches!(cv.position, ValuePosition::Infinity))
        {
            Some(cv) => {
                if sigma_inf.cycle_type() != cv.cycle_type {
                    return Err(MonodromyError::Inconsistent(format!(
                        "cycle type {} at inf disagrees with the multiplicity oracle {}",
                        sigma_inf.cycle_type(),
                        cv.cycle_type
                    )));
                }
                branch_points.push(BranchPoint::new(BranchLabel::Infinity, sigma_inf));
            }
            None => {
                if !sigma_inf.is_identity() {
                    return Err(MonodromyError::Inconsistent(format!(
                        "product of finite loops is {sigma_inf} but inf is unbranched"
                    )));
                }
            }
        }

        let cover = BranchedCover::new(0, n, Vec::new(), branch_points)?;
        cover
            .validate()
            .map_err(|v| MonodromyError::Inconsistent(format!("assembled cover invalid: {v}")))?;
        match cover.genus() {
            Ok(0) => Ok(cover),
            Ok(g) => Err(MonodromyError::Inconsistent(format!(
                "monodromy of a sphere map has genus {g}"
            ))),
            Err(e) => Err(MonodromyError::Inconsistent(e.to_string())),
        }
    }

    /// Decomposition of the fiber product of the map with itself; always
    /// contains the diagonal component, a copy of the map's own cover.
    pub fn self_product_report(&self) -> Result<FiberDecomposition, MonodromyError> {
        let cover = self.monodromy()?;
        Ok(fiber::decompose(&cover, &cover)?)
    }
}

/// Base point on the circle of the given radius, preferring the positive
/// imaginary axis, such that the critical values have pairwise distinct
/// directions (separation > 1e-3 rad), no spoke passes through another
/// value's loop disc, and the fiber over the base point has full degree.
fn choose_base_point(
    radius: f64,
    positions: &[Complex64],
    avoid: Option<Complex64>,
) -> Result<Complex64, MonodromyError> {
    for k in 0..400 {
        let offset = 0.031 * ((k + 1) / 2) as f64;
        let theta = if k % 2 == 0 {
            std::f64::consts::FRAC_PI_2 + offset
        } else {
            std::f64::consts::FRAC_PI_2 - offset
        };
        let t0 = radius * Complex64::new(theta.cos(), theta.sin());
        if let Some(bad) = avoid {
            if (t0 - bad).norm() < 1e-6 * radius {
                continue;
            }
        }
        let mut ok = true;
        'pairs: for (i, v) in positions.iter().enumerate() {
            for (j, w) in positions.iter().enumerate() {
                if i == j {
                    continue;
                }
                let da = (v - t0).arg() - (w - t0).arg();
                let mut sep = da.abs() % (2.0 * std::f64::consts::PI);
                if sep > std::f64::consts::PI {
                    sep = 2.0 * std::f64::consts::PI - sep;
                }
                if sep < 1e-3 {
                    ok = false;
                    break 'pairs;
                }
                // The spoke toward v must clear w's loop disc.
                let nearest = positions
                    .iter()
                    .enumerate()
                    .filter(|&(m, _)| m != j)
                    .map(|(_, u)| (w - u).norm())
                    .fold(f64::INFINITY, f64::min);
                let r_w = (nearest / 3.0).min(1.0f64.max(radius / 8.0));
                if segment_distance(t0, *v, *w) < 1.2 * r_w {
                    ok = false;
                    break 'pairs;
                }
            }
        }
        if ok {
            return Ok(t0);
        }
    }
    Err(MonodromyError::Inconsistent(
        "no admissible base point angle found".into(),
    ))
}

fn segment_distance(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).re * ab.re + (p - a).im * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Nearest rational with bounded denominator via continued fractions, within
/// the given absolute tolerance.
fn snap_rational(x: f64, max_den: i64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h_prev, mut k_prev): (i128, i128) = (1, 0);
    let (mut h, mut k): (i128, i128) = (x.floor() as i128, 1);
    let mut frac = x - x.floor();
    for _ in 0..48 {
        if (x - h as f64 / k as f64).abs() <= tol {
            return Some(BigRational::new(BigInt::from(h), BigInt::from(k)));
        }
        if frac.abs() < 1e-15 {
            return None;
        }
        let recip = 1.0 / frac;
        let a = recip.floor();
        if !a.is_finite() || a >= 9e17 {
            return None;
        }
        let a_int = a as i128;
        let h_next = a_int * h + h_prev;
        let k_next = a_int * k + k_prev;
        if k_next > max_den as i128 {
            return None;
        }
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        frac = recip - a;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::simultaneous_conjugator;

    fn ratio(num: i64, den: i64) -> GaussianRational {
        GaussianRational::from_ratio(num, den)
    }

    /// 4z^3(1 - z^3) = 4z^3 - 4z^6.
    fn beta1() -> RationalMap {
        RationalMap::from_integer_coeffs(&[0, 0, 0, 4, 0, 0, -4], &[1]).unwrap()
    }

    /// 27 z^4 (z^2 - 1) / 4.
    fn beta2_plane_model() -> RationalMap {
        let numer = Poly::from_coeffs(vec![
            GaussianRational::zero(),
            GaussianRational::zero(),
            GaussianRational::zero(),
            GaussianRational::zero(),
            ratio(-27, 4),
            GaussianRational::zero(),
            ratio(27, 4),
        ]);
        RationalMap::new(numer, Poly::one()).unwrap()
    }

    /// z(z^3 + z^2 + 1) = z^4 + z^3 + z.
    fn quartic() -> RationalMap {
        RationalMap::from_integer_coeffs(&[0, 1, 0, 1, 1], &[1]).unwrap()
    }

    fn power_map(n: usize) -> RationalMap {
        let mut coeffs = vec![GaussianRational::zero(); n + 1];
        coeffs[n] = GaussianRational::one();
        RationalMap::new(Poly::from_coeffs(coeffs), Poly::one()).unwrap()
    }

    fn types_by_label(values: &[CriticalValue]) -> Vec<(String, Vec<usize>)> {
        values
            .iter()
            .map(|cv| (cv.label.to_string(), cv.cycle_type.lengths().to_vec()))
            .collect()
    }

    #[test]
    fn critical_values_of_power_map() {
        let values = power_map(5).critical_values().unwrap();
        assert_eq!(
            types_by_label(&values),
            vec![("0".to_string(), vec![5]), ("inf".to_string(), vec![5])]
        );
        assert!(values[0].exact.is_some());
    }

    #[test]
    fn critical_values_of_degree_two_polynomial() {
        // 4z(1-z): simple branch points at 1 and infinity.
        let f = RationalMap::from_integer_coeffs(&[0, 4, -4], &[1]).unwrap();
        let values = f.critical_values().unwrap();
        assert_eq!(
            types_by_label(&values),
            vec![("1".to_string(), vec![2]), ("inf".to_string(), vec![2])]
        );
    }

    #[test]
    fn critical_values_of_beta1() {
        let values = beta1().critical_values().unwrap();
        assert_eq!(
            types_by_label(&values),
            vec![
                ("0".to_string(), vec![3, 1, 1, 1]),
                ("1".to_string(), vec![2, 2, 2]),
                ("inf".to_string(), vec![6]),
            ]
        );
    }

    #[test]
    fn critical_values_of_plane_model_factor() {
        let values = beta2_plane_model().critical_values().unwrap();
        assert_eq!(
            types_by_label(&values),
            vec![
                ("-1".to_string(), vec![2, 2, 1, 1]),
                ("0".to_string(), vec![4, 1, 1]),
                ("inf".to_string(), vec![6]),
            ]
        );
    }

    #[test]
    fn critical_values_of_quartic_with_irrational_values() {
        // f' = 4z^3 + 3z^2 + 1 = (z+1)(4z^2 - z + 1): the real critical
        // point -1 maps to the exact value -1, the conjugate pair maps to a
        // conjugate pair of irrational values kept as symbolic clusters.
        let values = quartic().critical_values().unwrap();
        let labels: Vec<String> = values.iter().map(|cv| cv.label.to_string()).collect();
        assert_eq!(labels, ["-1", "cv1", "cv2", "inf"]);
        assert_eq!(values[0].cycle_type.lengths(), &[2, 1, 1]);
        assert_eq!(values[1].cycle_type.lengths(), &[2, 1, 1]);
        assert_eq!(values[2].cycle_type.lengths(), &[2, 1, 1]);
        assert_eq!(values[3].cycle_type.lengths(), &[4]);
        assert!(values[1].exact.is_none());
    }

    #[test]
    fn total_ramification_is_exact() {
        for f in [beta1(), beta2_plane_model(), quartic(), power_map(7)] {
            let values = f.critical_values().unwrap();
            let total: usize = values
                .iter()
                .flat_map(|cv| cv.cycle_type.lengths().iter().map(|&l| l - 1))
                .sum();
            assert_eq!(total, 2 * f.degree() - 2);
        }
    }

    #[test]
    fn monodromy_of_power_map() {
        let cover = power_map(5).monodromy().unwrap();
        assert_eq!(cover.degree(), 5);
        let at_zero = cover.branch_point(&BranchLabel::integer(0)).unwrap();
        let at_inf = cover.branch_point(&BranchLabel::Infinity).unwrap();
        assert_eq!(at_zero.monodromy.cycle_type().lengths(), &[5]);
        assert_eq!(at_inf.monodromy, at_zero.monodromy.inverse());
        assert_eq!(cover.genus().unwrap(), 0);
    }

    #[test]
    fn monodromy_of_degree_two_polynomial() {
        let f = RationalMap::from_integer_coeffs(&[0, 4, -4], &[1]).unwrap();
        let cover = f.monodromy().unwrap();
        for bp in cover.branch_points() {
            assert_eq!(bp.monodromy.cycle_type().lengths(), &[2]);
        }
        assert_eq!(cover.genus().unwrap(), 0);
    }

    #[test]
    fn monodromy_of_beta1_matches_oracle() {
        let cover = beta1().monodromy().unwrap();
        assert_eq!(cover.genus().unwrap(), 0);
        assert!(cover.relation_product().is_identity());
        assert!(!cover.is_regular());
        let labels: Vec<String> = cover
            .branch_points()
            .iter()
            .map(|bp| bp.label.to_string())
            .collect();
        assert_eq!(labels, ["0", "1", "inf"]);
    }

    #[test]
    fn monodromy_stable_under_doubled_resolution() {
        for f in [beta1(), beta2_plane_model(), quartic()] {
            let base = f.monodromy().unwrap();
            let fine = f
                .monodromy_with(&TrackerConfig::default().doubled_resolution())
                .unwrap();
            let ta = base.monodromy_tuple();
            let tb = fine.monodromy_tuple();
            let conj = simultaneous_conjugator(&ta, &tb, base.degree()).unwrap();
            assert!(conj.is_some());
        }
    }

    #[test]
    fn self_product_of_power_map() {
        let dec = power_map(4).self_product_report().unwrap();
        assert_eq!(dec.components.len(), 4);
        assert!(dec.components.iter().all(|c| c.genus == 0));
    }

    #[test]
    fn self_product_of_quartic() {
        // z(z^3+z^2+1) against itself: the diagonal sphere plus a genus-one
        // component.
        let dec = quartic().self_product_report().unwrap();
        assert_eq!(dec.orbit_sizes(), vec![4, 12]);
        assert_eq!(dec.genera(), vec![0, 1]);
        assert!(dec.connected);
    }

    #[test]
    fn self_product_of_beta1() {
        // Component genera {0,0,0,1}: three lines and the Fermat cubic in
        // the exact factorization of beta(z) - beta(w).
        let dec = beta1().self_product_report().unwrap();
        assert_eq!(dec.orbit_sizes(), vec![6, 6, 6, 18]);
        assert_eq!(dec.genera(), vec![0, 0, 0, 1]);
        assert!(dec.connected);
        assert_eq!(dec.bound, 6);
        assert!(dec.components.len() < dec.bound);
    }

    #[test]
    fn snap_rational_reconstructs_simple_fractions() {
        let x = -27.0 / 4.0;
        assert_eq!(
            snap_rational(x, 1_000_000, 1e-9).unwrap(),
            BigRational::new(BigInt::from(-27), BigInt::from(4))
        );
        assert!(snap_rational(std::f64::consts::SQRT_2, 1_000, 1e-12).is_none());
    }
}
