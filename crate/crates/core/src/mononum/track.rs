//! Fiber tracking for numerical monodromy.
//!
//! The fiber of `f = P/Q` over a moving base value `t` is the root set of
//! `h_t(z) = P(z) - t Q(z)`.  Points are stored projectively and tracked in
//! one of two charts — affine `z` while `|z| <= 1`, inverted `w = 1/z`
//! otherwise — so fibers passing near the point at infinity stay well
//! conditioned.  Distances and separation guards use the chordal metric on
//! the sphere.

use num::complex::Complex64;
use num::Zero;
use thiserror::Error;

use super::roots;

/// Step-control knobs for the tracker.
#[derive(Debug, Clone)]
pub struct TrackerConfig {
    /// Initial (and maximal) number of steps per loop; the step length is
    /// `loop length / steps_per_loop`.
    pub steps_per_loop: usize,
    /// Failure floor: give up when the step drops below
    /// `loop length * 2^-min_step_shift`.
    pub min_step_shift: u32,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
}

impl Default for TrackerConfig {
    fn default() -> Self {
        TrackerConfig {
            steps_per_loop: 64,
            min_step_shift: 20,
            newton_tol: 1e-12,
            newton_max_iter: 30,
        }
    }
}

impl TrackerConfig {
    /// The same tracker with the spatial resolution doubled; monodromy
    /// output must be conjugacy-stable under this refinement.
    pub fn doubled_resolution(&self) -> Self {
        TrackerConfig {
            steps_per_loop: self.steps_per_loop * 2,
            min_step_shift: self.min_step_shift + 1,
            ..self.clone()
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TrackError {
    #[error("Newton failed to converge near t = {at} (arc position {arc:.6})")]
    StepFailure { at: Complex64, arc: f64 },
    #[error("fiber points collided near t = {at} (arc position {arc:.6})")]
    SeparationFailure { at: Complex64, arc: f64 },
    #[error("could not match the transported fiber back to the base fiber")]
    MatchFailure,
}

/// A point of the Riemann sphere as a normalized projective pair `[num : den]`.
#[derive(Debug, Clone, Copy)]
pub struct SpherePoint {
    pub num: Complex64,
    pub den: Complex64,
}

impl SpherePoint {
    pub fn from_affine(z: Complex64) -> Self {
        SpherePoint {
            num: z,
            den: Complex64::new(1.0, 0.0),
        }
        .normalized()
    }

    pub fn from_inverted(w: Complex64) -> Self {
        SpherePoint {
            num: Complex64::new(1.0, 0.0),
            den: w,
        }
        .normalized()
    }

    fn normalized(self) -> Self {
        let scale = (self.num.norm_sqr() + self.den.norm_sqr()).sqrt();
        SpherePoint {
            num: self.num / scale,
            den: self.den / scale,
        }
    }

    /// True when the affine chart `z = num/den` is the better conditioned one.
    fn prefers_affine(&self) -> bool {
        self.num.norm() <= self.den.norm()
    }

    pub fn affine(&self) -> Complex64 {
        self.num / self.den
    }

    pub fn inverted(&self) -> Complex64 {
        self.den / self.num
    }

    /// Chordal distance on the sphere (diameter 2), symmetric in the charts.
    pub fn chordal(&self, other: &SpherePoint) -> f64 {
        2.0 * (self.num * other.den - other.num * self.den).norm()
    }
}

/// A lasso around one finite critical value: straight spoke from the base
/// point to the boundary circle, once around counterclockwise, and back.
#[derive(Debug, Clone)]
pub struct LoopPath {
    base: Complex64,
    center: Complex64,
    radius: f64,
    entry: Complex64,
    leg: f64,
    arc: f64,
}

impl LoopPath {
    pub fn around(base: Complex64, center: Complex64, radius: f64) -> Self {
        let direction = (base - center) / (base - center).norm();
        let entry = center + direction * radius;
        LoopPath {
            base,
            center,
            radius,
            entry,
            leg: (base - entry).norm(),
            arc: 2.0 * std::f64::consts::PI * radius,
        }
    }

    pub fn total_length(&self) -> f64 {
        2.0 * self.leg + self.arc
    }

    pub fn at(&self, s: f64) -> Complex64 {
        if s <= self.leg {
            let u = if self.leg == 0.0 { 1.0 } else { s / self.leg };
            self.base + (self.entry - self.base) * u
        } else if s <= self.leg + self.arc {
            let angle0 = (self.entry - self.center).arg();
            let angle = angle0 + 2.0 * std::f64::consts::PI * (s - self.leg) / self.arc;
            self.center + self.radius * Complex64::new(angle.cos(), angle.sin())
        } else {
            let u = if self.leg == 0.0 {
                1.0
            } else {
                ((s - self.leg - self.arc) / self.leg).min(1.0)
            };
            self.entry + (self.base - self.entry) * u
        }
    }
}

/// The fiber of one rational map under transport, together with the machinery
/// to move it: `h_t` coefficients in both charts.
pub struct TrackedFiber<'a> {
    /// `P` then `Q`, ascending coefficients, affine chart.
    p: &'a [Complex64],
    q: &'a [Complex64],
    /// Reversed and padded to the map degree: the chart at infinity.
    p_rev: &'a [Complex64],
    q_rev: &'a [Complex64],
    config: &'a TrackerConfig,
    /// Current fiber, indexed compatibly with the base fiber.
    pub points: Vec<SpherePoint>,
    /// Largest chordal movement accepted in the last step; fiber points stay
    /// separated by more than twice this radius.
    pub matching_radius: f64,
}

fn combine(p: &[Complex64], q: &[Complex64], t: Complex64) -> Vec<Complex64> {
    let len = p.len().max(q.len());
    (0..len)
        .map(|k| {
            let a = p.get(k).copied().unwrap_or_else(Complex64::zero);
            let b = q.get(k).copied().unwrap_or_else(Complex64::zero);
            a - t * b
        })
        .collect()
}

impl<'a> TrackedFiber<'a> {
    pub fn new(
        p: &'a [Complex64],
        q: &'a [Complex64],
        p_rev: &'a [Complex64],
        q_rev: &'a [Complex64],
        config: &'a TrackerConfig,
        points: Vec<SpherePoint>,
    ) -> Self {
        TrackedFiber {
            p,
            q,
            p_rev,
            q_rev,
            config,
            points,
            matching_radius: 0.0,
        }
    }

    fn min_separation(points: &[SpherePoint]) -> f64 {
        let mut min = f64::INFINITY;
        for (i, a) in points.iter().enumerate() {
            for b in &points[i + 1..] {
                min = min.min(a.chordal(b));
            }
        }
        min
    }

    /// One corrector step of the whole fiber to the base value `t`; fails if
    /// any Newton run diverges or the separation guard trips.
    fn step_to(&mut self, t: Complex64) -> Result<(), ()> {
        let h = combine(self.p, self.q, t);
        let h_rev = combine(self.p_rev, self.q_rev, t);
        let mut next = Vec::with_capacity(self.points.len());
        for point in &self.points {
            let moved = if point.prefers_affine() {
                roots::newton(
                    &h,
                    point.affine(),
                    self.config.newton_tol,
                    self.config.newton_max_iter,
                    4.0,
                )
                .map(SpherePoint::from_affine)
            } else {
                roots::newton(
                    &h_rev,
                    point.inverted(),
                    self.config.newton_tol,
                    self.config.newton_max_iter,
                    4.0,
                )
                .map(SpherePoint::from_inverted)
            };
            match moved {
                Some(p) => next.push(p),
                None => return Err(()),
            }
        }
        let movement = self
            .points
            .iter()
            .zip(&next)
            .map(|(a, b)| a.chordal(b))
            .fold(0.0, f64::max);
        if self.points.len() > 1 && Self::min_separation(&next) <= 2.0 * movement {
            return Err(());
        }
        self.matching_radius = movement;
        self.points = next;
        Ok(())
    }

    /// Transports the fiber along the whole loop with adaptive step halving.
    pub fn track(&mut self, path: &LoopPath) -> Result<(), TrackError> {
        let total = path.total_length();
        let max_step = total / self.config.steps_per_loop as f64;
        let min_step = total / f64::powi(2.0, self.config.min_step_shift as i32);
        let mut step = max_step;
        let mut s = 0.0;
        let mut streak = 0usize;
        while s < total {
            let s_next = (s + step).min(total);
            let snapshot = self.points.clone();
            if self.step_to(path.at(s_next)).is_ok() {
                s = s_next;
                streak += 1;
                if streak >= 4 && step * 2.0 <= max_step {
                    step *= 2.0;
                    streak = 0;
                }
            } else {
                self.points = snapshot;
                streak = 0;
                step /= 2.0;
                if step < min_step {
                    return Err(TrackError::StepFailure {
                        at: path.at(s),
                        arc: s,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Matches the transported fiber back onto the base fiber by nearest point,
/// guarded by half the base fiber's minimal separation; returns the image
/// table of the monodromy permutation (start index -> base index).
pub fn match_fibers(
    base: &[SpherePoint],
    transported: &[SpherePoint],
) -> Result<Vec<usize>, TrackError> {
    let guard = if base.len() > 1 {
        let mut min = f64::INFINITY;
        for (i, a) in base.iter().enumerate() {
            for b in &base[i + 1..] {
                min = min.min(a.chordal(b));
            }
        }
        min / 2.0
    } else {
        f64::INFINITY
    };
    let mut images = Vec::with_capacity(base.len());
    let mut used = vec![false; base.len()];
    for point in transported {
        let mut best = (f64::INFINITY, usize::MAX);
        for (j, b) in base.iter().enumerate() {
            let d = point.chordal(b);
            if d < best.0 {
                best = (d, j);
            }
        }
        if best.0 >= guard || used[best.1] {
            return Err(TrackError::MatchFailure);
        }
        used[best.1] = true;
        images.push(best.1);
    }
    Ok(images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chordal_metric_is_chart_symmetric() {
        let a = SpherePoint::from_affine(Complex64::new(3.0, 0.0));
        let b = SpherePoint::from_inverted(Complex64::new(1.0 / 3.0, 0.0));
        assert!(a.chordal(&b) < 1e-15);
        let far = SpherePoint::from_inverted(Complex64::zero());
        assert!((a.chordal(&far) - 2.0 / (1.0 + 9.0f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn loop_path_closes() {
        let path = LoopPath::around(
            Complex64::new(0.0, 3.0),
            Complex64::new(1.0, 0.0),
            0.25,
        );
        let total = path.total_length();
        assert!((path.at(0.0) - path.at(total)).norm() < 1e-12);
        // Midpoint of the arc is on the far side of the circle.
        let mid = path.at(path.leg + path.arc / 2.0);
        assert!(((mid - path.center).norm() - path.radius).abs() < 1e-12);
    }

    #[test]
    fn tracking_z_squared_around_origin_swaps_sheets() {
        // f(z) = z^2: the fiber over t is {sqrt(t), -sqrt(t)}; one loop
        // around 0 exchanges the two square roots.
        let config = TrackerConfig::default();
        let p = [Complex64::zero(), Complex64::zero(), Complex64::new(1.0, 0.0)];
        let q = [Complex64::new(1.0, 0.0)];
        let p_rev = [Complex64::new(1.0, 0.0)];
        let q_rev = [Complex64::zero(), Complex64::zero(), Complex64::new(1.0, 0.0)];
        let t0 = Complex64::new(4.0, 0.0);
        let base = vec![
            SpherePoint::from_affine(Complex64::new(2.0, 0.0)),
            SpherePoint::from_affine(Complex64::new(-2.0, 0.0)),
        ];
        let mut fiber = TrackedFiber::new(&p, &q, &p_rev, &q_rev, &config, base.clone());
        let path = LoopPath::around(t0, Complex64::zero(), 1.0);
        fiber.track(&path).unwrap();
        let images = match_fibers(&base, &fiber.points).unwrap();
        assert_eq!(images, vec![1, 0]);
    }
}
