//! All-roots polynomial solving over `Complex<f64>`: simultaneous
//! Aberth-Ehrlich iteration with deterministic restarts, plus the Newton
//! refinement the path tracker shares.

use num::complex::Complex64;
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("polynomial is constant; no roots to find")]
    Constant,
    #[error("root iteration failed to converge")]
    NoConvergence,
}

pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::zero();
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

pub fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Newton iteration from `start`; `None` when it leaves the disc of radius
/// `escape` or fails to reach `tol` within `max_iter` steps.
pub fn newton(
    coeffs: &[Complex64],
    start: Complex64,
    tol: f64,
    max_iter: usize,
    escape: f64,
) -> Option<Complex64> {
    let mut z = start;
    for _ in 0..max_iter {
        let (p, dp) = eval_with_derivative(coeffs, z);
        if dp.norm() == 0.0 {
            return None;
        }
        let step = p / dp;
        z -= step;
        if !z.is_finite() || z.norm() > escape {
            return None;
        }
        if step.norm() <= tol {
            return Some(z);
        }
    }
    None
}

fn trimmed(coeffs: &[Complex64]) -> &[Complex64] {
    let mut end = coeffs.len();
    while end > 0 && coeffs[end - 1].norm() == 0.0 {
        end -= 1;
    }
    &coeffs[..end]
}

/// All complex roots (with multiplicity) by Aberth-Ehrlich simultaneous
/// iteration, polished by Newton.  Intended for square-free inputs, where
/// the polish reaches ~1e-12 relative accuracy.
pub fn all_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, RootError> {
    let coeffs = trimmed(coeffs);
    if coeffs.len() <= 1 {
        return Err(RootError::Constant);
    }
    let mut work = coeffs.to_vec();
    let mut roots = Vec::with_capacity(coeffs.len() - 1);
    // Deflate exact zero roots so the iteration never divides by z = 0.
    while work.len() > 1 && work[0].norm() == 0.0 {
        roots.push(Complex64::zero());
        work.remove(0);
    }
    let degree = work.len() - 1;
    if degree == 0 {
        return Ok(roots);
    }
    if degree == 1 {
        roots.push(-work[0] / work[1]);
        return Ok(roots);
    }

    let lead = work[degree];
    let radius = 1.0
        + work[..degree]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(0x0abe_17e5);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (degree as f64) + 0.41;
            radius * 0.7 * Complex64::new(angle.cos(), angle.sin())
        })
        .collect();

    let tol = 1e-13;
    let mut best = f64::INFINITY;
    let mut since_best = 0usize;
    let mut converged = false;
    for _ in 0..600 {
        let mut max_step = 0.0f64;
        for i in 0..degree {
            let (p, dp) = eval_with_derivative(&work, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let newton_step = if dp.norm() == 0.0 {
                Complex64::new(tol * 10.0, tol * 10.0)
            } else {
                p / dp
            };
            let mut repulsion = Complex64::zero();
            for j in 0..degree {
                if i != j {
                    let diff = z[i] - z[j];
                    if diff.norm() == 0.0 {
                        continue;
                    }
                    repulsion += diff.inv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton_step * repulsion;
            let offset = if denom.norm() == 0.0 {
                newton_step
            } else {
                newton_step / denom
            };
            z[i] -= offset;
            max_step = max_step.max(offset.norm() / (1.0 + z[i].norm()));
        }
        if max_step <= tol {
            converged = true;
            break;
        }
        if max_step < best * 0.99 {
            best = max_step;
            since_best = 0;
        } else {
            since_best += 1;
            if since_best > 60 {
                // Stagnation: deterministic random restart perturbation.
                for zi in z.iter_mut() {
                    let jitter = Complex64::new(
                        rng.gen_range(-0.5..0.5),
                        rng.gen_range(-0.5..0.5),
                    );
                    *zi += jitter * (1.0 + zi.norm()) * 1e-3;
                }
                since_best = 0;
                best = f64::INFINITY;
            }
        }
    }
    if !converged {
        return Err(RootError::NoConvergence);
    }
    for zi in z.iter_mut() {
        if let Some(polished) = newton(&work, *zi, 1e-12 * (1.0 + zi.norm()), 40, 1e12) {
            *zi = polished;
        }
    }
    roots.extend(z);
    Ok(roots)
}
