//! Dense univariate polynomials over the Gaussian rationals, with exact
//! division, gcd and Yun square-free decomposition.  This is the exact side
//! of the numerical-monodromy module: critical values and local multiplicity
//! data are certified here before any tracking happens.

use std::fmt;

use num::Complex;

use crate::gauss::GaussianRational;

/// Coefficients ascending by power; trailing zeros trimmed, so the zero
/// polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * z^k`.
    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(GaussianRational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs =
            vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * &GaussianRational::from_integer(k as i64))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Exact Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor
            .leading()
            .unwrap()
            .inverse()
            .expect("leading coefficient is nonzero");
        let mut remainder = self.coeffs.clone();
        if remainder.len() <= d {
            return (Poly::zero(), self.clone());
        }
        let mut quotient = vec![GaussianRational::zero(); remainder.len() - d];
        for k in (d..remainder.len()).rev() {
            let factor = &remainder[k] * &lead_inv;
            if factor.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let idx = k - d + j;
                remainder[idx] = &remainder[idx] - &(&factor * b);
            }
            quotient[k - d] = factor;
        }
        (Poly::from_coeffs(quotient), Poly::from_coeffs(remainder))
    }

    /// Exact quotient, asserting zero remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem(divisor);
        debug_assert!(r.is_zero(), "exact_div with nonzero remainder");
        q
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lead) => self.scale(&lead.inverse().unwrap()),
        }
    }

    /// Monic gcd by the Euclidean algorithm over the coefficient field.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, z: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    pub fn to_complex_coeffs(&self) -> Vec<Complex<f64>> {
        self.coeffs
            .iter()
            .map(GaussianRational::to_complex_f64)
            .collect()
    }

    /// Coefficient list reversed and padded to the given degree:
    /// `rev(f)(w) = w^degree * f(1/w)`.  Used for the chart at infinity.
    pub fn reversed_padded(&self, degree: usize) -> Poly {
        let mut coeffs = vec![GaussianRational::zero(); degree + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[degree - k] = c.clone();
        }
        Poly::from_coeffs(coeffs)
    }

    /// Yun square-free decomposition: pairs `(multiplicity, factor)` with
    /// each factor monic, square-free, of degree >= 1, pairwise coprime, and
    /// `f = lead * prod factor_i ^ multiplicity_i`.
    pub fn square_free_decomposition(&self) -> Vec<(usize, Poly)> {
        let f = self.monic();
        if f.degree_or_zero() == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let g = f.gcd(&df);
        let mut c = f.exact_div(&g);
        let mut d = df.exact_div(&g).sub(&c.derivative());
        let mut out = Vec::new();
        let mut multiplicity = 1;
        while c.degree_or_zero() >= 1 {
            let p = c.gcd(&d);
            if p.degree_or_zero() >= 1 {
                out.push((multiplicity, p.clone()));
            }
            c = c.exact_div(&p);
            d = d.exact_div(&p).sub(&c.derivative());
            multiplicity += 1;
        }
        out
    }

    /// Multiset of root multiplicities (one entry per distinct root),
    /// descending.  Sums to the degree.
    pub fn root_multiplicities(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (multiplicity, factor) in self.square_free_decomposition() {
            out.extend(std::iter::repeat_n(multiplicity, factor.degree_or_zero()));
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        Ok(())
    }
}
