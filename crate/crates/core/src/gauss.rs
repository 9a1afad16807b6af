//! Exact Gaussian-rational arithmetic: numbers `re + im*i` with arbitrary
//! precision rational parts.  Branch labels and rational-map coefficients are
//! kept exact; floating point only ever enters through explicit conversion.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, Complex, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re^2 + im^2`; zero exactly when the number is zero.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussianRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn to_complex_f64(&self) -> Complex<f64> {
        Complex::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Total order by `(re, im)`; used for the canonical label ordering.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero; callers check with [`GaussianRational::is_zero`].
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inverse().expect("division by zero")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.denom() == &BigInt::from(1) {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical form: `p/q` when real, `p/q+r/si` (or `-r/si`) otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write_rational(f, &self.re);
        }
        if !self.re.is_zero() {
            write_rational(f, &self.re)?;
            if self.im.is_positive() {
                write!(f, "+")?;
            }
        }
        write_rational(f, &self.im)?;
        write!(f, "i")
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaussianRational({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic_round_trips() {
        let a = GaussianRational::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::new(3.into(), 4.into()),
        );
        let b = GaussianRational::from_integer(-2);
        let prod = &a * &b;
        assert_eq!(&prod / &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert!(GaussianRational::zero().inverse().is_none());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(GaussianRational::from_integer(-3).to_string(), "-3");
        assert_eq!(GaussianRational::from_ratio(1, 2).to_string(), "1/2");
        let z = GaussianRational::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-3).into(), 4.into()),
        );
        assert_eq!(z.to_string(), "1/2-3/4i");
        let w = GaussianRational::new(BigRational::zero(), BigRational::from_integer(1.into()));
        assert_eq!(w.to_string(), "1i");
    }
}
