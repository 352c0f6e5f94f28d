//! Exact arithmetic in the quadratic field Q(√-3).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

/// `re + im·√-3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadNumber {
    pub re: BigRational,
    pub im: BigRational,
}

fn three() -> BigRational {
    BigRational::from_integer(3.into())
}

impl QuadNumber {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + 3·im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + three() * &self.im * &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    /// `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Binary exponentiation.
    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.re * c, &self.im * c)
    }
}

impl Add for &QuadNumber {
    type Output = QuadNumber;
    fn add(self, rhs: &QuadNumber) -> QuadNumber {
        QuadNumber::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &QuadNumber {
    type Output = QuadNumber;
    fn sub(self, rhs: &QuadNumber) -> QuadNumber {
        QuadNumber::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &QuadNumber {
    type Output = QuadNumber;
    fn mul(self, rhs: &QuadNumber) -> QuadNumber {
        QuadNumber::new(
            &self.re * &rhs.re - three() * &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &QuadNumber {
    type Output = QuadNumber;

    /// Panics on division by zero.
    fn div(self, rhs: &QuadNumber) -> QuadNumber {
        self * &rhs.recip().expect("division by zero in Q(sqrt(-3))")
    }
}

impl Neg for &QuadNumber {
    type Output = QuadNumber;
    fn neg(self) -> QuadNumber {
        QuadNumber::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + ({})*sqrt(-3)", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    #[test]
    fn sqrt_minus_three_squares_to_minus_three() {
        let w = QuadNumber::from_ints(0, 1);
        assert_eq!(&w * &w, QuadNumber::from_ints(-3, 0));
    }

    #[test]
    fn cube_of_one_plus_root() {
        // (1 + √-3)^3 = -8
        let z = QuadNumber::from_ints(1, 1);
        assert_eq!(z.pow(3), QuadNumber::from_ints(-8, 0));
        assert_eq!(z.pow(0), QuadNumber::one());
    }

    #[test]
    fn division_via_conjugate() {
        let a = QuadNumber::from_ints(2, 5);
        let b = QuadNumber::from_ints(-1, 3);
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(b.norm(), int(28));
        assert!(QuadNumber::zero().recip().is_none());
        assert_eq!((&a * &a.conj()).im, int(0));
    }
}
