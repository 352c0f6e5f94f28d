use num_rational::BigRational;

use super::marker::{Marker, MarkerPoly};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Power series in one variable kept modulo `x^(trunc+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> TruncSeries<C> {
    pub fn zero(trunc: usize) -> Self {
        Self {
            coeffs: vec![C::zero_elem(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::constant(trunc, C::one_elem())
    }

    pub fn constant(trunc: usize, c: C) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = c;
        s
    }

    /// `c * x^degree`, or zero when `degree > trunc`.
    pub fn monomial(trunc: usize, degree: usize, c: C) -> Self {
        let mut s = Self::zero(trunc);
        if degree <= trunc {
            s.coeffs[degree] = c;
        }
        s
    }

    /// Coefficients past `trunc` are dropped; missing ones are zero.
    pub fn from_coeffs(trunc: usize, coeffs: impl IntoIterator<Item = C>) -> Self {
        let mut s = Self::zero(trunc);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, degree: usize) -> &C {
        &self.coeffs[degree]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    fn check_same(&self, rhs: &Self) {
        assert_eq!(self.trunc(), rhs.trunc(), "truncation orders differ");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_same(rhs);
        Self {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check_same(rhs);
        Self {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(Ring::neg).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.trunc();
        let mut out = Self::zero(n);
        for d in k..=n {
            out.coeffs[d] = self.coeffs[d - k].clone();
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_same(rhs);
        let n = self.trunc();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if b.is_zero_elem() {
                    continue;
                }
                out.coeffs[i + j].add_assign(&a.mul(b));
            }
        }
        out
    }

    /// Inverse modulo `x^(trunc+1)`; the constant term must be a unit.
    pub fn reciprocal(&self) -> Result<Self> {
        let n = self.trunc();
        let inv0 = self.coeffs[0].inverse().ok_or(Error::NonInvertibleConstant)?;
        let mut out = Self::zero(n);
        out.coeffs[0] = inv0.clone();
        for d in 1..=n {
            let mut acc = C::zero_elem();
            for i in 1..=d {
                let a = &self.coeffs[i];
                if a.is_zero_elem() || out.coeffs[d - i].is_zero_elem() {
                    continue;
                }
                acc.add_assign(&a.mul(&out.coeffs[d - i]));
            }
            out.coeffs[d] = acc.mul(&inv0).neg();
        }
        Ok(out)
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Same series with a lower truncation order.
    pub fn truncate(&self, trunc: usize) -> Self {
        assert!(trunc <= self.trunc());
        Self {
            coeffs: self.coeffs[..=trunc].to_vec(),
        }
    }
}

impl TruncSeries<MarkerPoly> {
    pub fn substitute_one(&self, marker: Marker) -> Self {
        self.map(|c| c.substitute_one(marker))
    }

    pub fn derivative(&self, marker: Marker) -> Self {
        self.map(|c| c.derivative(marker))
    }
}

impl TruncSeries<BigRational> {
    pub fn to_vec(&self) -> Vec<BigRational> {
        self.coeffs.clone()
    }
}

impl Ring for BigRational {
    fn zero_elem() -> Self {
        num_traits::Zero::zero()
    }

    fn one_elem() -> Self {
        num_traits::One::one()
    }

    fn is_zero_elem(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self.clone()
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero_elem() {
            None
        } else {
            Some(self.recip())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    fn ser(n: usize, c: &[i64]) -> TruncSeries<BigRational> {
        TruncSeries::from_coeffs(n, c.iter().map(|&v| int(v)))
    }

    #[test]
    fn geometric_reciprocal() {
        let inv = ser(4, &[1, -1]).reciprocal().unwrap();
        assert_eq!(inv, ser(4, &[1, 1, 1, 1, 1]));
    }

    #[test]
    fn inverse_identity() {
        let a = ser(6, &[1, -2]);
        assert_eq!(a.mul(&a.reciprocal().unwrap()), TruncSeries::one(6));
    }

    #[test]
    fn non_invertible() {
        assert_eq!(
            ser(3, &[0, 1]).reciprocal().unwrap_err(),
            Error::NonInvertibleConstant
        );
        let marker_const = TruncSeries::constant(3, MarkerPoly::term(0, 1, 0, 1));
        assert_eq!(
            marker_const.reciprocal().unwrap_err(),
            Error::NonInvertibleConstant
        );
    }

    #[test]
    fn shift_drops_overflow() {
        assert_eq!(ser(3, &[1, 2, 3, 4]).shift(2), ser(3, &[0, 0, 1, 2]));
    }
}
