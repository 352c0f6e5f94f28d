use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::series::Ring;

/// Power series in `eps` kept modulo `eps^3`.
///
/// With the marker written as `u = 1 + eps`, coefficient 1 is the first
/// derivative at `u = 1` and coefficient 2 is half the second derivative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet(pub [BigRational; 3]);

impl Jet {
    pub fn constant(c: BigRational) -> Self {
        Jet([c, BigRational::zero(), BigRational::zero()])
    }

    pub fn zero() -> Self {
        Jet::constant(BigRational::zero())
    }

    pub fn one() -> Self {
        Jet::constant(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// `u = 1 + eps`.
    pub fn marker() -> Self {
        Jet([BigRational::one(), BigRational::one(), BigRational::zero()])
    }

    /// `eps = u - 1`.
    pub fn eps() -> Self {
        Jet([BigRational::zero(), BigRational::one(), BigRational::zero()])
    }

    pub fn value(&self) -> &BigRational {
        &self.0[0]
    }

    pub fn first(&self) -> &BigRational {
        &self.0[1]
    }

    pub fn second(&self) -> &BigRational {
        &self.0[2]
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Jet([&self.0[0] * c, &self.0[1] * c, &self.0[2] * c])
    }
}

impl Ring for Jet {
    fn zero_elem() -> Self {
        Jet::zero()
    }

    fn one_elem() -> Self {
        Jet::one()
    }

    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        Jet([
            &self.0[0] + &rhs.0[0],
            &self.0[1] + &rhs.0[1],
            &self.0[2] + &rhs.0[2],
        ])
    }

    fn sub(&self, rhs: &Self) -> Self {
        Jet([
            &self.0[0] - &rhs.0[0],
            &self.0[1] - &rhs.0[1],
            &self.0[2] - &rhs.0[2],
        ])
    }

    fn mul(&self, rhs: &Self) -> Self {
        let [a0, a1, a2] = &self.0;
        let [b0, b1, b2] = &rhs.0;
        Jet([a0 * b0, a0 * b1 + a1 * b0, a0 * b2 + a1 * b1 + a2 * b0])
    }

    fn neg(&self) -> Self {
        Jet([-self.0[0].clone(), -self.0[1].clone(), -self.0[2].clone()])
    }

    fn inverse(&self) -> Option<Self> {
        let [a0, a1, a2] = &self.0;
        if a0.is_zero() {
            return None;
        }
        let i0 = a0.recip();
        let i1 = -(a1 * &i0 * &i0);
        let i2 = (a1 * a1 - a0 * a2) * &i0 * &i0 * &i0;
        Some(Jet([i0, i1, i2]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    #[test]
    fn inverse_round_trip() {
        let a = Jet([rat(3, 4), int(-2), rat(5, 7)]);
        assert_eq!(a.mul(&a.inverse().unwrap()), Jet::one());
        assert!(Jet::eps().inverse().is_none());
    }

    #[test]
    fn marker_square() {
        // (1 + eps)^2 = 1 + 2 eps + eps^2
        let u = Jet::marker();
        assert_eq!(u.mul(&u), Jet([int(1), int(2), int(1)]));
    }
}
