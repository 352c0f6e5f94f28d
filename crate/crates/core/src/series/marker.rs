//! Sparse polynomials in the marker variables.
//!
//! Every marker polynomial has three exponent slots: parts (`y`), count
//! (`q` for peaks, `p` for valleys) and magnitude (`h` for heights, `d` for
//! depths).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Marker {
    /// number of parts
    Y,
    /// symmetric-peak count
    Q,
    /// sum of peak heights
    H,
    /// symmetric-valley count
    P,
    /// sum of valley depths
    D,
}

impl Marker {
    pub fn slot(self) -> usize {
        match self {
            Marker::Y => 0,
            Marker::Q | Marker::P => 1,
            Marker::H | Marker::D => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Marker::Y => "y",
            Marker::Q => "q",
            Marker::H => "h",
            Marker::P => "p",
            Marker::D => "d",
        }
    }
}

pub type Exponents = [u32; 3];

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MarkerPoly {
    terms: BTreeMap<Exponents, BigRational>,
}

impl MarkerPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(exps: Exponents, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    /// `y^e_y * count^e_c * magnitude^e_m` with coefficient `c`.
    pub fn term(e_y: u32, e_count: u32, e_mag: u32, c: i64) -> Self {
        Self::monomial([e_y, e_count, e_mag], BigRational::from_integer(c.into()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: Exponents) -> BigRational {
        self.terms.get(&exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The coefficient when the polynomial has no marker-dependent terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    fn insert_add(&mut self, exps: Exponents, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if num_traits::Zero::is_zero(c) {
            return Self::default();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Sets `marker` to 1.
    pub fn substitute_one(&self, marker: Marker) -> Self {
        let slot = marker.slot();
        let mut out = Self::default();
        for (e, c) in &self.terms {
            let mut e = *e;
            e[slot] = 0;
            out.insert_add(e, c.clone());
        }
        out
    }

    pub fn derivative(&self, marker: Marker) -> Self {
        let slot = marker.slot();
        let mut out = Self::default();
        for (e, c) in &self.terms {
            if e[slot] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[slot] -= 1;
            out.insert_add(e2, c * BigRational::from_integer(e[slot].into()));
        }
        out
    }

    /// Value with every marker set to 1.
    pub fn at_ones(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }
}

impl Ring for MarkerPoly {
    fn zero_elem() -> Self {
        Self::zero()
    }

    fn one_elem() -> Self {
        Self::one()
    }

    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, -c.clone());
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.insert_add(e, ca * cb);
            }
        }
        out
    }

    fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    fn inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        if num_traits::Zero::is_zero(&c) {
            return None;
        }
        Some(Self::constant(c.recip()))
    }
}

impl fmt::Debug for MarkerPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (name, x) in ["y", "c", "m"].iter().zip(e) {
                if *x > 0 {
                    write!(f, "*{name}^{x}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = MarkerPoly::term(1, 0, 0, 3);
        let b = MarkerPoly::term(1, 0, 0, -3);
        assert!(Ring::add(&a, &b).is_zero());
        assert_eq!(MarkerPoly::term(0, 1, 0, 0).len(), 0);
    }

    #[test]
    fn derivative_and_substitution() {
        // y^2 q^3 h + 2 y q
        let f = Ring::add(&MarkerPoly::term(2, 3, 1, 1), &MarkerPoly::term(1, 1, 0, 2));
        let dq = f.derivative(Marker::Q);
        assert_eq!(dq.coeff([2, 2, 1]), int(3));
        assert_eq!(dq.coeff([1, 0, 0]), int(2));
        assert_eq!(f.substitute_one(Marker::H).coeff([2, 3, 0]), int(1));
        assert_eq!(f.at_ones(), int(3));
        assert!(MarkerPoly::one().derivative(Marker::D).is_zero());
    }

    #[test]
    fn only_pure_constants_invert() {
        assert!(MarkerPoly::term(0, 0, 0, 2).inverse().is_some());
        assert!(MarkerPoly::term(0, 1, 0, 2).inverse().is_none());
        assert!(MarkerPoly::zero().inverse().is_none());
    }
}
