use std::fmt::Debug;

/// Exact commutative coefficient ring for [`super::TruncSeries`].
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Multiplicative inverse, if `self` is a unit of the ring.
    fn inverse(&self) -> Option<Self>;

    fn add_assign(&mut self, rhs: &Self) {
        *self = Ring::add(self, rhs);
    }
}
