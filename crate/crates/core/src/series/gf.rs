//! Truncated expansions of the composition generating functions
//!
//! ```text
//! HSP(x,y,q,h) = 1 / (1 - sum_{a>=1} x^a y / (1 - y^2 x^(2a+1) (qh/(1-hx) - 1/(1-x))))
//! DSV(x,y,p,d) = 1 / (1 - sum_{a>=1} x^a y / (1 - y^2 x^(a+1) B_a))
//! B_a          = sum_{j=1}^{a-1} (p d^(a-j) - 1) x^(j-1)
//! ```
//!
//! The outer sums stop at `a = trunc` because the `a`-th summand is divisible
//! by `x^a`.

use num_rational::BigRational;

use super::marker::{Marker, MarkerPoly};
use super::ring::Ring;
use super::trunc::TruncSeries;
use crate::composition::Family;

pub type Series = TruncSeries<MarkerPoly>;

fn c(e_y: u32, e_count: u32, e_mag: u32, v: i64) -> MarkerPoly {
    MarkerPoly::term(e_y, e_count, e_mag, v)
}

fn poly(trunc: usize, terms: &[(usize, MarkerPoly)]) -> Series {
    let mut s = Series::zero(trunc);
    for (d, m) in terms {
        s = s.add(&Series::monomial(trunc, *d, m.clone()));
    }
    s
}

fn recip(s: &Series) -> Series {
    s.reciprocal().expect("constant term 1 is invertible")
}

/// `1 / (1 - sum_{a=1}^{trunc} x^a y / inner(a))`.
fn assemble(trunc: usize, inner: impl Fn(usize) -> Series) -> Series {
    let mut sum = Series::zero(trunc);
    for a in 1..=trunc {
        let head = Series::monomial(trunc, a, c(1, 0, 0, 1));
        sum = sum.add(&head.mul(&recip(&inner(a))));
    }
    recip(&Series::one(trunc).sub(&sum))
}

/// `qh/(1-hx) - 1/(1-x)`, expanded through the series reciprocal.
pub fn height_kernel(trunc: usize) -> Series {
    let qh = Series::constant(trunc, c(0, 1, 1, 1));
    let one_minus_hx = poly(trunc, &[(0, c(0, 0, 0, 1)), (1, c(0, 0, 1, -1))]);
    let one_minus_x = poly(trunc, &[(0, c(0, 0, 0, 1)), (1, c(0, 0, 0, -1))]);
    qh.mul(&recip(&one_minus_hx)).sub(&recip(&one_minus_x))
}

/// `sum_{j>=1} (q h^j - 1) x^(j-1)`; equal to [`height_kernel`].
pub fn height_kernel_finite(trunc: usize) -> Series {
    let terms: Vec<_> = (1..=trunc + 1)
        .map(|j| (j - 1, Ring::sub(&c(0, 1, j as u32, 1), &c(0, 0, 0, 1))))
        .collect();
    poly(trunc, &terms)
}

/// Joint series of compositions by parts, peak count and height sum.
pub fn build_hsp_series(trunc: usize) -> Series {
    let kernel = height_kernel(trunc);
    assemble(trunc, |a| {
        let lift = Series::monomial(trunc, 2 * a + 1, c(2, 0, 0, 1));
        Series::one(trunc).sub(&lift.mul(&kernel))
    })
}

/// `B_a = sum_{j=1}^{a-1} (p d^(a-j) - 1) x^(j-1)`.
pub fn depth_bracket(trunc: usize, a: usize) -> Series {
    let terms: Vec<_> = (1..a)
        .map(|j| (j - 1, Ring::sub(&c(0, 1, (a - j) as u32, 1), &c(0, 0, 0, 1))))
        .collect();
    poly(trunc, &terms)
}

/// Joint series of compositions by parts, valley count and depth sum.
pub fn build_dsv_series(trunc: usize) -> Series {
    assemble(trunc, |a| {
        let lift = Series::monomial(trunc, a + 1, c(2, 0, 0, 1));
        Series::one(trunc).sub(&lift.mul(&depth_bracket(trunc, a)))
    })
}

/// Peak-count-only series, built directly from
/// `1 / (1 - sum x^a y / (1 - y^2 x^(2a+1) (q-1)/(1-x)))`.
pub fn build_sp_series(trunc: usize) -> Series {
    let one_minus_x = poly(trunc, &[(0, c(0, 0, 0, 1)), (1, c(0, 0, 0, -1))]);
    let q_minus_1 = Series::constant(trunc, Ring::sub(&c(0, 1, 0, 1), &c(0, 0, 0, 1)));
    let kernel = q_minus_1.mul(&recip(&one_minus_x));
    assemble(trunc, |a| {
        let lift = Series::monomial(trunc, 2 * a + 1, c(2, 0, 0, 1));
        Series::one(trunc).sub(&lift.mul(&kernel))
    })
}

/// Valley-count-only series, built directly from
/// `1 / (1 - sum x^a y / (1 - y^2 x^(a+1) (x^(a-1) - 1)(p-1)/(x-1)))`.
pub fn build_sv_series(trunc: usize) -> Series {
    let x_minus_1 = poly(trunc, &[(0, c(0, 0, 0, -1)), (1, c(0, 0, 0, 1))]);
    let inv = recip(&x_minus_1);
    let p_minus_1 = Ring::sub(&c(0, 1, 0, 1), &c(0, 0, 0, 1));
    assemble(trunc, |a| {
        let top = poly(trunc, &[(a - 1, c(0, 0, 0, 1)), (0, c(0, 0, 0, -1))]);
        let lift = Series::monomial(trunc, a + 1, Ring::mul(&c(2, 0, 0, 1), &p_minus_1));
        Series::one(trunc).sub(&lift.mul(&top).mul(&inv))
    })
}

/// `1 / (1 - xy/(1-x))`: compositions counted by size and parts.
pub fn build_composition_series(trunc: usize) -> Series {
    assemble(trunc, |_| Series::one(trunc))
}

pub fn build_family_series(family: Family, trunc: usize) -> Series {
    match family {
        Family::Peak => build_hsp_series(trunc),
        Family::Valley => build_dsv_series(trunc),
    }
}

/// Derivative in `marker`, then every marker set to 1.
pub fn marker_moment(s: &Series, marker: Marker) -> TruncSeries<BigRational> {
    s.map(|m| m.derivative(marker).at_ones())
}

/// Derivative in `marker`, then count and magnitude markers set to 1; the
/// parts marker `y` is kept.
pub fn marker_moment_by_parts(s: &Series, marker: Marker) -> Series {
    assert_ne!(marker, Marker::Y);
    s.derivative(marker)
        .substitute_one(Marker::Q)
        .substitute_one(Marker::H)
}

/// `grid[n][k]` = coefficient of `x^n y^k` of a series in `x` and `y` only.
pub fn parts_grid(s: &Series) -> Vec<Vec<BigRational>> {
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(n, m)| {
            debug_assert!(m.terms().all(|(e, _)| e[1] == 0 && e[2] == 0));
            (0..=n).map(|k| m.coeff([k as u32, 0, 0])).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    #[test]
    fn kernels_agree() {
        assert_eq!(height_kernel(9), height_kernel_finite(9));
    }

    #[test]
    fn anchor_131() {
        let s = build_hsp_series(6);
        assert_eq!(s.coeff(5).coeff([3, 1, 2]), int(1));
    }

    #[test]
    fn unique_valley_of_five() {
        let s = build_dsv_series(6);
        assert_eq!(s.coeff(5).coeff([3, 1, 1]), int(1));
    }

    #[test]
    fn moments_hsp() {
        let s = build_hsp_series(10);
        let h = marker_moment(&s, Marker::H);
        assert_eq!(h.coeff(4), &int(1));
        assert_eq!(h.coeff(5), &int(4));
        assert_eq!(h.coeff(6), &int(12));
        let q = marker_moment(&s, Marker::Q);
        assert_eq!(q.coeff(5), &int(3));
    }

    #[test]
    fn moment_of_marker_free_series_vanishes() {
        let s = build_composition_series(6);
        assert!(marker_moment(&s, Marker::Q).coeffs().iter().all(num_traits::Zero::is_zero));
    }
}
