//! Closed rational generating functions for the height and depth totals,
//! expanded as numerator times the series reciprocal of the denominator.

use num_rational::BigRational;
use serde::Serialize;

use super::gf::{parts_grid, Series};
use super::marker::MarkerPoly;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RationalGf {
    /// `x^4 / ((1-2x)^2 (1-x^3))`
    HspTotal,
    /// `y^3 x^4 / ((1-x^3) (1-x-yx)^2)`
    HspNk,
    /// `(x^7 + x^5 - 2x^6) / ((1-2x)^2 (1-x^3) (1-x^2)^2)`
    DsvTotal,
    /// `y^3 (x^7 + x^5 - 2x^6) / ((1-x^3) (1-x^2)^2 (1-x-yx)^2)`
    DsvNk,
    /// `(2x^7y^3 - x^6y^3 - x^4y^3) / ((1-x^3) (1-x^2) (1-x-yx)^2)` as
    /// commonly printed; does not match the depth totals and is kept only so
    /// the mismatch can be reported.
    DsvNkPrinted,
}

impl RationalGf {
    pub fn has_parts(self) -> bool {
        !matches!(self, RationalGf::HspTotal | RationalGf::DsvTotal)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GfTable {
    /// `values[n]`
    Total(Vec<BigRational>),
    /// `values[n][k]` for `k` in `0..=n`
    Grid(Vec<Vec<BigRational>>),
}

/// A polynomial in x given as `(degree, y-exponent, coefficient)` terms.
fn xy_poly(trunc: usize, terms: &[(usize, u32, i64)]) -> Series {
    let mut s = Series::zero(trunc);
    for &(d, ey, v) in terms {
        s = s.add(&Series::monomial(trunc, d, MarkerPoly::term(ey, 0, 0, v)));
    }
    s
}

fn product(trunc: usize, factors: &[&[(usize, u32, i64)]]) -> Series {
    factors
        .iter()
        .fold(Series::one(trunc), |acc, f| acc.mul(&xy_poly(trunc, f)))
}

const ONE_MINUS_2X: &[(usize, u32, i64)] = &[(0, 0, 1), (1, 0, -2)];
const ONE_MINUS_X2: &[(usize, u32, i64)] = &[(0, 0, 1), (2, 0, -1)];
const ONE_MINUS_X3: &[(usize, u32, i64)] = &[(0, 0, 1), (3, 0, -1)];
const ONE_MINUS_X_MINUS_YX: &[(usize, u32, i64)] = &[(0, 0, 1), (1, 0, -1), (1, 1, -1)];

pub fn numerator_denominator(which: RationalGf, trunc: usize) -> (Series, Series) {
    use RationalGf::*;
    let (num, den): (&[(usize, u32, i64)], Vec<&[(usize, u32, i64)]>) = match which {
        HspTotal => (&[(4, 0, 1)], vec![ONE_MINUS_2X, ONE_MINUS_2X, ONE_MINUS_X3]),
        HspNk => (
            &[(4, 3, 1)],
            vec![ONE_MINUS_X3, ONE_MINUS_X_MINUS_YX, ONE_MINUS_X_MINUS_YX],
        ),
        DsvTotal => (
            &[(7, 0, 1), (5, 0, 1), (6, 0, -2)],
            vec![ONE_MINUS_2X, ONE_MINUS_2X, ONE_MINUS_X3, ONE_MINUS_X2, ONE_MINUS_X2],
        ),
        DsvNk => (
            &[(7, 3, 1), (5, 3, 1), (6, 3, -2)],
            vec![
                ONE_MINUS_X3,
                ONE_MINUS_X2,
                ONE_MINUS_X2,
                ONE_MINUS_X_MINUS_YX,
                ONE_MINUS_X_MINUS_YX,
            ],
        ),
        DsvNkPrinted => (
            &[(7, 3, 2), (6, 3, -1), (4, 3, -1)],
            vec![
                ONE_MINUS_X3,
                ONE_MINUS_X2,
                ONE_MINUS_X_MINUS_YX,
                ONE_MINUS_X_MINUS_YX,
            ],
        ),
    };
    (xy_poly(trunc, num), product(trunc, &den))
}

pub fn expand(which: RationalGf, trunc: usize) -> Result<Series> {
    let (num, den) = numerator_denominator(which, trunc);
    Ok(num.mul(&den.reciprocal()?))
}

pub fn rational_gf_coeffs(which: RationalGf, trunc: usize) -> Result<GfTable> {
    let s = expand(which, trunc)?;
    Ok(if which.has_parts() {
        GfTable::Grid(parts_grid(&s))
    } else {
        GfTable::Total(s.coeffs().iter().map(|m| m.coeff([0, 0, 0])).collect())
    })
}

impl GfTable {
    pub fn total(&self, n: usize) -> BigRational {
        match self {
            GfTable::Total(v) => v[n].clone(),
            GfTable::Grid(g) => g[n].iter().sum(),
        }
    }

    pub fn cell(&self, n: usize, k: usize) -> Option<&BigRational> {
        match self {
            GfTable::Total(_) => None,
            GfTable::Grid(g) => g.get(n).and_then(|row| row.get(k)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    #[test]
    fn totals_anchor() {
        let h = rational_gf_coeffs(RationalGf::HspTotal, 8).unwrap();
        assert_eq!(h.total(5), int(4));
        assert_eq!(h.total(8), int(84));
        let d = rational_gf_coeffs(RationalGf::DsvTotal, 8).unwrap();
        assert_eq!(d.total(5), int(1));
        assert_eq!(d.total(8), int(17));
    }

    #[test]
    fn hsp_nk_anchor() {
        let g = rational_gf_coeffs(RationalGf::HspNk, 6).unwrap();
        assert_eq!(g.cell(5, 3), Some(&int(2)));
        assert_eq!(g.cell(5, 4), Some(&int(2)));
    }

    #[test]
    fn printed_depth_grid_goes_negative() {
        let g = rational_gf_coeffs(RationalGf::DsvNkPrinted, 6).unwrap();
        assert_eq!(g.cell(4, 3), Some(&int(-1)));
    }

    #[test]
    fn depth_grid_rows_sum_to_totals() {
        let g = rational_gf_coeffs(RationalGf::DsvNk, 14).unwrap();
        let t = rational_gf_coeffs(RationalGf::DsvTotal, 14).unwrap();
        for n in 0..=14 {
            assert_eq!(g.total(n), t.total(n), "n={n}");
        }
    }
}
