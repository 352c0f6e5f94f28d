//! Closed forms for the total height of symmetric peaks and the total depth
//! of symmetric valleys over all compositions of `n`, evaluated exactly in
//! Q(√-3), plus an independent check through the linear recurrence induced
//! by the generating-function denominators.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::composition::{aggregate, Stat};
use crate::error::{Error, Result};
use crate::numeric::{int, pow, rat};
use crate::quad::QuadNumber;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Total {
    Hsp,
    Dsv,
}

impl Total {
    pub fn stat(self) -> Stat {
        match self {
            Total::Hsp => Stat::Hsp,
            Total::Dsv => Stat::Dsv,
        }
    }
}

/// `(-33 - 15√-3)(-2)^n / (441 (1+√-3)^(n+1))` plus its conjugate.
fn conjugate_pair(n: usize) -> QuadNumber {
    let two_pow = pow(&int(-2), n);
    let numer = QuadNumber::from_ints(-33, -15).scale(&two_pow);
    let denom = QuadNumber::from_ints(1, 1).pow(n as u64 + 1).scale(&int(441));
    let term = &numer / &denom;
    &term + &term.conj()
}

/// Unreduced value of the height closed form; the imaginary part is
/// expected to vanish.
pub fn hsp_closed_exact(n: usize) -> QuadNumber {
    // (7n - 24)/49 * 2^(n-1), with 2^(-1) at n = 0
    let lead = rat(7 * n as i64 - 24, 49) * pow(&int(2), n) / int(2);
    let rest = &conjugate_pair(n) + &QuadNumber::from_rational(rat(1, 3));
    &QuadNumber::from_rational(lead) + &rest
}

pub fn dsv_closed_exact(n: usize) -> QuadNumber {
    let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
    let alt = rat(7 - 6 * n as i64, 108) * sign;
    let lead = rat(21 * n as i64 - 79, 1323) * pow(&int(2), n);
    let rest = &conjugate_pair(n) + &QuadNumber::from_rational(rat(1, 12));
    &QuadNumber::from_rational(alt + lead) + &rest
}

pub fn closed_exact(which: Total, n: usize) -> QuadNumber {
    match which {
        Total::Hsp => hsp_closed_exact(n),
        Total::Dsv => dsv_closed_exact(n),
    }
}

fn to_count(n: usize, v: QuadNumber) -> Result<BigInt> {
    let err = || Error::NonIntegral {
        n,
        value: v.to_string(),
    };
    if !v.is_rational() || !v.re.is_integer() || v.re.is_negative() {
        return Err(err());
    }
    Ok(v.re.to_integer())
}

pub fn hsp_closed(n: usize) -> Result<BigInt> {
    to_count(n, hsp_closed_exact(n))
}

pub fn dsv_closed(n: usize) -> Result<BigInt> {
    to_count(n, dsv_closed_exact(n))
}

pub fn closed(which: Total, n: usize) -> Result<BigInt> {
    to_count(n, closed_exact(which, n))
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Denominator of the rational generating function of the totals, and the
/// number of initial terms the recurrence needs as seeds.
pub fn denominator(which: Total) -> (Vec<i64>, usize) {
    let one_minus_2x = [1, -2];
    let one_minus_x2 = [1, 0, -1];
    let one_minus_x3 = [1, 0, 0, -1];
    let mut factors: Vec<&[i64]> = vec![&one_minus_2x, &one_minus_2x, &one_minus_x3];
    let numerator_degree = match which {
        Total::Hsp => 4,
        Total::Dsv => {
            factors.extend([&one_minus_x2[..], &one_minus_x2[..]]);
            7
        }
    };
    let den = factors.iter().fold(vec![1], |acc, f| poly_mul(&acc, f));
    let seeds = (den.len() - 1).max(numerator_degree + 1);
    (den, seeds)
}

/// Extends `seeds` to length `len` with `sum_i den[i] a_(n-i) = 0`.
pub fn recurrence_sequence(den: &[i64], seeds: &[BigInt], len: usize) -> Vec<BigInt> {
    assert_eq!(den[0], 1);
    let mut a: Vec<BigInt> = seeds.iter().take(len).cloned().collect();
    while a.len() < len {
        let n = a.len();
        let mut next = BigInt::zero();
        for (i, c) in den.iter().enumerate().skip(1) {
            if i <= n && *c != 0 {
                next -= &a[n - i] * BigInt::from(*c);
            }
        }
        a.push(next);
    }
    a
}

#[derive(Debug, Clone)]
pub struct RecurrenceReport {
    pub which: Total,
    pub n_max: usize,
    /// number of leading terms taken from brute force
    pub seeds: usize,
    pub recurrence: Vec<BigInt>,
    pub closed: Vec<Option<BigInt>>,
    pub mismatches: Vec<usize>,
}

impl RecurrenceReport {
    pub fn all_equal(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn brute_force_total(which: Total, n: usize) -> BigInt {
    aggregate(n as u64).totals.stat(which.stat()).clone().into()
}

pub fn closed_recurrence_check(which: Total, n_max: usize) -> RecurrenceReport {
    let (den, seeds) = denominator(which);
    let seed_vals: Vec<BigInt> = (0..seeds.min(n_max + 1))
        .map(|n| brute_force_total(which, n))
        .collect();
    let recurrence = recurrence_sequence(&den, &seed_vals, n_max + 1);
    let closed: Vec<Option<BigInt>> = (0..=n_max).map(|n| closed(which, n).ok()).collect();
    let mismatches = (0..=n_max)
        .filter(|&n| closed[n].as_ref() != Some(&recurrence[n]))
        .collect();
    RecurrenceReport {
        which,
        n_max,
        seeds,
        recurrence,
        closed,
        mismatches,
    }
}

/// Smallest `n0` such that the closed form equals brute force on `n0..=n_max`.
pub fn validity_start(which: Total, n_max: usize) -> Option<usize> {
    let mut start = None;
    for n in (0..=n_max).rev() {
        match closed(which, n) {
            Ok(v) if v == brute_force_total(which, n) => start = Some(n),
            _ => break,
        }
    }
    start
}

pub fn as_rational(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchors() {
        assert_eq!(hsp_closed(5).unwrap(), 4.into());
        assert_eq!(hsp_closed(4).unwrap(), 1.into());
        assert_eq!(hsp_closed(8).unwrap(), 84.into());
        assert_eq!(dsv_closed(8).unwrap(), 17.into());
        assert_eq!(dsv_closed(5).unwrap(), 1.into());
        assert_eq!(dsv_closed(3).unwrap(), 0.into());
    }

    #[test]
    fn small_n_values() {
        for n in 0..4 {
            assert_eq!(hsp_closed(n).unwrap(), 0.into(), "n={n}");
        }
    }

    #[test]
    fn denominators() {
        let (den, seeds) = denominator(Total::Hsp);
        assert_eq!(den, vec![1, -4, 4, -1, 4, -4]);
        assert_eq!(seeds, 5);
        let (den, seeds) = denominator(Total::Dsv);
        assert_eq!(den.len(), 10);
        assert_eq!(seeds, 9);
    }

    #[test]
    fn recurrence_matches_tiny_range() {
        let r = closed_recurrence_check(Total::Hsp, 3);
        assert!(r.all_equal());
        assert!(r.recurrence.iter().all(Zero::is_zero));
        assert!(closed_recurrence_check(Total::Hsp, 18).all_equal());
        assert!(closed_recurrence_check(Total::Dsv, 18).all_equal());
    }

    #[test]
    fn non_integral_is_reported() {
        let v = QuadNumber::from_rational(rat(1, 2));
        assert!(matches!(to_count(3, v), Err(Error::NonIntegral { n: 3, .. })));
        assert!(to_count(3, QuadNumber::from_ints(1, 1)).is_err());
    }
}
