//! Summation formulas for the per-(n, k) height and depth totals and for the
//! symmetric-peak count.
//!
//! A peak `b m b` (`m > b`) or valley `b m b` (`m < b`) sits in one of
//! `k - 2` window positions; the remaining `k - 3` parts form a composition
//! of `n - 2b - m`, counted by `binom(n - 2b - m - 1, k - 4)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridValue {
    pub n: usize,
    pub k: usize,
    pub value: BigInt,
}

/// Binomial coefficient, zero whenever `a < 0`, `b < 0` or `a < b`.
pub fn binom(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || a < b {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

/// `sum_{m=2}^{n-k+1} sum_{b=1}^{min(m-1, t)} binom(n-2b-m-1, k-4) * weight(m, b)`
/// with `t = floor((n-m-k+3)/2)`.
fn peak_sum(n: i64, k: i64, weight: impl Fn(i64, i64) -> i64) -> BigInt {
    let mut acc = BigInt::zero();
    for m in 2..=n - k + 1 {
        let t = (n - m - k + 3).div_euclid(2);
        for b in 1..=(m - 1).min(t) {
            let c = binom(n - 2 * b - m - 1, k - 4);
            if !c.is_zero() {
                acc += c * weight(m, b);
            }
        }
    }
    acc * (k - 2)
}

/// Total height of symmetric peaks over compositions of `n` with `k` parts.
///
/// For `k = 3` each term `(3m - n)/2` is only counted when `b = (n-m)/2`
/// satisfies `1 <= b <= m - 1`, i.e. when `b m b` really is a peak.
pub fn hsp_nk(n: usize, k: usize) -> BigInt {
    let (n, k) = (n as i64, k as i64);
    match k {
        0..=2 => BigInt::zero(),
        3 => {
            let mut acc = BigInt::zero();
            for m in 2..=n - 2 {
                if (n - m) % 2 != 0 {
                    continue;
                }
                let b = (n - m) / 2;
                if 1 <= b && b < m {
                    acc += (3 * m - n) / 2;
                }
            }
            acc
        }
        _ => peak_sum(n, k, |m, b| m - b),
    }
}

/// [`hsp_nk`] with the `k = 3` case read literally: every `m` in `2..=n-2`
/// with `n - m` even contributes `(3m - n)/2`, even when negative.
pub fn hsp_nk_literal(n: usize, k: usize) -> BigInt {
    if k != 3 {
        return hsp_nk(n, k);
    }
    let n = n as i64;
    let mut acc = BigInt::zero();
    for m in 2..=n - 2 {
        if (n - m) % 2 == 0 {
            acc += (3 * m - n) / 2;
        }
    }
    acc
}

/// Total depth of symmetric valleys over compositions of `n` with `k` parts.
pub fn dsv_nk(n: usize, k: usize) -> BigInt {
    let (n, k) = (n as i64, k as i64);
    match k {
        0..=2 => BigInt::zero(),
        3 => {
            let mut acc = BigInt::zero();
            for m in 1..=(n - 2).div_euclid(3) {
                if (n - m) % 2 != 0 {
                    continue;
                }
                let b = (n - m) / 2;
                if b > m {
                    acc += (n - 3 * m) / 2;
                }
            }
            acc
        }
        _ => {
            let mut acc = BigInt::zero();
            for m in 1..=(n - k + 1).div_euclid(3) {
                for b in m + 1..=(n - m - (k - 3)).div_euclid(2) {
                    let c = binom(n - 2 * b - m - 1, k - 4);
                    if !c.is_zero() {
                        acc += c * (b - m);
                    }
                }
            }
            acc * (k - 2)
        }
    }
}

/// Number of symmetric peaks over compositions of `n` with `k >= 4` parts.
pub fn sp_count_nk(n: usize, k: usize) -> Result<BigInt> {
    if k < 4 {
        return Err(Error::KOutOfRange { k, min: 4 });
    }
    Ok(peak_sum(n as i64, k as i64, |_, _| 1))
}

/// Cells `0 <= k <= n <= n_max` in row-major order.
pub fn grid(n_max: usize, f: impl Fn(usize, usize) -> BigInt) -> Vec<GridValue> {
    (0..=n_max)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .map(|(n, k)| GridValue {
            n,
            k,
            value: f(n, k),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_extension() {
        assert_eq!(binom(0, 0), 1.into());
        assert_eq!(binom(4, 2), 6.into());
        assert_eq!(binom(-1, 0), 0.into());
        assert_eq!(binom(3, 5), 0.into());
        assert_eq!(binom(3, -1), 0.into());
        assert_eq!(binom(30, 15), 155117520.into());
    }

    #[test]
    fn height_cells() {
        assert_eq!(hsp_nk(5, 3), 2.into());
        assert_eq!(hsp_nk(5, 4), 2.into());
        for n in 0..12 {
            assert_eq!(hsp_nk(n, 2), 0.into());
        }
    }

    #[test]
    fn literal_reading_differs_at_eight() {
        assert_eq!(hsp_nk(8, 3), 7.into());
        assert_eq!(hsp_nk_literal(8, 3), 6.into());
    }

    #[test]
    fn depth_cells() {
        assert_eq!(dsv_nk(5, 3), 1.into());
        assert_eq!(dsv_nk(8, 3), 1.into());
        assert_eq!(dsv_nk(4, 4), 0.into());
    }

    #[test]
    fn peak_counts() {
        assert_eq!(sp_count_nk(5, 4).unwrap(), 2.into());
        // 1131, 1212, 1311, 2121
        assert_eq!(sp_count_nk(6, 4).unwrap(), 4.into());
        for n in 4..12 {
            assert_eq!(sp_count_nk(n, n).unwrap(), 0.into());
        }
        assert_eq!(
            sp_count_nk(5, 3).unwrap_err(),
            Error::KOutOfRange { k: 3, min: 4 }
        );
    }
}
