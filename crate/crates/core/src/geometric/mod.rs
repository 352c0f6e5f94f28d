//! Statistics of words of i.i.d. geometric letters, `P{X = a} = p q^(a-1)`.

mod jet;
mod marker_series;
mod oracle;
mod sampler;

pub use jet::Jet;
pub use marker_series::{geometric_marker_series, inner_kernel, series_moments, ExpSum, SeriesMoments};
pub use oracle::{exact_oracle_moments, exact_oracle_moments_upto, OracleMoments};
pub use sampler::{monte_carlo, monte_carlo_many, sample_word, word_stat, MCSummary};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::composition::Stat;
use crate::error::{Error, Result};
use crate::numeric::{int, pow};

#[derive(Debug, Clone, PartialEq)]
pub struct GeomParams {
    pub p: BigRational,
    pub q: BigRational,
    pub n: usize,
}

impl GeomParams {
    pub fn new(p: BigRational, n: usize) -> Result<Self> {
        if p <= BigRational::zero() || p > BigRational::one() {
            return Err(Error::InvalidProbability(p.to_string()));
        }
        let q = BigRational::one() - &p;
        Ok(Self { p, q, n })
    }
}

fn n_minus(params: &GeomParams, c: i64) -> BigRational {
    int(params.n as i64 - c)
}

/// `E[stat]` on words of length `n`; zero when `n < 3`.
pub fn expected_value(stat: Stat, params: &GeomParams) -> BigRational {
    if params.n < 3 {
        return BigRational::zero();
    }
    let (p, q) = (&params.p, &params.q);
    let one = BigRational::one();
    let q2 = q * q;
    let q3 = &q2 * q;
    let per_window = match stat {
        Stat::Sp => p * p * q / (&one - &q3),
        Stat::Sv => p * p * (one.clone() / (&one - &q2) - one.clone() / (&one - &q3)),
        Stat::Hsp => p * q / (&one - &q3),
        Stat::Dsv => {
            let opq = &one + q;
            q * (p / (&one - &q3) - one.clone() / (&opq * &opq))
        }
    };
    per_window * n_minus(params, 2)
}

/// The printed variance expressions, evaluated as written. There is none for
/// `dsv`.
pub fn variance_formula(stat: Stat, params: &GeomParams) -> Result<BigRational> {
    let (p, q) = (&params.p, &params.q);
    let one = BigRational::one();
    let q3 = pow(q, 3);
    let q5 = pow(q, 5);
    let n2 = n_minus(params, 2);
    let n4 = n_minus(params, 4);
    let n5 = n_minus(params, 5);
    let n6 = n_minus(params, 6);
    let two = int(2);
    // p > 0, so none of these vanish
    let a3 = &one - &q3;
    let a5 = &one - &q5;
    let v = match stat {
        Stat::Sp => {
            let c24 = int(24) * pow(&(&one - q), 3);
            let bracket = p * &n5 / c24 + one.clone() / &a5;
            &two * &n4 * pow(p, 3) * pow(q, 2) * bracket + &n2 * p * p * q / &a3
                - &n2 * &n2 * pow(p, 4) * pow(q, 2) / (&a3 * &a3)
        }
        Stat::Hsp => {
            let pq2 = p * p * q * q;
            &n5 * &n6 * &pq2 / (&a3 * &a3) + &two * &n4 * p * q * q / &a5
                + &n2 / &a3 * (&two * q * q + p * q)
                - &pq2 / (&a3 * &a3) * &n2 * &n2
        }
        Stat::Sv => {
            let a2 = &one - q * q;
            let e = one.clone() / &a2 - one.clone() / &a3;
            pow(p, 4) * q * q / &a3 * &n5 * &n6 + &two * pow(p, 3) / &a5 * &n5 + p * p * &e * &n2
                - pow(p, 4) * &e * &e * &n2 * &n2
        }
        Stat::Dsv => return Err(Error::NoVarianceFormula("dsv")),
    };
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn params(p: BigRational, n: usize) -> GeomParams {
        GeomParams::new(p, n).unwrap()
    }

    #[test]
    fn half_anchors() {
        let g = params(rat(1, 2), 9);
        assert_eq!(expected_value(Stat::Sp, &g), int(1));
        assert_eq!(expected_value(Stat::Hsp, &g), int(2));
        assert_eq!(expected_value(Stat::Sv, &g), rat(7, 21));
        assert_eq!(expected_value(Stat::Dsv, &g), rat(28, 63));
        assert!(expected_value(Stat::Sp, &params(rat(1, 2), 2)).is_zero());
    }

    #[test]
    fn printed_sp_variance_at_ten() {
        let v = variance_formula(Stat::Sp, &params(rat(1, 2), 10)).unwrap();
        let expect = int(12) * rat(1, 32) * (rat(5, 6) + rat(32, 31)) + rat(8, 7) - rat(64, 49);
        assert_eq!(v, expect);
        let big = variance_formula(Stat::Sp, &params(rat(1, 2), 100)).unwrap();
        assert!(big < BigRational::zero());
    }

    #[test]
    fn probability_range() {
        assert!(GeomParams::new(int(0), 3).is_err());
        assert!(GeomParams::new(rat(3, 2), 3).is_err());
        assert!(GeomParams::new(int(1), 3).is_ok());
        assert!(variance_formula(Stat::Dsv, &params(rat(1, 2), 5)).is_err());
    }
}
