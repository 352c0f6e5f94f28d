//! Exact moments over words whose letters are restricted to `1..=L`.
//!
//! With `p = r/s`, letter `c` gets the integer weight
//! `W_c = r (s-r)^(c-1) s^(L-c)`, so `P{X = c} = W_c / s^L` and all
//! bookkeeping stays in integers until the final division by `s^(L n)`.
//! The state is the last two letters; for each state the DP keeps the
//! captured mass and the first two power sums of the statistic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::GeomParams;
use crate::composition::Stat;
use crate::numeric::{int, pow};

#[derive(Debug, Clone, PartialEq)]
pub struct OracleMoments {
    pub n: usize,
    pub letter_cap: usize,
    /// `P{every letter <= L}`
    pub captured_mass: BigRational,
    /// `E[stat; every letter <= L]`
    pub mean: BigRational,
    /// `E[stat^2; every letter <= L]`
    pub second_moment: BigRational,
    /// the true mean lies in `[mean, mean + tail_bound]`
    pub tail_bound: BigRational,
    /// the true second moment lies in `[second_moment, second_moment + second_moment_tail_bound]`
    pub second_moment_tail_bound: BigRational,
}

impl OracleMoments {
    /// `second_moment - mean^2` of the captured part.
    pub fn variance(&self) -> BigRational {
        &self.second_moment - &self.mean * &self.mean
    }

    /// Interval guaranteed to contain the true variance.
    pub fn variance_interval(&self) -> (BigRational, BigRational) {
        let hi_mean = &self.mean + &self.tail_bound;
        let lo = &self.second_moment - &hi_mean * &hi_mean;
        let hi = &self.second_moment + &self.second_moment_tail_bound - &self.mean * &self.mean;
        (lo, hi)
    }
}

/// Contribution of the window `b c b`.
fn delta(stat: Stat, b: usize, c: usize) -> u64 {
    match stat {
        Stat::Sp if b < c => 1,
        Stat::Hsp if b < c => (c - b) as u64,
        Stat::Sv if b > c => 1,
        Stat::Dsv if b > c => (b - c) as u64,
        _ => 0,
    }
}

struct Tables {
    mass: Vec<BigInt>,
    m1: Vec<BigInt>,
    m2: Vec<BigInt>,
}

fn column_sums(v: &[BigInt], l: usize) -> Vec<BigInt> {
    (0..l)
        .map(|c| (0..l).map(|b| &v[b * l + c]).sum())
        .collect()
}

fn step(stat: Stat, t: &Tables, w: &[BigInt]) -> Tables {
    let l = w.len();
    let (cp, c1, c2) = (column_sums(&t.mass, l), column_sums(&t.m1, l), column_sums(&t.m2, l));
    let rows: Vec<_> = (0..l)
        .into_par_iter()
        .map(|c| {
            let mut rp = Vec::with_capacity(l);
            let mut r1 = Vec::with_capacity(l);
            let mut r2 = Vec::with_capacity(l);
            for d in 0..l {
                // the new window is (d, c, d) when the dropped letter equals d
                let dl = BigInt::from(delta(stat, d, c));
                let back = d * l + c;
                let (mut s1, mut s2) = (c1[c].clone(), c2[c].clone());
                if !dl.is_zero() {
                    s1 += &dl * &t.mass[back];
                    s2 += BigInt::from(2) * &dl * &t.m1[back] + &dl * &dl * &t.mass[back];
                }
                rp.push(&w[d] * &cp[c]);
                r1.push(&w[d] * s1);
                r2.push(&w[d] * s2);
            }
            (rp, r1, r2)
        })
        .collect();
    let mut out = Tables {
        mass: Vec::with_capacity(l * l),
        m1: Vec::with_capacity(l * l),
        m2: Vec::with_capacity(l * l),
    };
    for (rp, r1, r2) in rows {
        out.mass.extend(rp);
        out.m1.extend(r1);
        out.m2.extend(r2);
    }
    out
}

fn tail_bounds(stat: Stat, params: &GeomParams, l: usize, miss: &BigRational) -> (BigRational, BigRational) {
    let n = params.n;
    if n < 3 {
        return (BigRational::zero(), BigRational::zero());
    }
    match stat {
        Stat::Sp | Stat::Sv => {
            let m = int(n as i64 - 2);
            (&m * miss, &m * &m * miss)
        }
        // stat <= sum of letters S; E[S 1{X_i > L}] summed over positions
        Stat::Hsp | Stat::Dsv => {
            let (p, q) = (&params.p, &params.q);
            let ql = pow(q, l);
            let lr = int(l as i64);
            let rest = int(n as i64 - 1);
            let inv_p = BigRational::one() / p;
            let ex1 = &ql * (&lr + &inv_p);
            let ex2 = &ql * (&lr * &lr + int(2) * &lr * &inv_p + (BigRational::one() + q) * &inv_p * &inv_p);
            let er = &rest * &inv_p;
            let er2 = &rest * q * &inv_p * &inv_p + &er * &er;
            let nn = int(n as i64);
            let b1 = &nn * (&ex1 + &er * &ql);
            let b2 = &nn * (ex2 + int(2) * &ex1 * &er + &er2 * &ql);
            (b1, b2)
        }
    }
}

/// Oracle moments for every length `0..=params.n` in one pass.
pub fn exact_oracle_moments_upto(stat: Stat, params: &GeomParams, letter_cap: usize) -> Vec<OracleMoments> {
    assert!(letter_cap >= 2, "letter cap must be at least 2");
    let l = letter_cap;
    let (r, s) = (params.p.numer().clone(), params.p.denom().clone());
    let w: Vec<BigInt> = (1..=l)
        .map(|c| &r * num_traits::pow(&s - &r, c - 1) * num_traits::pow(s.clone(), l - c))
        .collect();
    let scale = num_traits::pow(s.clone(), l);
    let single: BigInt = w.iter().sum();

    let finish = |n: usize, mass: BigInt, m1: BigInt, m2: BigInt| {
        let den = num_traits::pow(scale.clone(), n);
        let captured = BigRational::new(mass, den.clone());
        let miss = BigRational::one() - &captured;
        let at_n = GeomParams { n, ..params.clone() };
        let (tail_bound, second_moment_tail_bound) = tail_bounds(stat, &at_n, l, &miss);
        OracleMoments {
            n,
            letter_cap: l,
            captured_mass: captured,
            mean: BigRational::new(m1, den.clone()),
            second_moment: BigRational::new(m2, den),
            tail_bound,
            second_moment_tail_bound,
        }
    };

    let mut out = Vec::with_capacity(params.n + 1);
    out.push(finish(0, BigInt::one(), BigInt::zero(), BigInt::zero()));
    if params.n >= 1 {
        out.push(finish(1, single, BigInt::zero(), BigInt::zero()));
    }
    if params.n < 2 {
        return out;
    }
    let mut t = Tables {
        mass: (0..l * l).map(|i| &w[i / l] * &w[i % l]).collect(),
        m1: vec![BigInt::zero(); l * l],
        m2: vec![BigInt::zero(); l * l],
    };
    let total = |t: &Tables| {
        (
            t.mass.iter().sum::<BigInt>(),
            t.m1.iter().sum::<BigInt>(),
            t.m2.iter().sum::<BigInt>(),
        )
    };
    let (a, b, c) = total(&t);
    out.push(finish(2, a, b, c));
    for n in 3..=params.n {
        t = step(stat, &t, &w);
        let (a, b, c) = total(&t);
        out.push(finish(n, a, b, c));
    }
    out
}

pub fn exact_oracle_moments(stat: Stat, params: &GeomParams, letter_cap: usize) -> OracleMoments {
    exact_oracle_moments_upto(stat, params, letter_cap)
        .pop()
        .expect("at least length 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::stat_record;
    use crate::numeric::rat;

    /// Enumerates every word over `1..=l` directly.
    fn brute(stat: Stat, p: &BigRational, n: usize, l: usize) -> (BigRational, BigRational) {
        let q = BigRational::one() - p;
        let prob = |a: u64| p * pow(&q, a as usize - 1);
        let mut word = vec![1u64; n];
        let (mut m1, mut m2) = (BigRational::zero(), BigRational::zero());
        loop {
            let w: BigRational = word.iter().map(|&a| prob(a)).product();
            let y = int(stat_record(&word).get(stat) as i64);
            m1 += &w * &y;
            m2 += &w * &y * &y;
            let mut i = n;
            loop {
                if i == 0 {
                    return (m1, m2);
                }
                i -= 1;
                if word[i] < l as u64 {
                    word[i] += 1;
                    break;
                }
                word[i] = 1;
            }
        }
    }

    #[test]
    fn matches_word_enumeration() {
        let p = rat(2, 5);
        for stat in Stat::ALL {
            let params = GeomParams::new(p.clone(), 5).unwrap();
            let all = exact_oracle_moments_upto(stat, &params, 4);
            for (n, o) in all.iter().enumerate() {
                let (m1, m2) = brute(stat, &p, n, 4);
                assert_eq!(o.mean, m1, "{stat:?} n={n}");
                assert_eq!(o.second_moment, m2, "{stat:?} n={n}");
            }
        }
    }

    #[test]
    fn bounds_contain_exact_mean() {
        let params = GeomParams::new(rat(1, 2), 6).unwrap();
        let o = exact_oracle_moments(Stat::Sp, &params, 12);
        let exact = rat(4, 7);
        assert!(o.mean <= exact && exact <= &o.mean + &o.tail_bound);
    }

    #[test]
    fn short_words_have_zero_mean() {
        let params = GeomParams::new(rat(1, 3), 2).unwrap();
        assert!(exact_oracle_moments(Stat::Hsp, &params, 10).mean.is_zero());
    }
}
