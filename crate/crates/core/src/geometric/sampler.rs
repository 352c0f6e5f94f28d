//! Seeded Monte Carlo over geometric words.
//!
//! Trial `i` under seed `s` draws from a ChaCha8 stream: the generator is
//! seeded with `seed_from_u64(s)`, switched to stream `i`, and each letter
//! consumes one `next_u64`. The top 52 bits `x` give
//! `U = (x + 1/2) / 2^52`, strictly inside `(0, 1)`, and the letter is
//! `1 + floor(ln U / ln q)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::GeomParams;
use crate::composition::{stat_record, Stat};
use crate::numeric::to_f64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MCSummary {
    pub stat: &'static str,
    pub trials: u64,
    pub mean: f64,
    /// unbiased, denominator `trials - 1`
    pub variance: f64,
    pub std_error: f64,
    /// standard error of `variance`, from the sample fourth central moment
    pub variance_std_error: f64,
    pub seed: u64,
}

fn uniform(x: u64) -> f64 {
    ((x >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
}

pub fn sample_word(params: &GeomParams, seed: u64, index: u64) -> Vec<u64> {
    let n = params.n;
    if params.q == BigRational::from_integer(0.into()) {
        return vec![1; n];
    }
    let ln_q = to_f64(&params.q).ln();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    (0..n)
        .map(|_| 1 + (uniform(rng.next_u64()).ln() / ln_q).floor() as u64)
        .collect()
}

pub fn word_stat(stat: Stat, word: &[u64]) -> u64 {
    stat_record(word).get(stat)
}

#[derive(Default, Clone, Copy)]
struct PowerSums([u128; 4]);

impl PowerSums {
    fn push(&mut self, y: u64) {
        let y = y as u128;
        let mut t = y;
        for s in &mut self.0 {
            *s += t;
            t *= y;
        }
    }

    fn merge(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
        self
    }
}

fn summarize(stat: Stat, sums: PowerSums, trials: u64, seed: u64) -> MCSummary {
    let t = BigRational::from_integer(trials.into());
    let [s1, s2, s3, s4] = sums.0.map(|v| BigRational::from_integer(BigInt::from(v)));
    let mu = &s1 / &t;
    let m2 = &s2 / &t - &mu * &mu;
    let m4 = &s4 / &t - BigRational::from_integer(4.into()) * &mu * &s3 / &t
        + BigRational::from_integer(6.into()) * &mu * &mu * &s2 / &t
        - BigRational::from_integer(3.into()) * &mu * &mu * &mu * &mu;
    let (variance, var_se) = if trials > 1 {
        let one = BigRational::from_integer(1.into());
        let var = &m2 * &t / (&t - &one);
        let three = BigRational::from_integer(3.into());
        let spread = &m4 - &var * &var * (&t - &three) / (&t - &one);
        (to_f64(&var), (to_f64(&spread).max(0.0) / trials as f64).sqrt())
    } else {
        (0.0, 0.0)
    };
    MCSummary {
        stat: stat.name(),
        trials,
        mean: to_f64(&mu),
        variance,
        std_error: (variance / trials as f64).sqrt(),
        variance_std_error: var_se,
        seed,
    }
}

/// One pass over `trials` words, summarized for each statistic in `stats`.
pub fn monte_carlo_many(stats: &[Stat], params: &GeomParams, trials: u64, seed: u64) -> Vec<MCSummary> {
    assert!(trials >= 1, "at least one trial");
    let sums = (0..trials)
        .into_par_iter()
        .fold(
            || vec![PowerSums::default(); stats.len()],
            |mut acc, i| {
                let word = sample_word(params, seed, i);
                let rec = stat_record(&word);
                for (s, stat) in acc.iter_mut().zip(stats) {
                    s.push(rec.get(*stat));
                }
                acc
            },
        )
        .reduce(
            || vec![PowerSums::default(); stats.len()],
            |a, b| a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect(),
        );
    stats
        .iter()
        .zip(sums)
        .map(|(stat, s)| summarize(*stat, s, trials, seed))
        .collect()
}

pub fn monte_carlo(stat: Stat, params: &GeomParams, trials: u64, seed: u64) -> MCSummary {
    monte_carlo_many(&[stat], params, trials, seed).remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    #[test]
    fn degenerate_distribution() {
        let g = GeomParams::new(int(1), 7).unwrap();
        assert_eq!(sample_word(&g, 3, 11), vec![1; 7]);
    }

    #[test]
    fn reproducible() {
        let g = GeomParams::new(rat(1, 2), 20).unwrap();
        assert_eq!(sample_word(&g, 42, 5), sample_word(&g, 42, 5));
        assert_ne!(sample_word(&g, 42, 5), sample_word(&g, 42, 6));
        let a = monte_carlo(Stat::Hsp, &g, 2000, 9);
        let b = monte_carlo(Stat::Hsp, &g, 2000, 9);
        assert_eq!(a, b);
    }

    #[test]
    fn short_words() {
        let g = GeomParams::new(rat(1, 2), 2).unwrap();
        let s = monte_carlo(Stat::Sp, &g, 100, 1);
        assert_eq!(s.mean, 0.0);
        assert_eq!(s.variance, 0.0);
    }

    #[test]
    fn uniform_open_interval() {
        assert!(uniform(0) > 0.0);
        assert!(uniform(u64::MAX) < 1.0);
    }
}
