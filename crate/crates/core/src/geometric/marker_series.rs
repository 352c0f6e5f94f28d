//! Length generating functions of geometric words with one statistic marked.
//!
//! Substituting `x -> q`, `y -> p z / q` into the composition series turns
//! the weight `x^a y` of a part `a` into the probability `p q^(a-1)` of a
//! letter `a`, times `z`. The resulting series is
//!
//! ```text
//! G(z, u) = 1 / (1 - sum_{a>=1} p q^(a-1) z / (1 - z^2 T_a(u)))
//! ```
//!
//! where `T_a` is the substituted inner kernel. The inner sums over the
//! letter value `a` are infinite; each one is a finite combination of
//! geometric sequences in `a` ([`ExpSum`]) and is summed in closed form.
//! The marker is carried as a [`Jet`] in `eps = u - 1`, which is exactly
//! what the first and second derivatives at `u = 1` need.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::jet::Jet;
use crate::composition::Stat;
use crate::error::{Error, Result};
use crate::series::{Ring, TruncSeries};

/// `f(a) = sum_i coef_i * base_i^(a-1)` as a function of the letter `a >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpSum {
    terms: Vec<(Jet, Jet)>,
}

impl ExpSum {
    pub fn term(coef: Jet, base: Jet) -> Self {
        let mut s = Self { terms: Vec::new() };
        s.push(coef, base);
        s
    }

    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    fn push(&mut self, coef: Jet, base: Jet) {
        if coef.is_zero() {
            return;
        }
        if let Some(slot) = self.terms.iter_mut().find(|(_, b)| *b == base) {
            slot.0 = slot.0.add(&coef);
            if slot.0.is_zero() {
                self.terms.retain(|(c, _)| !c.is_zero());
            }
        } else {
            self.terms.push((coef, base));
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (c, b) in &rhs.terms {
            out.push(c.clone(), b.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&Jet::one().neg()))
    }

    pub fn scale(&self, k: &Jet) -> Self {
        let mut out = Self::zero();
        for (c, b) in &self.terms {
            out.push(c.mul(k), b.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ca, ba) in &self.terms {
            for (cb, bb) in &rhs.terms {
                out.push(ca.mul(cb), ba.mul(bb));
            }
        }
        out
    }

    pub fn pow(&self, m: usize) -> Self {
        let mut acc = Self::term(Jet::one(), Jet::one());
        for _ in 0..m {
            acc = acc.mul(self);
        }
        acc
    }

    /// `f(a)` at a concrete letter value.
    pub fn eval(&self, a: usize) -> Jet {
        self.terms.iter().fold(Jet::zero(), |acc, (c, b)| {
            let mut p = Jet::one();
            for _ in 1..a {
                p = p.mul(b);
            }
            acc.add(&c.mul(&p))
        })
    }

    /// `sum_{a>=1} f(a) = sum_i coef_i / (1 - base_i)`. Every base must have
    /// its constant part inside `(-1, 1)`.
    pub fn sum_over_letters(&self) -> Jet {
        self.terms.iter().fold(Jet::zero(), |acc, (c, b)| {
            let v = b.value();
            assert!(
                v < &BigRational::one() && v > &-BigRational::one(),
                "divergent letter sum, base {b:?}"
            );
            let denom = Jet::one().sub(b).inverse().expect("1 - base is a unit");
            acc.add(&c.mul(&denom))
        })
    }

    /// `sum_{j=1}^{a-1} rho^(j-1) sigma^(a-j)`, which is
    /// `sigma/(sigma - rho) * (sigma^(a-1) - rho^(a-1))`.
    pub fn mixed_partial(rho: &Jet, sigma: &Jet) -> Self {
        let k = sigma.mul(
            &sigma
                .sub(rho)
                .inverse()
                .expect("bases must differ in their constant parts"),
        );
        Self::term(k.clone(), sigma.clone()).sub(&Self::term(k, rho.clone()))
    }
}

fn jet(c: &BigRational) -> Jet {
    Jet::constant(c.clone())
}

/// Inner kernel `T_a` of the substituted series, so that the letter-`a`
/// factor reads `1 / (1 - z^2 T_a)`.
pub fn inner_kernel(stat: Stat, p: &BigRational) -> ExpSum {
    let q = BigRational::one() - p;
    let u = Jet::marker();
    let one = Jet::one();
    let (pj, qj) = (jet(p), jet(&q));
    match stat {
        // p^2 q^(2a-1) * sum_{j>=1} (c v^j - 1) q^(j-1)
        Stat::Sp | Stat::Hsp => {
            let tail = match stat {
                // (u - 1) / (1 - q)
                Stat::Sp => Jet::eps().mul(&pj.inverse().unwrap()),
                // u / (1 - u q) - 1 / (1 - q)
                _ => u
                    .mul(&one.sub(&u.mul(&qj)).inverse().unwrap())
                    .sub(&pj.inverse().unwrap()),
            };
            let coef = pj.mul(&pj).mul(&qj).mul(&tail);
            ExpSum::term(coef, qj.mul(&qj))
        }
        // p^2 q^(a-1) * sum_{j=1}^{a-1} (c v^(a-j) - 1) q^(j-1)
        Stat::Sv | Stat::Dsv => {
            let bracket = match stat {
                Stat::Sv => ExpSum::mixed_partial(&qj, &one).scale(&Jet::eps()),
                _ => ExpSum::mixed_partial(&qj, &u).sub(&ExpSum::mixed_partial(&qj, &one)),
            };
            ExpSum::term(pj.mul(&pj), qj).mul(&bracket)
        }
    }
}

fn check_open_unit(p: &BigRational) -> Result<()> {
    if p <= &BigRational::zero() || p >= &BigRational::one() {
        return Err(Error::DegenerateProbability(p.to_string()));
    }
    Ok(())
}

/// `G(z, 1 + eps)` modulo `z^(trunc+1)` and `eps^3`.
pub fn geometric_marker_series(stat: Stat, p: &BigRational, trunc: usize) -> Result<TruncSeries<Jet>> {
    check_open_unit(p)?;
    let q = BigRational::one() - p;
    let letter = ExpSum::term(jet(p), jet(&q));
    let kernel = inner_kernel(stat, p);

    // [z^(2m+1)] of the letter sum is sum_a p q^(a-1) T_a^m
    let mut letter_sum = TruncSeries::<Jet>::zero(trunc);
    let mut power = ExpSum::term(Jet::one(), Jet::one());
    for m in 0.. {
        let degree = 2 * m + 1;
        if degree > trunc {
            break;
        }
        let c = letter.mul(&power).sum_over_letters();
        letter_sum = letter_sum.add(&TruncSeries::monomial(trunc, degree, c));
        power = power.mul(&kernel);
    }
    TruncSeries::one(trunc).sub(&letter_sum).reciprocal()
}

/// Exact moments of a statistic on words of length `n`, read off the series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesMoments {
    /// `[z^n] G(z, 1)`; equals 1
    pub total_mass: BigRational,
    pub mean: BigRational,
    pub second_moment: BigRational,
}

impl SeriesMoments {
    pub fn variance(&self) -> BigRational {
        &self.second_moment - &self.mean * &self.mean
    }
}

pub fn series_moments(stat: Stat, p: &BigRational, n: usize) -> Result<SeriesMoments> {
    let s = geometric_marker_series(stat, p, n)?;
    let c = s.coeff(n);
    let two = BigRational::from_integer(2.into());
    Ok(SeriesMoments {
        total_mass: c.value().clone(),
        mean: c.first().clone(),
        // E[X^2] = E[X(X-1)] + E[X], and E[X(X-1)] = 2 [eps^2]
        second_moment: c.second() * two + c.first(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    #[test]
    fn mixed_partial_matches_direct_sum() {
        let rho = Jet([rat(1, 3), rat(2, 5), int(0)]);
        let sigma = Jet::marker();
        let f = ExpSum::mixed_partial(&rho, &sigma);
        for a in 1..8 {
            let mut direct = Jet::zero();
            for j in 1..a {
                let mut t = Jet::one();
                for _ in 0..j - 1 {
                    t = t.mul(&rho);
                }
                for _ in 0..a - j {
                    t = t.mul(&sigma);
                }
                direct = direct.add(&t);
            }
            assert_eq!(f.eval(a), direct, "a={a}");
        }
    }

    #[test]
    fn letter_sum_is_geometric() {
        let s = ExpSum::term(jet(&rat(1, 2)), jet(&rat(1, 2)));
        assert_eq!(s.sum_over_letters(), Jet::one());
    }

    #[test]
    fn normalization() {
        let s = geometric_marker_series(Stat::Hsp, &rat(1, 3), 9).unwrap();
        for n in 0..=9 {
            assert_eq!(s.coeff(n).value(), &int(1), "n={n}");
        }
    }

    #[test]
    fn peak_count_mean_at_half() {
        let half = rat(1, 2);
        for n in 3..=12 {
            let m = series_moments(Stat::Sp, &half, n).unwrap();
            assert_eq!(m.mean, rat(n as i64 - 2, 7), "n={n}");
        }
        assert_eq!(series_moments(Stat::Hsp, &half, 5).unwrap().mean, rat(6, 7));
    }

    #[test]
    fn rejects_endpoints() {
        assert!(geometric_marker_series(Stat::Sp, &int(1), 4).is_err());
        assert!(geometric_marker_series(Stat::Sp, &int(0), 4).is_err());
    }
}
