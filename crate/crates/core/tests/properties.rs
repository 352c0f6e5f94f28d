use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use sympeaks::composition::{aggregate, enumerate_compositions, stat_record, Composition, Stat};
use sympeaks::formulas::{dsv_nk, hsp_nk};
use sympeaks::geometric::{expected_value, monte_carlo_many, series_moments, GeomParams};
use sympeaks::numeric::{parse_rational, rat};
use sympeaks::quad::QuadNumber;
use sympeaks::series::{build_dsv_series, build_hsp_series, TruncSeries};

fn parts() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..6, 0..14)
}

fn probability() -> impl Strategy<Value = BigRational> {
    (1i64..20).prop_flat_map(|den| (1..=den).prop_map(move |num| rat(num, den)))
}

fn open_probability() -> impl Strategy<Value = BigRational> {
    (2i64..20).prop_flat_map(|den| (1..den).prop_map(move |num| rat(num, den)))
}

fn quad() -> impl Strategy<Value = QuadNumber> {
    (-30i64..30, -30i64..30, 1i64..9).prop_map(|(a, b, d)| QuadNumber::new(rat(a, d), rat(b, d)))
}

proptest! {
    #[test]
    fn reversal_preserves_stats(v in parts()) {
        let mut rev = v.clone();
        rev.reverse();
        prop_assert_eq!(stat_record(&v), stat_record(&rev));
    }

    #[test]
    fn stats_are_bounded(v in parts()) {
        let s = stat_record(&v);
        let n: u64 = v.iter().sum();
        let windows = v.len().saturating_sub(2) as u64;
        prop_assert!(s.sp + s.sv <= windows);
        prop_assert!(s.sp <= s.hsp && s.sv <= s.dsv);
        prop_assert!(s.hsp <= n && s.dsv <= n);
    }

    #[test]
    fn enumeration_is_complete_and_ordered(n in 0u64..13, k in prop::option::of(0usize..13)) {
        let all: Vec<Composition> = enumerate_compositions(n, k).collect();
        let expected = match (n, k) {
            (0, None | Some(0)) => BigInt::one(),
            (_, None) => BigInt::one() << (n - 1),
            (_, Some(k)) => sympeaks::formulas::binom(n as i64 - 1, k as i64 - 1),
        };
        prop_assert_eq!(BigInt::from(all.len()), expected);
        prop_assert!(all.windows(2).all(|w| w[0].parts() < w[1].parts()));
        prop_assert!(all.iter().all(|c| c.n() == n && k.is_none_or(|k| c.k() == k)));
    }

    #[test]
    fn summation_formulas_match_brute_force(n in 0usize..15, k in 0usize..15) {
        let k = k.min(n);
        let row = &aggregate(n as u64).rows[k];
        prop_assert_eq!(hsp_nk(n, k), BigInt::from(row.hsp.clone()));
        prop_assert_eq!(dsv_nk(n, k), BigInt::from(row.dsv.clone()));
    }

    #[test]
    fn decimal_and_fraction_agree(num in -5000i64..5000, scale in 0u32..5) {
        let den = 10i64.pow(scale);
        let dec = format!("{}{}.{:0width$}", if num < 0 { "-" } else { "" }, num.abs() / den, num.abs() % den, width = scale as usize);
        prop_assert_eq!(parse_rational(&dec).unwrap(), rat(num, den));
        prop_assert_eq!(parse_rational(&format!("{num}/{den}")).unwrap(), rat(num, den));
    }

    #[test]
    fn quad_field_identities(a in quad(), b in quad(), c in quad()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        prop_assert_eq!((&a * &a.conj()).im, BigRational::zero());
    }

    #[test]
    fn reciprocal_inverts(coeffs in prop::collection::vec(-9i64..10, 1..10), lead in 1i64..5) {
        let trunc = coeffs.len() + 2;
        let s = TruncSeries::from_coeffs(trunc, std::iter::once(rat(lead, 1)).chain(coeffs.iter().map(|&c| rat(c, 1))));
        let inv = s.reciprocal().unwrap();
        prop_assert_eq!(s.mul(&inv), TruncSeries::one(trunc));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn series_truncation_is_coherent(lo in 3usize..9, extra in 1usize..4) {
        let hi = lo + extra;
        prop_assert_eq!(build_hsp_series(hi).truncate(lo), build_hsp_series(lo));
        prop_assert_eq!(build_dsv_series(hi).truncate(lo), build_dsv_series(lo));
    }

    #[test]
    fn expectations_are_ordered(p in probability(), n in 3usize..60) {
        let g = GeomParams::new(p, n).unwrap();
        let e = |s| expected_value(s, &g);
        prop_assert!(!e(Stat::Sp).is_negative() && !e(Stat::Sv).is_negative());
        prop_assert!(e(Stat::Sp) <= e(Stat::Hsp));
        prop_assert!(e(Stat::Sv) <= e(Stat::Dsv));
        prop_assert!(e(Stat::Sp) + e(Stat::Sv) <= rat(n as i64 - 2, 1));
    }

    #[test]
    fn expectation_is_linear_in_length(p in probability(), n in 3usize..60) {
        let at = |n| GeomParams::new(p.clone(), n).unwrap();
        for s in Stat::ALL {
            let d1 = expected_value(s, &at(n + 1)) - expected_value(s, &at(n));
            let d2 = expected_value(s, &at(n + 2)) - expected_value(s, &at(n + 1));
            prop_assert_eq!(d1, d2);
        }
    }

    #[test]
    fn series_mean_matches_formula(p in open_probability(), n in 3usize..9) {
        for s in Stat::ALL {
            let g = GeomParams::new(p.clone(), n).unwrap();
            prop_assert_eq!(series_moments(s, &p, n).unwrap().mean, expected_value(s, &g));
        }
    }
}

#[test]
fn monte_carlo_ignores_thread_count() {
    let g = GeomParams::new(rat(2, 5), 20).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| serde_json::to_string(&monte_carlo_many(&Stat::ALL, &g, 20_000, 7)).unwrap())
    };
    assert_eq!(run(1), run(4));
}
