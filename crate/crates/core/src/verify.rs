//! The cross-verification suite behind `verify`.
//!
//! Every path is checked against brute-force enumeration or, for geometric
//! words, against the exact series and the capped-alphabet oracle. Checks
//! run concurrently; the returned list is sorted by name.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::closed_form::{closed, closed_exact, closed_recurrence_check, validity_start, Total};
use crate::composition::{
    aggregate, enumerate_compositions, joint_distribution, Aggregate, Family, Stat,
};
use crate::formulas::{binom, dsv_nk, hsp_nk, hsp_nk_literal, sp_count_nk};
use crate::geometric::{
    exact_oracle_moments_upto, expected_value, monte_carlo_many, series_moments, variance_formula,
    GeomParams,
};
use crate::numeric::{int, pow, rat, to_decimal, to_f64};
use crate::report::{integer, rational, Check, Report, Status};
use crate::series::{
    build_dsv_series, build_family_series, build_hsp_series, build_sp_series, build_sv_series,
    marker_moment, marker_moment_by_parts, rational_gf_coeffs, GfTable, Marker, RationalGf,
};

/// Success probabilities used for the geometric checks.
pub const P_GRID: [(i64, i64); 5] = [(1, 4), (1, 3), (1, 2), (2, 3), (3, 4)];
pub const LETTER_CAP: usize = 60;
pub const CLOSED_FORM_N: usize = 200;
pub const MC_LENGTH: usize = 50;
pub const MC_SEED: u64 = 20_240_917;
pub const VARIANCE_ORACLE_N: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub deep: bool,
}

impl VerifyConfig {
    pub fn brute_n(&self) -> usize {
        self.max_n
    }

    pub fn series_n(&self) -> usize {
        self.max_n.min(if self.deep { 18 } else { 14 })
    }

    pub fn joint_n(&self) -> usize {
        self.max_n.min(if self.deep { 14 } else { 12 })
    }

    pub fn word_n(&self) -> usize {
        self.max_n.clamp(3, 12)
    }

    pub fn mc_trials(&self) -> u64 {
        if self.deep {
            1_000_000
        } else {
            100_000
        }
    }
}

struct Ctx {
    cfg: VerifyConfig,
    agg: Vec<Aggregate>,
}

impl Ctx {
    fn brute(&self, stat: Stat, n: usize, k: usize) -> BigInt {
        self.agg[n].rows[k].stat(stat).clone().into()
    }

    fn brute_total(&self, stat: Stat, n: usize) -> BigInt {
        self.agg[n].totals.stat(stat).clone().into()
    }
}

fn half() -> BigRational {
    rat(1, 2)
}

fn p_grid() -> Vec<BigRational> {
    P_GRID.iter().map(|&(a, b)| rat(a, b)).collect()
}

fn params(p: &BigRational, n: usize) -> GeomParams {
    GeomParams::new(p.clone(), n).expect("grid probabilities are valid")
}

/// Pass when `mismatches` is empty; lists the first few otherwise.
fn agreement(name: &str, compared: usize, mismatches: Vec<String>, detail: &str) -> Check {
    let shown: Vec<_> = mismatches.iter().take(10).cloned().collect();
    Check::expect(
        name,
        mismatches.is_empty(),
        json!(compared),
        json!({ "mismatches": mismatches.len(), "first": shown }),
        detail,
    )
}

fn cell_grid(n_max: usize, f: impl Fn(usize, usize) -> BigInt + Sync) -> Vec<Vec<BigInt>> {
    (0..=n_max)
        .into_par_iter()
        .map(|n| (0..=n).map(|k| f(n, k)).collect())
        .collect()
}

fn compare_grid(
    ctx: &Ctx,
    name: &str,
    stat: Stat,
    n_max: usize,
    k_min: usize,
    value: impl Fn(usize, usize) -> Option<BigRational> + Sync,
    detail: &str,
) -> Check {
    let mut compared = 0;
    let mut bad = Vec::new();
    for n in 0..=n_max {
        for k in k_min..=n {
            compared += 1;
            let want = BigRational::from_integer(ctx.brute(stat, n, k));
            match value(n, k) {
                Some(v) if v == want => {}
                got => bad.push(format!(
                    "(n={n},k={k}) got {} want {want}",
                    got.map_or("none".to_string(), |v| v.to_string())
                )),
            }
        }
    }
    agreement(name, compared, bad, detail)
}

// ---- compositions ----

fn composition_checks(ctx: &Ctx) -> Vec<Check> {
    let n_max = ctx.cfg.brute_n();
    let mut out = Vec::new();

    let mut bad = Vec::new();
    let mut compared = 0;
    for n in 0..=n_max {
        let all = enumerate_compositions(n as u64, None).count() as u128;
        let want = if n == 0 { 1 } else { 1u128 << (n - 1) };
        compared += 1;
        if all != want {
            bad.push(format!("n={n}: {all} compositions, want {want}"));
        }
        for k in 0..=n {
            let c = enumerate_compositions(n as u64, Some(k)).count();
            let want = if n == 0 && k == 0 { BigInt::one() } else { binom(n as i64 - 1, k as i64 - 1) };
            compared += 1;
            if BigInt::from(c) != want || BigInt::from(ctx.agg[n].rows[k].count.clone()) != want {
                bad.push(format!("n={n},k={k}: {c}, want {want}"));
            }
        }
    }
    out.push(agreement(
        "composition.count_identities",
        compared,
        bad,
        "stream lengths equal binom(n-1,k-1) and 2^(n-1)",
    ));

    let small = n_max.min(12);
    let (mut rev_bad, mut bound_bad, mut seen) = (Vec::new(), Vec::new(), 0usize);
    for n in 0..=small {
        for c in enumerate_compositions(n as u64, None) {
            seen += 1;
            let s = c.stats();
            if c.reversed().stats() != s {
                rev_bad.push(c.to_string());
            }
            let room = c.k().saturating_sub(2) as u64;
            if s.hsp < s.sp || s.dsv < s.sv || s.sp + s.sv > room {
                bound_bad.push(c.to_string());
            }
        }
    }
    out.push(agreement(
        "composition.reversal_symmetry",
        seen,
        rev_bad,
        &format!("statistics of a composition and its reverse agree, n <= {small}"),
    ));
    out.push(agreement(
        "composition.magnitude_bounds",
        seen,
        bound_bad,
        &format!("hsp >= sp, dsv >= sv and sp + sv <= k - 2, n <= {small}"),
    ));

    let joint_n = ctx.cfg.joint_n();
    let mut bad = Vec::new();
    for n in 0..=joint_n {
        for family in [Family::Peak, Family::Valley] {
            let (mut cnt, mut mag) = (BigInt::zero(), BigInt::zero());
            for ((_, j, t), v) in joint_distribution(n as u64, family) {
                let v = BigInt::from(v);
                cnt += &v * BigInt::from(j);
                mag += &v * BigInt::from(t);
            }
            let (sc, sm) = match family {
                Family::Peak => (Stat::Sp, Stat::Hsp),
                Family::Valley => (Stat::Sv, Stat::Dsv),
            };
            if cnt != ctx.brute_total(sc, n) || mag != ctx.brute_total(sm, n) {
                bad.push(format!("n={n} {family:?}"));
            }
        }
    }
    out.push(agreement(
        "composition.aggregate_vs_joint",
        2 * (joint_n + 1),
        bad,
        "weighted sums of the joint histogram equal the aggregate totals",
    ));

    let a5 = aggregate(5).totals;
    let a8 = aggregate(8).totals;
    out.push(Check::expect(
        "composition.anchors",
        a5.sp == 3u32.into() && a5.hsp == 4u32.into() && a8.sv == 15u32.into() && a8.dsv == 17u32.into(),
        json!({ "sp5": a5.sp.to_string(), "hsp5": a5.hsp.to_string(), "sv8": a8.sv.to_string(), "dsv8": a8.dsv.to_string() }),
        json!({ "sp5": "3", "hsp5": "4", "sv8": "15", "dsv8": "17" }),
        "three peaks of total height 4 at n=5; fifteen valleys of total depth 17 at n=8",
    ));
    out
}

// ---- truncated series ----

fn series_checks(ctx: &Ctx) -> Vec<Check> {
    let cfg = ctx.cfg;
    let joint_n = cfg.joint_n();
    let series_n = cfg.series_n();
    let mut out = Vec::new();

    for (family, name, count_m, mag_m) in [
        (Family::Peak, "hsp", Marker::Q, Marker::H),
        (Family::Valley, "dsv", Marker::P, Marker::D),
    ] {
        let s = build_family_series(family, joint_n);
        let mut bad = Vec::new();
        let mut compared = 0;
        for n in 0..=joint_n {
            let got: BTreeMap<(usize, u64, u64), BigRational> = s
                .coeff(n)
                .terms()
                .map(|(e, c)| ((e[0] as usize, e[1] as u64, e[2] as u64), c.clone()))
                .collect();
            let want: BTreeMap<(usize, u64, u64), BigRational> = joint_distribution(n as u64, family)
                .into_iter()
                .map(|(key, v)| (key, BigRational::from_integer(v.into())))
                .collect();
            compared += want.len();
            if got != want {
                bad.push(format!("n={n}"));
            }
        }
        out.push(agreement(
            &format!("series.joint.{name}"),
            compared,
            bad,
            &format!("every coefficient equals the brute-force joint histogram, n <= {joint_n}"),
        ));

        // markers set to 1 leave the composition counts
        let big = build_family_series(family, series_n);
        let flat = big.substitute_one(count_m).substitute_one(mag_m);
        let mut bad = Vec::new();
        for n in 0..=series_n {
            let row = flat.coeff(n);
            let mut total = BigRational::zero();
            for k in 0..=n {
                let c = row.coeff([k as u32, 0, 0]);
                let want = if n == 0 { int((k == 0) as i64) } else { BigRational::from_integer(binom(n as i64 - 1, k as i64 - 1)) };
                if c != want {
                    bad.push(format!("(n={n},k={k}) {c} vs {want}"));
                }
                total += c;
            }
            let want = if n == 0 { int(1) } else { pow(&int(2), n - 1) };
            if total != want || row.len() > n + 1 {
                bad.push(format!("n={n} row sum {total}"));
            }
        }
        out.push(agreement(
            &format!("series.marginal.{name}"),
            series_n + 1,
            bad,
            "markers at 1 give binom(n-1,k-1) and row sums 2^(n-1)",
        ));

        let mag = marker_moment_by_parts(&big, mag_m);
        let cnt = marker_moment_by_parts(&big, count_m);
        let (ms, cs) = match family {
            Family::Peak => (Stat::Hsp, Stat::Sp),
            Family::Valley => (Stat::Dsv, Stat::Sv),
        };
        out.push(compare_grid(
            ctx,
            &format!("series.moment_grid.{}", ms.name()),
            ms,
            series_n,
            0,
            |n, k| Some(mag.coeff(n).coeff([k as u32, 0, 0])),
            "magnitude-marker derivative per (n,k) equals brute force",
        ));
        out.push(compare_grid(
            ctx,
            &format!("series.moment_grid.{}", cs.name()),
            cs,
            series_n,
            0,
            |n, k| Some(cnt.coeff(n).coeff([k as u32, 0, 0])),
            "count-marker derivative per (n,k) equals brute force",
        ));

        let lemma = marker_moment(&big, mag_m);
        let which = match family {
            Family::Peak => RationalGf::HspTotal,
            Family::Valley => RationalGf::DsvTotal,
        };
        let table = rational_gf_coeffs(which, series_n).expect("unit constant term");
        let bad = (0..=series_n)
            .filter(|&n| lemma.coeff(n) != &table.total(n))
            .map(|n| format!("n={n}"))
            .collect();
        out.push(agreement(
            &format!("series.lemma.{name}_total"),
            series_n + 1,
            bad,
            "magnitude-marker moment equals the closed rational generating function",
        ));
    }

    let sub_n = joint_n;
    let hsp = build_hsp_series(sub_n).substitute_one(Marker::H);
    let dsv = build_dsv_series(sub_n).substitute_one(Marker::D);
    out.push(Check::expect(
        "series.specialization.sp",
        hsp == build_sp_series(sub_n),
        json!(sub_n),
        Value::Null,
        "height marker at 1 reproduces the direct peak-count series",
    ));
    out.push(Check::expect(
        "series.specialization.sv",
        dsv == build_sv_series(sub_n),
        json!(sub_n),
        Value::Null,
        "depth marker at 1 reproduces the direct valley-count series",
    ));

    // truncation coherence
    let small = build_hsp_series(series_n.min(8));
    let large = build_hsp_series(series_n);
    out.push(Check::expect(
        "series.truncation_coherence",
        large.truncate(small.trunc()) == small,
        json!(small.trunc()),
        json!(series_n),
        "raising the truncation order leaves lower coefficients unchanged",
    ));
    out
}

// ---- closed rational generating functions ----

fn rational_gf_checks(ctx: &Ctx) -> Vec<Check> {
    let n_max = ctx.cfg.brute_n();
    let mut out = Vec::new();
    let tables: Vec<(RationalGf, GfTable)> = [
        RationalGf::HspTotal,
        RationalGf::HspNk,
        RationalGf::DsvTotal,
        RationalGf::DsvNk,
        RationalGf::DsvNkPrinted,
    ]
    .into_par_iter()
    .map(|w| (w, rational_gf_coeffs(w, n_max).expect("unit constant term")))
    .collect();
    let get = |w: RationalGf| &tables.iter().find(|(x, _)| *x == w).unwrap().1;

    for (w, stat, name) in [
        (RationalGf::HspTotal, Stat::Hsp, "hsp_total"),
        (RationalGf::DsvTotal, Stat::Dsv, "dsv_total"),
    ] {
        let t = get(w);
        let bad = (0..=n_max)
            .filter(|&n| t.total(n) != BigRational::from_integer(ctx.brute_total(stat, n)))
            .map(|n| format!("n={n}: {}", t.total(n)))
            .collect();
        out.push(agreement(&format!("rational_gf.{name}"), n_max + 1, bad, "coefficients equal brute-force totals"));
    }
    for (w, stat, name) in [(RationalGf::HspNk, Stat::Hsp, "hsp_nk"), (RationalGf::DsvNk, Stat::Dsv, "dsv_nk")] {
        let t = get(w);
        out.push(compare_grid(
            ctx,
            &format!("rational_gf.{name}"),
            stat,
            n_max,
            0,
            |n, k| t.cell(n, k).cloned(),
            "x^n y^k coefficients equal brute force per (n,k)",
        ));
    }

    let mut bad = Vec::new();
    for w in [RationalGf::HspTotal, RationalGf::HspNk, RationalGf::DsvTotal, RationalGf::DsvNk] {
        let t = get(w);
        for n in 0..=n_max {
            let cells: Vec<BigRational> = match t {
                GfTable::Total(v) => vec![v[n].clone()],
                GfTable::Grid(g) => g[n].clone(),
            };
            if cells.iter().any(|c| !c.is_integer() || c.is_negative()) {
                bad.push(format!("{w:?} n={n}"));
            }
        }
    }
    out.push(agreement(
        "rational_gf.nonnegative_integers",
        4 * (n_max + 1),
        bad,
        "every coefficient is a nonnegative integer",
    ));

    // the commonly printed per-(n,k) depth function
    let printed = get(RationalGf::DsvNkPrinted);
    let mut bad = Vec::new();
    let mut negative = Vec::new();
    for n in 0..=n_max {
        for k in 0..=n {
            let got = printed.cell(n, k).cloned().unwrap_or_default();
            if got.is_negative() {
                negative.push(format!("(n={n},k={k})={got}"));
            }
            if got != BigRational::from_integer(ctx.brute(Stat::Dsv, n, k)) {
                bad.push(format!("(n={n},k={k}) {got} vs {}", ctx.brute(Stat::Dsv, n, k)));
            }
        }
    }
    out.push(Check::new(
        "rational_gf.dsv_nk_printed",
        if bad.is_empty() { Status::Pass } else { Status::Finding },
        json!({ "mismatches": bad.len(), "first": bad.iter().take(6).collect::<Vec<_>>() }),
        json!({ "negative": negative.iter().take(6).collect::<Vec<_>>() }),
        "(2x^7y^3 - x^6y^3 - x^4y^3)/((1-x^3)(1-x^2)(1-x-yx)^2) against brute force; \
         y^3(x^5 - 2x^6 + x^7)/((1-x^3)(1-x^2)^2(1-x-yx)^2) is the form that matches",
    ));
    out
}

// ---- closed forms ----

fn closed_form_checks(ctx: &Ctx) -> Vec<Check> {
    let n_max = ctx.cfg.brute_n();
    let mut out = Vec::new();
    for which in [Total::Hsp, Total::Dsv] {
        let name = which.stat().name();
        let bad: Vec<String> = (0..=CLOSED_FORM_N)
            .into_par_iter()
            .filter_map(|n| {
                let v = closed_exact(which, n);
                let ok = v.im.is_zero() && v.re.is_integer() && !v.re.is_negative();
                (!ok).then(|| format!("n={n}: {v}"))
            })
            .collect();
        out.push(agreement(
            &format!("closed_form.{name}.integrality"),
            CLOSED_FORM_N + 1,
            bad,
            "imaginary part cancels and the value is a nonnegative integer",
        ));

        let rep = closed_recurrence_check(which, CLOSED_FORM_N);
        out.push(agreement(
            &format!("closed_form.{name}.recurrence"),
            CLOSED_FORM_N + 1,
            rep.mismatches.iter().map(|n| format!("n={n}")).collect(),
            &format!("closed form equals the denominator recurrence seeded with {} brute-force terms", rep.seeds),
        ));

        let start = validity_start(which, n_max);
        out.push(Check::expect(
            format!("closed_form.{name}.brute_force"),
            start == Some(0),
            json!(start),
            json!(n_max),
            match start {
                Some(s) => format!("agrees with brute force for {s} <= n <= {n_max}"),
                None => format!("disagrees with brute force at n={n_max}"),
            },
        ));
    }

    let lo = rat(12, 100);
    let hi = rat(16, 100);
    let mut bad = Vec::new();
    let mut prev: Option<BigRational> = None;
    let mut monotone = true;
    let target = rat(1, 7);
    for n in 50..=CLOSED_FORM_N {
        let v = BigRational::from_integer(closed(Total::Hsp, n).expect("integral"));
        let r = v / (int(n as i64) * pow(&int(2), n - 1));
        if r < lo || r > hi {
            bad.push(format!("n={n}: {}", to_decimal(&r, 6)));
        }
        let gap = (&r - &target).abs();
        if let Some(p) = &prev {
            monotone &= &gap <= p;
        }
        prev = Some(gap);
    }
    out.push(agreement(
        "closed_form.hsp.asymptotic",
        CLOSED_FORM_N - 49,
        bad,
        &format!(
            "hsp(n)/(n 2^(n-1)) within [0.12, 0.16] for 50 <= n <= {CLOSED_FORM_N}; distance to 1/7 {}",
            if monotone { "decreases monotonically" } else { "is not monotone" }
        ),
    ));
    out
}

// ---- summation formulas ----

fn formula_checks(ctx: &Ctx) -> Vec<Check> {
    let n_max = ctx.cfg.brute_n();
    let mut out = Vec::new();
    let h = cell_grid(n_max, hsp_nk);
    let d = cell_grid(n_max, dsv_nk);
    out.push(compare_grid(ctx, "formulas.hsp_nk", Stat::Hsp, n_max, 0, |n, k| Some(h[n][k].clone().into()), "summation formula equals brute force per (n,k)"));
    out.push(compare_grid(ctx, "formulas.dsv_nk", Stat::Dsv, n_max, 0, |n, k| Some(d[n][k].clone().into()), "summation formula equals brute force per (n,k)"));

    let sp_n = n_max.min(14);
    out.push(compare_grid(
        ctx,
        "formulas.sp_count_nk",
        Stat::Sp,
        sp_n,
        4,
        |n, k| sp_count_nk(n, k).ok().map(Into::into),
        "peak-count formula equals brute force for 4 <= k <= n",
    ));
    let series_n = ctx.cfg.series_n().min(14);
    let q = marker_moment_by_parts(&build_hsp_series(series_n), Marker::Q);
    let mut bad = Vec::new();
    for n in 4..=series_n {
        for k in 4..=n {
            let f = BigRational::from_integer(sp_count_nk(n, k).expect("k >= 4"));
            if f != q.coeff(n).coeff([k as u32, 0, 0]) {
                bad.push(format!("(n={n},k={k})"));
            }
        }
    }
    out.push(agreement("formulas.sp_count_nk_vs_series", series_n, bad, "peak-count formula equals the y^k part of the count-marker moment"));

    let mut bad = Vec::new();
    for n in 0..=n_max {
        let hs: BigInt = h[n].iter().sum();
        let ds: BigInt = d[n].iter().sum();
        if Ok(hs) != closed(Total::Hsp, n) || Ok(ds) != closed(Total::Dsv, n) {
            bad.push(format!("n={n}"));
        }
    }
    out.push(agreement("formulas.row_sums", n_max + 1, bad, "row sums of the summation formulas equal the closed forms"));

    let hsp_gf = rational_gf_coeffs(RationalGf::HspNk, n_max).expect("unit constant term");
    let dsv_gf = rational_gf_coeffs(RationalGf::DsvNk, n_max).expect("unit constant term");
    let mut bad = Vec::new();
    for n in 0..=n_max {
        for k in 0..=n {
            if hsp_gf.cell(n, k) != Some(&h[n][k].clone().into()) || dsv_gf.cell(n, k) != Some(&d[n][k].clone().into()) {
                bad.push(format!("(n={n},k={k})"));
            }
        }
    }
    out.push(agreement("formulas.vs_rational_gf", (n_max + 1) * (n_max + 2) / 2, bad, "summation grids equal the rational generating-function grids"));

    let mut diffs = Vec::new();
    for n in 3..=n_max {
        let lit = hsp_nk_literal(n, 3);
        let truth = ctx.brute(Stat::Hsp, n, 3);
        if lit != truth {
            diffs.push(json!({ "n": n, "literal": integer(&lit), "brute_force": integer(&truth) }));
        }
    }
    out.push(Check::new(
        "formulas.hsp_nk_k3_literal",
        if diffs.is_empty() { Status::Pass } else { Status::Finding },
        json!(diffs.len()),
        Value::Array(diffs),
        "k=3 height sum read without the 1 <= (n-m)/2 <= m-1 guard, compared with brute force",
    ));
    out
}

// ---- geometric words ----

fn expectation_checks(ctx: &Ctx) -> Vec<Check> {
    let n_hi = ctx.cfg.word_n();
    let cases: Vec<(BigRational, Stat)> = p_grid()
        .into_iter()
        .flat_map(|p| Stat::ALL.map(|s| (p.clone(), s)))
        .collect();
    let results: Vec<_> = cases
        .par_iter()
        .map(|(p, stat)| {
            let oracle = exact_oracle_moments_upto(*stat, &params(p, n_hi), LETTER_CAP);
            let mut series_bad = Vec::new();
            let mut oracle_bad = Vec::new();
            let mut max_tail = BigRational::zero();
            for n in 3..=n_hi {
                let f = expected_value(*stat, &params(p, n));
                let s = series_moments(*stat, p, n).expect("0 < p < 1");
                if s.mean != f || !s.total_mass.is_one() {
                    series_bad.push(format!("p={p} {} n={n}", stat.name()));
                }
                let o = &oracle[n];
                let gap = &f - &o.mean;
                if gap.is_negative() || gap > o.tail_bound {
                    oracle_bad.push(format!("p={p} {} n={n}", stat.name()));
                }
                if o.tail_bound > max_tail {
                    max_tail = o.tail_bound.clone();
                }
            }
            (p.clone(), *stat, series_bad, oracle_bad, max_tail)
        })
        .collect();

    let count = cases.len() * (n_hi - 2);
    let series_bad = results.iter().flat_map(|r| r.2.clone()).collect();
    let oracle_bad = results.iter().flat_map(|r| r.3.clone()).collect();
    let mut out = vec![
        agreement("geometric.expectation.series", count, series_bad, "expectation formulas equal the marker-series coefficients exactly"),
        agreement(
            "geometric.expectation.oracle",
            count,
            oracle_bad,
            &format!("formula minus capped oracle mean lies in [0, tail bound], letters <= {LETTER_CAP}"),
        ),
    ];

    let limit = BigRational::new(BigInt::one(), BigInt::one() << 30);
    let mut tails = BTreeMap::new();
    for (p, stat, _, _, t) in &results {
        tails.insert(format!("p={p} {}", stat.name()), to_decimal(t, 4));
    }
    let over: Vec<_> = results
        .iter()
        .filter(|r| r.4 >= limit)
        .map(|r| format!("p={} {}", r.0, r.1.name()))
        .collect();
    out.push(Check::new(
        "geometric.oracle.tail_bound_size",
        if over.is_empty() { Status::Pass } else { Status::Finding },
        json!(tails),
        json!({ "limit": "2^-30", "exceeded": over }),
        "largest rigorous tail bound per (p, stat) over n <= 12 compared with 2^-30",
    ));

    let mut bad = Vec::new();
    for p in p_grid() {
        let e3: BTreeMap<_, _> = Stat::ALL.iter().map(|s| (s.name(), expected_value(*s, &params(&p, 3)))).collect();
        for n in 0..=n_hi {
            let g = params(&p, n);
            let e: BTreeMap<_, _> = Stat::ALL.iter().map(|s| (s.name(), expected_value(*s, &g))).collect();
            let lin = int(n.max(2) as i64 - 2);
            let ok = e["hsp"] >= e["sp"]
                && e["dsv"] >= e["sv"]
                && e.values().all(|v| !v.is_negative())
                && e.iter().all(|(k, v)| *v == &e3[k] * &lin);
            if !ok {
                bad.push(format!("p={p} n={n}"));
            }
        }
    }
    out.push(agreement(
        "geometric.expectation.ordering",
        P_GRID.len() * (n_hi + 1),
        bad,
        "E[hsp] >= E[sp], E[dsv] >= E[sv], all nonnegative and linear in n-2",
    ));
    out
}

/// Summaries at `p = 1/2`, `n = 50`, in `Stat::ALL` order.
fn monte_carlo_half(trials: u64) -> Vec<crate::geometric::MCSummary> {
    monte_carlo_many(&Stat::ALL, &params(&half(), MC_LENGTH), trials, MC_SEED)
}

fn monte_carlo_checks(ctx: &Ctx) -> Vec<Check> {
    let trials = ctx.cfg.mc_trials();
    let g = params(&half(), MC_LENGTH);
    let mc = monte_carlo_half(trials);
    let mut out = Vec::new();

    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for (stat, s) in Stat::ALL.iter().zip(&mc) {
        let e = to_f64(&expected_value(*stat, &g));
        let z = (s.mean - e) / s.std_error;
        if z.abs() > 4.0 {
            bad.push(format!("{} z={z:.2}", stat.name()));
        }
        rows.push(json!({ "stat": stat.name(), "mean": s.mean, "expected": e, "std_error": s.std_error, "z": z }));
    }
    out.push(Check::expect(
        "geometric.monte_carlo.means",
        bad.is_empty(),
        Value::Array(rows),
        json!(bad),
        format!("p=1/2, n={MC_LENGTH}, {trials} trials, seed {MC_SEED}: means within 4 standard errors"),
    ));

    // exact variance from the series against the sample variance
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    let mut printed = Vec::new();
    for (stat, s) in Stat::ALL.iter().zip(&mc) {
        let exact = series_moments(*stat, &half(), MC_LENGTH).expect("0 < p < 1").variance();
        let z = (s.variance - to_f64(&exact)) / s.variance_std_error;
        if z.abs() > 4.0 {
            bad.push(format!("{} z={z:.2}", stat.name()));
        }
        rows.push(json!({ "stat": stat.name(), "sample_variance": s.variance, "variance_std_error": s.variance_std_error, "exact": rational(&exact), "z": z }));
        if let Ok(v) = variance_formula(*stat, &g) {
            let zp = (s.variance - to_f64(&v)) / s.variance_std_error;
            printed.push(json!({
                "stat": stat.name(),
                "printed": rational(&v),
                "sample_variance": s.variance,
                "variance_std_error": s.variance_std_error,
                "z": zp,
                "agrees": zp.abs() <= 4.0,
            }));
        }
    }
    out.push(Check::expect(
        "geometric.variance.monte_carlo_consistency",
        bad.is_empty(),
        Value::Array(rows),
        json!(bad),
        format!("exact series variance within 4 standard errors of the sample variance, n={MC_LENGTH}"),
    ));
    let disagree = printed.iter().filter(|r| r["agrees"] == json!(false)).count();
    out.push(Check::new(
        "geometric.variance.printed_vs_monte_carlo",
        if disagree == 0 { Status::Pass } else { Status::Finding },
        Value::Array(printed),
        json!({ "disagreeing": disagree }),
        format!("printed variance formulas against the sample variance at p=1/2, n={MC_LENGTH}"),
    ));
    out
}

fn variance_checks(_ctx: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();

    let first_negative = (0..=CLOSED_FORM_N).find(|&n| {
        variance_formula(Stat::Sp, &params(&half(), n))
            .map(|v| v.is_negative() && n >= 3)
            .unwrap_or(false)
    });
    out.push(Check::new(
        "geometric.variance.sp_negative",
        if first_negative.is_some() { Status::Finding } else { Status::Pass },
        json!(first_negative),
        first_negative.map_or(Value::Null, |n| rational(&variance_formula(Stat::Sp, &params(&half(), n)).unwrap())),
        format!("smallest n in 3..={CLOSED_FORM_N} where the printed sp variance is negative at p=1/2"),
    ));

    // the exact series variance must sit inside the oracle's variance interval
    let mut bad = Vec::new();
    for stat in Stat::ALL {
        let o = exact_oracle_moments_upto(stat, &params(&half(), VARIANCE_ORACLE_N), LETTER_CAP);
        for (n, om) in o.iter().enumerate() {
            let exact = series_moments(stat, &half(), n).expect("0 < p < 1").variance();
            let (lo, hi) = om.variance_interval();
            if exact < lo || exact > hi {
                bad.push(format!("{} n={n}", stat.name()));
            }
        }
    }
    out.push(agreement(
        "geometric.variance.oracle_consistency",
        4 * (VARIANCE_ORACLE_N + 1),
        bad,
        &format!("series variance lies inside the oracle variance interval, p=1/2, n <= {VARIANCE_ORACLE_N}"),
    ));

    for stat in [Stat::Sp, Stat::Hsp, Stat::Sv] {
        let mut per_p = BTreeMap::new();
        let mut any_diff = false;
        for p in p_grid() {
            let mut agree = Vec::new();
            let mut differ = Vec::new();
            for n in 0..=VARIANCE_ORACLE_N {
                let printed = variance_formula(stat, &params(&p, n)).expect("printed formula exists");
                let exact = series_moments(stat, &p, n).expect("0 < p < 1").variance();
                if printed == exact {
                    agree.push(n);
                } else {
                    differ.push(n);
                }
            }
            any_diff |= !differ.is_empty();
            per_p.insert(p.to_string(), json!({ "agree": agree, "differ": differ }));
        }
        let half_rows: Vec<_> = (0..=VARIANCE_ORACLE_N)
            .map(|n| {
                let printed = variance_formula(stat, &params(&half(), n)).unwrap();
                let exact = series_moments(stat, &half(), n).unwrap().variance();
                json!({ "n": n, "printed": rational(&printed), "exact": rational(&exact) })
            })
            .collect();
        out.push(Check::new(
            format!("geometric.variance.{}.exact", stat.name()),
            if any_diff { Status::Finding } else { Status::Pass },
            json!(per_p),
            Value::Array(half_rows),
            format!(
                "printed variance against the exact variance (series, confirmed by the oracle) for n <= {VARIANCE_ORACLE_N}"
            ),
        ));
    }

    let dsv_rows: Vec<_> = (0..=VARIANCE_ORACLE_N)
        .map(|n| {
            let exact = series_moments(Stat::Dsv, &half(), n).unwrap().variance();
            json!({ "n": n, "exact": rational(&exact) })
        })
        .collect();
    out.push(Check::new(
        "geometric.variance.dsv",
        Status::Finding,
        Value::Null,
        Value::Array(dsv_rows),
        "no printed formula; exact small-n values at p=1/2 and the sample variance in the Monte Carlo checks",
    ));
    out
}

type Group = fn(&Ctx) -> Vec<Check>;

/// Runs the suite; checks are sorted by name.
pub fn verify(cfg: VerifyConfig) -> Vec<Check> {
    let agg = (0..=cfg.brute_n()).into_par_iter().map(|n| aggregate(n as u64)).collect();
    let ctx = Ctx { cfg, agg };
    let groups: [Group; 8] = [
        composition_checks,
        series_checks,
        rational_gf_checks,
        closed_form_checks,
        formula_checks,
        expectation_checks,
        monte_carlo_checks,
        variance_checks,
    ];
    let mut checks: Vec<Check> = groups.par_iter().flat_map(|g| g(&ctx)).collect();
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    checks
}

pub fn verify_report(cfg: VerifyConfig) -> Report {
    let mut r = Report::new("verify").param("max_n", cfg.max_n).param("deep", cfg.deep);
    r.checks = verify(cfg);
    r
}
