//! Integer compositions and the symmetric peak/valley statistics.
//!
//! A window `a m a` of three consecutive parts is a symmetric peak when
//! `a < m` (height `m - a`) and a symmetric valley when `a > m` (depth
//! `a - m`). Overlapping windows each count, so `2 1 2 1 2` holds two valleys.
//!
//! Everything here is brute force and serves as the ground truth that the
//! series, closed-form and summation paths are checked against.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u64>,
}

impl Composition {
    /// Returns `None` if any part is zero.
    pub fn new(parts: Vec<u64>) -> Option<Self> {
        if parts.contains(&0) {
            return None;
        }
        Some(Self { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn n(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn reversed(&self) -> Self {
        let mut parts = self.parts.clone();
        parts.reverse();
        Self { parts }
    }

    pub fn stats(&self) -> StatRecord {
        stat_record(&self.parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// The four statistics of a single sequence.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct StatRecord {
    pub sp: u64,
    pub sv: u64,
    pub hsp: u64,
    pub dsv: u64,
}

impl StatRecord {
    pub fn get(&self, stat: Stat) -> u64 {
        match stat {
            Stat::Sp => self.sp,
            Stat::Sv => self.sv,
            Stat::Hsp => self.hsp,
            Stat::Dsv => self.dsv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stat {
    Sp,
    Sv,
    Hsp,
    Dsv,
}

impl Stat {
    pub const ALL: [Stat; 4] = [Stat::Sp, Stat::Sv, Stat::Hsp, Stat::Dsv];

    pub fn name(self) -> &'static str {
        match self {
            Stat::Sp => "sp",
            Stat::Sv => "sv",
            Stat::Hsp => "hsp",
            Stat::Dsv => "dsv",
        }
    }

    pub fn family(self) -> Family {
        match self {
            Stat::Sp | Stat::Hsp => Family::Peak,
            Stat::Sv | Stat::Dsv => Family::Valley,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Peak,
    Valley,
}

/// Window scan over any sequence of positive integers (compositions and
/// geometric words alike).
pub fn stat_record(parts: &[u64]) -> StatRecord {
    let mut r = StatRecord::default();
    for w in parts.windows(3) {
        let (a, m, c) = (w[0], w[1], w[2]);
        if a != c {
            continue;
        }
        if a < m {
            r.sp += 1;
            r.hsp += m - a;
        } else if a > m {
            r.sv += 1;
            r.dsv += a - m;
        }
    }
    r
}

/// Lexicographic stream of compositions of `n`, optionally restricted to
/// exactly `k` parts.
pub fn enumerate_compositions(n: u64, k: Option<usize>) -> Compositions {
    let start = match k {
        None if n == 0 => Some(Vec::new()),
        None => Some(vec![1; n as usize]),
        Some(0) if n == 0 => Some(Vec::new()),
        Some(0) => None,
        Some(k) if (k as u64) > n => None,
        Some(k) => {
            let mut v = vec![1; k];
            v[k - 1] = n - (k as u64 - 1);
            Some(v)
        }
    };
    Compositions {
        current: start,
        fixed_k: k.is_some(),
    }
}

pub struct Compositions {
    current: Option<Vec<u64>>,
    fixed_k: bool,
}

impl Compositions {
    fn advance(&mut self) {
        let Some(c) = self.current.as_mut() else {
            return;
        };
        let done = if self.fixed_k {
            successor_fixed_k(c)
        } else {
            successor_free(c)
        };
        if done {
            self.current = None;
        }
    }
}

/// Returns true when `c` was the last composition.
fn successor_free(c: &mut Vec<u64>) -> bool {
    if c.len() < 2 {
        return true;
    }
    let last = c.pop().unwrap();
    *c.last_mut().unwrap() += 1;
    c.extend(std::iter::repeat_n(1, (last - 1) as usize));
    false
}

fn successor_fixed_k(c: &mut [u64]) -> bool {
    let k = c.len();
    if k < 2 {
        return true;
    }
    let mut suffix = c[k - 1];
    for i in (0..k - 1).rev() {
        // suffix holds sum(c[i+1..]) spread over k-1-i parts
        if suffix > (k - 1 - i) as u64 {
            c[i] += 1;
            let rest = suffix - 1;
            for slot in c.iter_mut().take(k - 1).skip(i + 1) {
                *slot = 1;
            }
            c[k - 1] = rest - (k - 2 - i) as u64;
            return false;
        }
        suffix += c[i];
    }
    true
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let out = self.current.clone()?;
        self.advance();
        Some(Composition { parts: out })
    }
}

/// Per-k sums of the four statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggregateRow {
    pub k: Option<usize>,
    pub count: BigUint,
    pub sp: BigUint,
    pub sv: BigUint,
    pub hsp: BigUint,
    pub dsv: BigUint,
}

impl AggregateRow {
    fn empty(k: Option<usize>) -> Self {
        Self {
            k,
            count: BigUint::zero(),
            sp: BigUint::zero(),
            sv: BigUint::zero(),
            hsp: BigUint::zero(),
            dsv: BigUint::zero(),
        }
    }

    fn absorb(&mut self, s: &StatRecord) {
        self.count += 1u32;
        self.sp += s.sp;
        self.sv += s.sv;
        self.hsp += s.hsp;
        self.dsv += s.dsv;
    }

    fn merge(&mut self, other: &AggregateRow) {
        self.count += &other.count;
        self.sp += &other.sp;
        self.sv += &other.sv;
        self.hsp += &other.hsp;
        self.dsv += &other.dsv;
    }

    pub fn stat(&self, stat: Stat) -> &BigUint {
        match stat {
            Stat::Sp => &self.sp,
            Stat::Sv => &self.sv,
            Stat::Hsp => &self.hsp,
            Stat::Dsv => &self.dsv,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aggregate {
    pub n: u64,
    /// One row per k in `0..=n`.
    pub rows: Vec<AggregateRow>,
    pub totals: AggregateRow,
}

/// Sums over `C_{n,k}` for every `k`, partitioned by first part and merged.
pub fn aggregate(n: u64) -> Aggregate {
    let len = n as usize + 1;
    let fresh = || (0..len).map(|k| AggregateRow::empty(Some(k))).collect::<Vec<_>>();

    let rows = if n == 0 {
        let mut rows = fresh();
        rows[0].absorb(&StatRecord::default());
        rows
    } else {
        (1..=n)
            .into_par_iter()
            .map(|first| {
                let mut rows = fresh();
                let mut buf = Vec::with_capacity(n as usize);
                for tail in enumerate_compositions(n - first, None) {
                    buf.clear();
                    buf.push(first);
                    buf.extend_from_slice(tail.parts());
                    rows[buf.len()].absorb(&stat_record(&buf));
                }
                rows
            })
            .reduce(fresh, |mut acc, part| {
                for (a, b) in acc.iter_mut().zip(&part) {
                    a.merge(b);
                }
                acc
            })
    };

    let mut totals = AggregateRow::empty(None);
    for r in &rows {
        totals.merge(r);
    }
    Aggregate { n, rows, totals }
}

/// Key `(k, count, magnitude)`: number of parts, number of peaks (valleys),
/// and their total height (depth).
pub type JointKey = (usize, u64, u64);

pub fn joint_distribution(n: u64, family: Family) -> BTreeMap<JointKey, BigUint> {
    let mut out: BTreeMap<JointKey, BigUint> = BTreeMap::new();
    for c in enumerate_compositions(n, None) {
        let s = c.stats();
        let (j, t) = match family {
            Family::Peak => (s.sp, s.hsp),
            Family::Valley => (s.sv, s.dsv),
        };
        *out.entry((c.k(), j, t)).or_default() += 1u32;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[u64]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn listing(n: u64, k: Option<usize>) -> Vec<String> {
        enumerate_compositions(n, k)
            .map(|c| c.parts().iter().map(|p| p.to_string()).collect())
            .collect()
    }

    #[test]
    fn compositions_of_five() {
        let got = listing(5, None);
        assert_eq!(
            got,
            [
                "11111", "1112", "1121", "113", "1211", "122", "131", "14", "2111", "212", "221",
                "23", "311", "32", "41", "5"
            ]
        );
    }

    #[test]
    fn empty_composition() {
        assert_eq!(enumerate_compositions(0, None).count(), 1);
        assert_eq!(enumerate_compositions(0, Some(0)).count(), 1);
        assert_eq!(enumerate_compositions(0, Some(1)).count(), 0);
        assert_eq!(enumerate_compositions(3, Some(0)).count(), 0);
        assert_eq!(enumerate_compositions(3, Some(4)).count(), 0);
        let c = enumerate_compositions(0, None).next().unwrap();
        assert_eq!(c.k(), 0);
        assert_eq!(c.stats(), StatRecord::default());
    }

    #[test]
    fn fixed_k_listing() {
        let got = listing(6, Some(3));
        assert_eq!(got.len(), 10);
        assert_eq!(got.first().unwrap(), "114");
        assert_eq!(got.last().unwrap(), "411");
        let mut sorted = got.clone();
        sorted.sort_by(|a, b| a.as_bytes().cmp(b.as_bytes()));
        assert_eq!(got, sorted);
    }

    #[test]
    fn window_examples() {
        assert_eq!(
            comp(&[1, 3, 1]).stats(),
            StatRecord { sp: 1, sv: 0, hsp: 2, dsv: 0 }
        );
        assert_eq!(comp(&[1, 1, 1, 1, 1]).stats(), StatRecord::default());
        assert_eq!(
            comp(&[2, 1, 2, 1, 2]).stats(),
            StatRecord { sp: 1, sv: 2, hsp: 1, dsv: 2 }
        );
    }

    #[test]
    fn zero_part_rejected() {
        assert!(Composition::new(vec![1, 0, 2]).is_none());
    }

    #[test]
    fn aggregate_anchors() {
        let a5 = aggregate(5);
        assert_eq!(a5.totals.sp, 3u32.into());
        assert_eq!(a5.totals.hsp, 4u32.into());
        assert_eq!(a5.totals.count, 16u32.into());

        let a8 = aggregate(8);
        assert_eq!(a8.totals.sv, 15u32.into());
        assert_eq!(a8.totals.dsv, 17u32.into());

        let a2 = aggregate(2);
        for s in Stat::ALL {
            assert!(a2.totals.stat(s).is_zero());
        }

        let a0 = aggregate(0);
        assert_eq!(a0.rows.len(), 1);
        assert_eq!(a0.totals.count, 1u32.into());
    }

    #[test]
    fn joint_anchors() {
        let peak5 = joint_distribution(5, Family::Peak);
        assert_eq!(peak5[&(3, 1, 2)], 1u32.into());

        let peak1 = joint_distribution(1, Family::Peak);
        assert_eq!(peak1.len(), 1);
        assert_eq!(peak1[&(1, 0, 0)], 1u32.into());

        let valley8 = joint_distribution(8, Family::Valley);
        let weighted: u64 = valley8
            .iter()
            .map(|(&(_, j, _), v)| j * u64::try_from(v).unwrap())
            .sum();
        assert_eq!(weighted, 15);
    }
}
