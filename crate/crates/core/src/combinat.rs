//! Overpartitions by brute force, Dyson's rank, and the generating functions
//! that the rank-difference pipeline is built on.
//!
//! The enumerator is the ground truth for everything else in the crate, so it
//! stays deliberately naive: parts are generated largest first, and every
//! distinct value gets a free choice of overline on its first occurrence.

use std::collections::BTreeMap;
use std::fmt;

use crate::bilateral::{BilateralSum, Denominator};
use crate::error::{Error, Result};
use crate::products::ProductSpec;
use crate::series::LaurentSeries;

pub const DEFAULT_CAP: u32 = 40;

/// Parts in nonincreasing order; `overlined` lists the distinct values whose
/// first occurrence carries an overline, also in decreasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Overpartition {
    pub parts: Vec<u32>,
    pub overlined: Vec<u32>,
}

impl Overpartition {
    pub fn new(mut parts: Vec<u32>, mut overlined: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        overlined.sort_unstable_by(|a, b| b.cmp(a));
        overlined.dedup();
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("overpartition parts must be positive".into()));
        }
        if let Some(v) = overlined.iter().find(|v| !parts.contains(v)) {
            return Err(Error::InvalidArgument(format!("overlined value {v} is not a part")));
        }
        Ok(Overpartition { parts, overlined })
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn is_overlined(&self, value: u32) -> bool {
        self.overlined.contains(&value)
    }
}

impl fmt::Display for Overpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let mut prev = None;
        for (i, &p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if prev != Some(p) && self.is_overlined(p) {
                write!(f, "{p}'")?;
            } else {
                write!(f, "{p}")?;
            }
            prev = Some(p);
        }
        Ok(())
    }
}

/// Dyson's rank: largest part minus the number of parts.
pub fn rank(op: &Overpartition) -> i64 {
    op.largest() as i64 - op.parts.len() as i64
}

fn check_cap(n: u32, cap: u32) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// Calls `visit` once for every overpartition of `n`, reusing one buffer.
pub fn for_each_overpartition<F: FnMut(&Overpartition)>(n: u32, cap: u32, mut visit: F) -> Result<()> {
    check_cap(n, cap)?;
    let mut op = Overpartition::default();
    walk(n, n, &mut op, &mut visit);
    Ok(())
}

fn walk<F: FnMut(&Overpartition)>(remaining: u32, max_value: u32, op: &mut Overpartition, visit: &mut F) {
    if remaining == 0 {
        visit(op);
        return;
    }
    for v in (1..=max_value.min(remaining)).rev() {
        for k in 1..=remaining / v {
            for _ in 0..k {
                op.parts.push(v);
            }
            walk(remaining - k * v, v - 1, op, visit);
            op.overlined.push(v);
            walk(remaining - k * v, v - 1, op, visit);
            op.overlined.pop();
            op.parts.truncate(op.parts.len() - k as usize);
        }
    }
}

pub fn enumerate(n: u32) -> Result<Vec<Overpartition>> {
    enumerate_with_cap(n, DEFAULT_CAP)
}

pub fn enumerate_with_cap(n: u32, cap: u32) -> Result<Vec<Overpartition>> {
    let mut out = Vec::new();
    for_each_overpartition(n, cap, |op| out.push(op.clone()))?;
    Ok(out)
}

pub fn count_overpartitions(n: u32) -> Result<u64> {
    let mut count = 0;
    for_each_overpartition(n, DEFAULT_CAP, |_| count += 1)?;
    Ok(count)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankTable {
    pub n: u32,
    pub counts: BTreeMap<i64, u64>,
}

impl RankTable {
    pub fn get(&self, m: i64) -> u64 {
        self.counts.get(&m).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Number of overpartitions whose rank is congruent to `s` modulo `m`.
    pub fn class(&self, s: i64, m: i64) -> u64 {
        self.counts
            .iter()
            .filter(|(r, _)| r.rem_euclid(m) == s.rem_euclid(m))
            .map(|(_, c)| c)
            .sum()
    }
}

pub fn rank_table(n: u32) -> Result<RankTable> {
    let mut counts = BTreeMap::new();
    for_each_overpartition(n, DEFAULT_CAP, |op| *counts.entry(rank(op)).or_insert(0) += 1)?;
    Ok(RankTable { n, counts })
}

/// `N̄(s, m, n)` by enumeration.
pub fn nbar_class(s: i64, m: i64, n: u32) -> Result<u64> {
    if m < 1 || !(0..m).contains(&s) {
        return Err(Error::InvalidArgument(format!("need 0 <= s < m, got s = {s}, m = {m}")));
    }
    Ok(rank_table(n)?.class(s, m))
}

/// `2 (-q)_inf / (q)_inf`
fn two_pbar() -> ProductSpec {
    ProductSpec::q_over_neg_q().inv().times_int(2)
}

/// `(-q)_inf / (q)_inf`
pub fn pbar_series(order: i64) -> Result<LaurentSeries> {
    ProductSpec::q_over_neg_q().inv().eval(order)
}

/// Generating function of `N̄(m, n)` from the unilateral sum
/// `sum_{n >= 1} (-1)^(n-1) q^(n^2 + |m| n) (1 - q^n) / (1 + q^n)`.
/// Its constant term is zero.
pub fn nbar_series(m: i64, order: i64) -> Result<LaurentSeries> {
    let m = m.abs();
    let mut acc = LaurentSeries::zero(order);
    let mut n = 1;
    while n * n + m * n < order {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let term = LaurentSeries::signed_monomial(sign, n * n + m * n, order)
            .mul_binomial(1, n)
            .div_binomial(-1, n)?;
        acc = acc.add(&term);
        n += 1;
    }
    Ok(two_pbar().eval(order)?.mul(&acc).truncate(order))
}

/// The bilateral sum of the class generating function before the
/// `2(-q)_inf/(q)_inf` factor.
pub fn nbar_class_kernel(s: i64, m: i64, order: i64) -> Result<LaurentSeries> {
    if m < 1 || !(0..m).contains(&s) {
        return Err(Error::InvalidArgument(format!("need 0 <= s < m, got s = {s}, m = {m}")));
    }
    let half = |lin: i64| {
        BilateralSum::new(1, 1 + lin)
            .alternating()
            .over(Denominator::new(-1, 1, 0))
            .over(Denominator::new(1, m, 0))
            .omit_zero()
    };
    Ok(half(s).expand(order)?.add(&half(m - s).expand(order)?))
}

/// Generating function of `N̄(s, m, n)` from the bilateral form. The analytic
/// value at `n = 0` is `0`, not the `1` that counting the empty overpartition
/// would give.
pub fn nbar_class_series(s: i64, m: i64, order: i64) -> Result<LaurentSeries> {
    let kernel = nbar_class_kernel(s, m, order)?;
    Ok(two_pbar().eval(order)?.mul(&kernel).truncate(order))
}
