use overrank_core::bilateral::{BilateralSum, Denominator};
use overrank_core::combinat::{
    count_overpartitions, enumerate, nbar_class, nbar_class_series, nbar_series, pbar_series, rank, rank_table,
};
use overrank_core::lambert::{s_bar, s_bar_with_margin, sigma, sigma_with_margin, LambertSpec};
use overrank_core::{Error, SignedMonomial};
use proptest::prelude::*;

fn int(k: i64) -> overrank_core::Coefficient {
    overrank_core::Coefficient::from_integer(k.into())
}

#[test]
fn fourteen_overpartitions_of_four() {
    assert_eq!(count_overpartitions(4).unwrap(), 14);
    assert_eq!(pbar_series(5).unwrap().to_i64_vec(5)[4], 14);
}

#[test]
fn pbar_enumeration_matches_product_to_thirty() {
    let series = pbar_series(31).unwrap();
    let counts: Vec<i64> = (0..=30).map(|n| count_overpartitions(n).unwrap() as i64).collect();
    assert_eq!(series.to_i64_vec(31), counts);
}

#[test]
fn rank_symmetry() {
    for n in 1..=24 {
        let t = rank_table(n).unwrap();
        for (&m, &c) in &t.counts {
            assert_eq!(c, t.get(-m), "n = {n}, m = {m}");
        }
    }
}

#[test]
fn class_sums_are_complete() {
    for m in [2i64, 3, 5, 7] {
        for n in 0..=20 {
            let total: u64 = (0..m).map(|s| nbar_class(s, m, n).unwrap()).sum();
            assert_eq!(total, count_overpartitions(n).unwrap(), "m = {m}, n = {n}");
        }
    }
}

#[test]
fn rank_generating_function_matches_enumeration() {
    let tables: Vec<_> = (1..=22).map(|n| rank_table(n).unwrap()).collect();
    for m in -6..=6 {
        let s = nbar_series(m, 23).unwrap();
        for t in &tables {
            assert_eq!(
                s.coeff(t.n as i64).unwrap(),
                int(t.get(m) as i64),
                "m = {m}, n = {}",
                t.n
            );
        }
    }
}

#[test]
fn class_generating_function_matches_enumeration() {
    for m in [3i64, 5] {
        for s in 0..m {
            let series = nbar_class_series(s, m, 26).unwrap();
            assert_eq!(series.coeff(0).unwrap(), int(0));
            for n in 1..26u32 {
                let want = nbar_class(s, m, n).unwrap() as i64;
                assert_eq!(series.coeff(n as i64).unwrap(), int(want), "s = {s}, m = {m}, n = {n}");
            }
        }
    }
}

#[test]
fn r02_at_residue_two_by_enumeration() {
    for n in (2..=30).step_by(5) {
        assert_eq!(nbar_class(0, 5, n).unwrap(), nbar_class(2, 5, n).unwrap(), "n = {n}");
    }
}

#[test]
fn enumeration_respects_cap() {
    assert_eq!(enumerate(41).unwrap_err(), Error::CapExceeded { n: 41, cap: 40 });
    assert!(enumerate(6)
        .unwrap()
        .iter()
        .all(|op| op.size() == 6 && rank(op).abs() < 6));
}

fn monomial() -> impl Strategy<Value = SignedMonomial> {
    (prop_oneof![Just(1i8), Just(-1i8)], -12i64..13).prop_map(|(s, e)| SignedMonomial::new(s, e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lambert_sums_are_stable_under_range_doubling(z in monomial(), zeta in monomial(), base in 1i64..12, order in 20i64..80) {
        prop_assume!(z.sign == -1 || z.exp % base != 0);
        let spec = LambertSpec::new(z, zeta, base);
        let a = sigma(&spec, order).unwrap();
        let b = sigma_with_margin(&spec, order, order).unwrap();
        prop_assert!(a.agrees_with(&b));
        prop_assert_eq!(a.order(), b.order().min(order));
    }

    #[test]
    fn lambert_poles_are_reported(e in -12i64..13, base in 1i64..12) {
        let spec = LambertSpec::new(SignedMonomial::q(base * e), SignedMonomial::ONE, base);
        let wide = base * base * (e * e + 4) + 50;
        let hit = matches!(sigma(&spec, wide), Err(Error::PoleHit { n }) if n == -e);
        prop_assert!(hit);
    }

    #[test]
    fn s_bar_is_stable_under_range_doubling(b in -10i64..11, ell in 1i64..8, order in 20i64..100) {
        let a = s_bar(b, ell, order).unwrap();
        let w = s_bar_with_margin(b, ell, order, order).unwrap();
        prop_assert!(a.agrees_with(&w));
    }

    #[test]
    fn bilateral_expansion_is_stable(quad in 1i64..4, lin in -6i64..7, slope in 1i64..5, off in -4i64..5, order in 10i64..60) {
        let sum = BilateralSum::new(quad, lin).alternating().over(Denominator::new(-1, slope, off));
        let a = sum.expand(order).unwrap();
        let b = sum.expand_with_margin(order, 2 * order).unwrap();
        prop_assert!(a.agrees_with(&b));
    }
}
