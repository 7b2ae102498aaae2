use overrank_core::{Coefficient, LaurentSeries};
use proptest::prelude::*;

const ORDER: i64 = 24;

fn series() -> impl Strategy<Value = LaurentSeries> {
    (-3i64..4, prop::collection::vec(-20i64..20, 0..12), 1i64..4).prop_map(|(min_exp, ints, den)| {
        LaurentSeries::from_ints(min_exp, &ints, ORDER).scale(&Coefficient::new(1.into(), den.into()))
    })
}

fn unit_power_series() -> impl Strategy<Value = LaurentSeries> {
    (
        prop::collection::vec(-9i64..9, 0..10),
        prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)],
    )
        .prop_map(|(tail, lead)| {
            let mut ints = vec![lead];
            ints.extend(tail);
            LaurentSeries::from_ints(0, &ints, ORDER)
        })
}

fn power_series() -> impl Strategy<Value = LaurentSeries> {
    prop::collection::vec(-30i64..30, 0..ORDER as usize).prop_map(|ints| LaurentSeries::from_ints(0, &ints, ORDER))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_a_group(a in series(), b in series(), c in series()) {
        prop_assert!(a.add(&b).agrees_with(&b.add(&a)));
        prop_assert!(a.add(&b).add(&c).agrees_with(&a.add(&b.add(&c))));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert!(a.add(&LaurentSeries::zero(ORDER)).agrees_with(&a));
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in series(), b in series(), c in series()) {
        prop_assert!(a.mul(&b).agrees_with(&b.mul(&a)));
        prop_assert!(a.mul(&b).mul(&c).agrees_with(&a.mul(&b.mul(&c))));
        prop_assert!(a.mul(&LaurentSeries::one(ORDER)).agrees_with(&a));
    }

    #[test]
    fn multiplication_distributes(a in series(), b in series(), c in series()) {
        let left = a.mul(&b.add(&c));
        let right = a.mul(&b).add(&a.mul(&c));
        prop_assert!(left.agrees_with(&right));
    }

    #[test]
    fn inverse_is_two_sided(u in unit_power_series(), shift in -3i64..3) {
        let u = u.shift(shift);
        let inv = u.inverse().unwrap();
        let one = u.mul(&inv);
        prop_assert!(one.agrees_with(&LaurentSeries::one(one.order())));
    }

    #[test]
    fn dissection_is_complete(f in power_series(), m in 1i64..6) {
        let mut rebuilt = LaurentSeries::zero(ORDER);
        for d in 0..m {
            let part = f.extract_progression(m, d).unwrap();
            rebuilt = rebuilt.add(&part.substitute_power(m).shift(d).truncate(ORDER));
        }
        prop_assert!(rebuilt.truncate(ORDER).agrees_with(&f));
        prop_assert_eq!(rebuilt.truncate(ORDER).order(), ORDER);
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(a in power_series(), b in power_series(), k in 1i64..5) {
        let lhs = a.mul(&b).substitute_power(k);
        let rhs = a.substitute_power(k).mul(&b.substitute_power(k));
        prop_assert!(lhs.agrees_with(&rhs));
        let sum = a.add(&b).substitute_power(k);
        prop_assert!(sum.agrees_with(&a.substitute_power(k).add(&b.substitute_power(k))));
    }

    #[test]
    fn binomial_division_undoes_multiplication(f in power_series(), sign in prop_oneof![Just(1i8), Just(-1i8)], e in -6i64..7) {
        prop_assume!(e != 0);
        let back = f.mul_binomial(sign, e).div_binomial(sign, e).unwrap();
        prop_assert!(back.agrees_with(&f));
    }
}
