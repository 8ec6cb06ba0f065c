use proptest::prelude::*;

use rootline::poly::ExactPolynomial;
use rootline::rational::{rat, Rational};
use rootline::symfuncs::{
    elementary_from_power_sums, eval_poly_sum, power_sums_from_elementary, profile_from_polynomial,
    PowerSumProfile, SymmetricProfile,
};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-15i64..=15, 1i64..=6).prop_map(|(a, b)| rat(a, b))
}

fn roots_and_k() -> impl Strategy<Value = (Vec<Rational>, usize)> {
    prop::collection::vec(small_rational(), 1..10).prop_flat_map(|r| {
        let n = r.len();
        (Just(r), 1..=n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn newton_round_trip((roots, k) in roots_and_k()) {
        let e = SymmetricProfile::from_roots(&roots, k).unwrap();
        let p = power_sums_from_elementary(&e);
        prop_assert_eq!(&p, &PowerSumProfile::from_roots(&roots, k).unwrap());
        prop_assert_eq!(elementary_from_power_sums(&p), e);
    }

    #[test]
    fn profile_matches_coefficients((roots, k) in roots_and_k()) {
        let poly = ExactPolynomial::from_roots(&roots);
        prop_assert_eq!(profile_from_polynomial(&poly, k).unwrap(), SymmetricProfile::from_roots(&roots, k).unwrap());
    }

    #[test]
    fn polynomial_sums_from_profile(
        (roots, k) in roots_and_k(),
        q in prop::collection::vec(small_rational(), 1..4),
    ) {
        let q = ExactPolynomial::new(q.into_iter().take(k + 1).collect());
        let prof = SymmetricProfile::from_roots(&roots, k).unwrap();
        let direct: Rational = roots.iter().map(|r| q.eval(r)).sum();
        prop_assert_eq!(eval_poly_sum(&prof, &q).unwrap(), direct);
    }
}
