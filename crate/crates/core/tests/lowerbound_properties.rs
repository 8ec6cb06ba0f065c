use proptest::prelude::*;

use rootline::lowerbounds::{indistinguishable, matched_leading, noisy_pair, verify_pair, weak_pair, LowerBoundPair};
use rootline::poly::ExactPolynomial;
use rootline::rational::rat;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn weak_pairs_verify_and_look_alike(n in 2usize..30) {
        let pair = weak_pair(n).unwrap();
        let report = verify_pair(&pair).unwrap();
        prop_assert_eq!(report.matched_leading, n - 1);
        let (a, b) = indistinguishable(&pair).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn noisy_pairs_differ_in_one_place(k in 2usize..8, pad in 0usize..4) {
        let pair = noisy_pair(k, 2 * k + pad).unwrap();
        prop_assert_eq!(matched_leading(&pair.p, &pair.q), 2 * k - 1);
        let diff = &pair.p - &pair.q;
        prop_assert_eq!(diff.coeffs().iter().filter(|c| **c != rat(0, 1)).count(), 1);
        verify_pair(&pair).unwrap();
    }

    #[test]
    fn perturbing_a_matched_coefficient_is_caught(n in 3usize..16, pos in 1usize..16, delta in 1i64..50) {
        let pos = 1 + pos % (n - 1);
        let pair = weak_pair(n).unwrap();
        let mut c = pair.q.coeffs().to_vec();
        c[n - pos] += rat(delta, 97);
        let bad = LowerBoundPair { q: ExactPolynomial::new(c), ..pair };
        match verify_pair(&bad) {
            Err(rootline::Error::Certificate { check, index, .. }) => {
                prop_assert_eq!(check, "coefficients");
                prop_assert_eq!(index, Some(pos));
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }
}
