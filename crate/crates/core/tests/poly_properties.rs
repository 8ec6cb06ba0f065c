use proptest::prelude::*;

use rootline::poly::{isolate, sigma_k, sorted_roots, ExactPolynomial, SquareMatrixQ};
use rootline::rational::{int, rat, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=5).prop_map(|(a, b)| rat(a, b))
}

fn polynomial(max_degree: usize) -> impl Strategy<Value = ExactPolynomial> {
    prop::collection::vec(small_rational(), 1..=max_degree + 1).prop_map(ExactPolynomial::new)
}

fn matrix(max_n: usize) -> impl Strategy<Value = SquareMatrixQ> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(small_rational(), n), n)
            .prop_map(|rows| SquareMatrixQ::new(rows).unwrap())
    })
}

/// Determinant by Gaussian elimination over the rationals.
fn gauss_det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = int(1);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| a[r][col] != int(0)) else {
            return int(0);
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Sum of principal `k×k` minors, enumerated directly.
fn minors_sum(a: &SquareMatrixQ, k: usize) -> Rational {
    let n = a.n();
    let mut total = int(0);
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize != k {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let sub = idx.iter().map(|&i| idx.iter().map(|&j| a.get(i, j).clone()).collect()).collect();
        total += gauss_det(sub);
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn char_poly_coefficients_are_principal_minor_sums(a in matrix(5)) {
        for k in 0..=a.n() {
            prop_assert_eq!(sigma_k(&a, k).unwrap(), minors_sum(&a, k));
        }
        prop_assert_eq!(a.det(), gauss_det(a.rows().to_vec()));
    }

    #[test]
    fn composition_evaluates_pointwise(p in polynomial(4), q in polynomial(3), x in small_rational()) {
        prop_assert_eq!(p.compose(&q).eval(&x), p.eval(&q.eval(&x)));
    }

    #[test]
    fn ring_operations_evaluate_pointwise(p in polynomial(5), q in polynomial(5), x in small_rational()) {
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
        prop_assert_eq!((&p - &q).eval(&x), p.eval(&x) - q.eval(&x));
    }

    #[test]
    fn shift_scale_moves_roots(
        roots in prop::collection::vec(small_rational(), 1..6),
        a in small_rational().prop_filter("nonzero", |a| *a != int(0)),
        b in small_rational(),
    ) {
        let p = ExactPolynomial::from_roots(&roots);
        let moved: Vec<Rational> = roots.iter().map(|r| &a * r + &b).collect();
        prop_assert_eq!(p.shift_scale(&a, &b).unwrap(), ExactPolynomial::from_roots(&moved));
    }

    #[test]
    fn isolation_encloses_every_root(roots in prop::collection::vec(small_rational(), 1..7)) {
        let p = ExactPolynomial::from_roots(&roots);
        let found = sorted_roots(&p).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        let mut sorted = roots.clone();
        sorted.sort();
        for (r, x) in found.iter().zip(&sorted) {
            prop_assert!(r.lo() <= x && x <= r.hi());
        }
        let distinct: usize = isolate(&p).unwrap().len();
        sorted.dedup();
        prop_assert_eq!(distinct, sorted.len());
    }

    #[test]
    fn irrational_roots_are_separated(c in 2i64..40, s in -5i64..=5) {
        // (x − s)² − c has the roots s ± √c.
        let p = ExactPolynomial::from_ints(&[s * s - c, -2 * s, 1]);
        let mut roots = isolate(&p).unwrap();
        let perfect = (c as f64).sqrt().fract() == 0.0;
        prop_assert_eq!(roots.len(), 2);
        prop_assert!(roots[0].hi() <= roots[1].lo());
        for r in roots.iter_mut() {
            prop_assert_eq!(r.to_rational().is_some(), perfect);
        }
    }
}
