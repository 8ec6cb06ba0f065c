//! Chebyshev polynomials of the first kind.

use num_traits::Signed;

use crate::bounds::{cos_pi, sqrt_bounds, Interval};
use crate::error::{Error, Result};
use crate::poly::ExactPolynomial;
use crate::rational::{int, pow, Rational};

/// `T_k` with exact integer coefficients, from `T_{j+1} = 2x T_j − T_{j−1}`.
pub fn cheb_poly(k: usize) -> ExactPolynomial {
    cheb_coefficients(k)
}

fn cheb_coefficients(k: usize) -> ExactPolynomial {
    let two_x = ExactPolynomial::from_ints(&[0, 2]);
    let mut prev = ExactPolynomial::one();
    if k == 0 {
        return prev;
    }
    let mut cur = ExactPolynomial::x();
    for _ in 1..k {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `T_k(x)` by the three-term recurrence at the point, without expanding
/// coefficients.
pub fn cheb_eval(k: usize, x: &Rational) -> Rational {
    if k == 0 {
        return int(1);
    }
    let two_x = x * int(2);
    let mut prev = int(1);
    let mut cur = x.clone();
    for _ in 1..k {
        let next = &two_x * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Enclosures of the `n` roots `cos((θ + 2πi)/n)` of `T_n(x) − cos θ`, with
/// `θ = theta_over_pi · π`.
pub fn cheb_shifted_roots(n: usize, theta_over_pi: &Rational, bits: u32) -> Result<Vec<Interval>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok((0..n)
        .map(|i| {
            let angle = (theta_over_pi + int(2 * i as i64)) / int(n as i64);
            cos_pi(&angle, bits)
        })
        .collect())
}

/// A rational `b` with `(1 + √(2x))^k / 2 ≤ b ≤ T_k(1 + x)`, for `x ≥ 0`.
pub fn cheb_growth_lower_bound(k: usize, x: &Rational) -> Result<Rational> {
    if x.is_negative() {
        return Err(Error::InvalidArgument("x must be nonnegative".into()));
    }
    let target = cheb_eval(k, &(x + int(1)));
    let mut bits = 64;
    loop {
        let root = sqrt_bounds(&(x * int(2)), bits)?;
        let b = pow(&(root.hi + int(1)), k) / int(2);
        if b <= target {
            return Ok(b);
        }
        if bits > 1 << 14 {
            // Equality within rounding; T_k(1+x) itself satisfies both sides.
            return Ok(target);
        }
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, to_f64};

    #[test]
    fn coefficient_examples() {
        assert_eq!(cheb_poly(0), ExactPolynomial::one());
        assert_eq!(cheb_poly(1), ExactPolynomial::x());
        assert_eq!(cheb_poly(2), ExactPolynomial::from_ints(&[-1, 0, 2]));
        assert_eq!(cheb_poly(3), ExactPolynomial::from_ints(&[0, -3, 0, 4]));
        for k in 1..20 {
            let t = cheb_poly(k);
            assert_eq!(t.degree(), Some(k));
            assert_eq!(t.leading().unwrap(), &pow(&int(2), k - 1));
        }
    }

    #[test]
    fn evaluation_examples() {
        for k in 0..30 {
            assert_eq!(cheb_eval(k, &int(1)), int(1));
        }
        assert_eq!(cheb_eval(4, &int(0)), int(1));
        assert_eq!(cheb_eval(2, &int(0)), int(-1));
        assert_eq!(cheb_eval(2, &rat(3, 2)), rat(7, 2));
        assert_eq!(cheb_eval(4, &int(2)), int(97));
        for k in 0..12 {
            let x = rat(-5, 7);
            assert_eq!(cheb_eval(k, &x), cheb_poly(k).eval(&x));
        }
    }

    #[test]
    fn shifted_root_examples() {
        let one = cheb_shifted_roots(1, &int(0), 64).unwrap();
        assert_eq!(one, vec![Interval::point(int(1))]);
        let two = cheb_shifted_roots(2, &int(1), 64).unwrap();
        assert_eq!(two, vec![Interval::point(int(0)), Interval::point(int(0))]);
        let three = cheb_shifted_roots(3, &int(0), 64).unwrap();
        assert_eq!(
            three,
            vec![Interval::point(int(1)), Interval::point(rat(-1, 2)), Interval::point(rat(-1, 2))]
        );
        let five = cheb_shifted_roots(5, &rat(1, 3), 64).unwrap();
        for (i, r) in five.iter().enumerate() {
            let v = ((1.0 / 3.0 + 2.0 * i as f64) * std::f64::consts::PI / 5.0).cos();
            assert!(to_f64(&r.lo) <= v + 1e-15 && v - 1e-15 <= to_f64(&r.hi));
        }
        assert!(cheb_shifted_roots(0, &int(0), 64).is_err());
    }

    #[test]
    fn growth_examples() {
        for k in 0..10 {
            let b = cheb_growth_lower_bound(k, &int(0)).unwrap();
            assert_eq!(b, rat(1, 2));
        }
        assert_eq!(cheb_growth_lower_bound(1, &int(2)).unwrap(), rat(3, 2));
        assert_eq!(cheb_growth_lower_bound(3, &rat(1, 2)).unwrap(), int(4));
        let b = cheb_growth_lower_bound(5, &rat(1, 3)).unwrap();
        let v = (1.0 + (2.0f64 / 3.0).sqrt()).powi(5) / 2.0;
        assert!(to_f64(&b) >= v && b <= cheb_eval(5, &rat(4, 3)));
        assert!(cheb_growth_lower_bound(2, &int(-1)).is_err());
    }
}
