//! Dense univariate polynomials over the rationals.

mod matrix;
mod roots;

pub use matrix::{char_poly, sigma_k, SquareMatrixQ};
pub use roots::{
    certified_ratio_lower, compare_largest_roots, is_real_rooted, isolate, largest_root, real_roots,
    sorted_roots, RealRoot, RootInterval,
};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Polynomial with rational coefficients in ascending degree order.
///
/// Trailing zeros are always trimmed, so the zero polynomial is the empty
/// coefficient list and every other polynomial has a nonzero leading
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawPolynomial")]
pub struct ExactPolynomial {
    #[serde(with = "crate::rational::serde_rational_vec")]
    coeffs: Vec<Rational>,
}

#[derive(Deserialize)]
struct RawPolynomial {
    #[serde(with = "crate::rational::serde_rational_vec")]
    coeffs: Vec<Rational>,
}

impl From<RawPolynomial> for ExactPolynomial {
    fn from(raw: RawPolynomial) -> Self {
        ExactPolynomial::new(raw.coeffs)
    }
}

impl ExactPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        ExactPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `Π (x − r)` over the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            &acc * &Self::new(vec![-r.clone(), Rational::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Coefficients of `x^{n-1}, …, x^{n-k}` where `n` is the degree.
    pub fn top_coefficients(&self, k: usize) -> Vec<Rational> {
        let n = self.degree().unwrap_or(0);
        (1..=k).map(|i| if i <= n { self.coeff(n - i) } else { Rational::zero() }).collect()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divide by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self(inner(x))` by Horner's scheme.
    pub fn compose(&self, inner: &ExactPolynomial) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// `self(x + c)`.
    pub fn taylor_shift(&self, c: &Rational) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        Self::new(a)
    }

    /// `self(c·x)`.
    pub fn scale_argument(&self, c: &Rational) -> Self {
        let mut power = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &power);
            power *= c;
        }
        Self::new(out)
    }

    /// Polynomial long division. Fails on a zero divisor.
    pub fn div_rem(&self, divisor: &ExactPolynomial) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    let t = &c * d;
                    rem[i + j] -= t;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &ExactPolynomial) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Exact quotient; fails when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &ExactPolynomial) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InvalidArgument("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    /// Square-free decomposition `self = c · Π f_i^i` with monic, pairwise
    /// coprime, square-free `f_i`. Returns `(f_i, i)` for nonconstant factors.
    pub fn squarefree_decomposition(&self) -> Vec<(ExactPolynomial, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let c = df.exact_div(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            b = b.exact_div(&a).expect("gcd divides");
            let c = d.exact_div(&a).expect("gcd divides");
            d = &c - &b.derivative();
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// The unique primitive integer polynomial with positive leading
    /// coefficient that is a rational multiple of `self`.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_zero() {
            for c in ints.iter_mut() {
                *c = &*c / &g;
            }
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            for c in ints.iter_mut() {
                *c = -&*c;
            }
        }
        ints
    }

    /// Polynomial whose roots are `a·μ + b` for the roots `μ` of `self`,
    /// scaled so that the leading coefficient keeps its sign and has
    /// absolute value one.
    pub fn shift_scale(&self, a: &Rational, b: &Rational) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidArgument("scale factor a must be nonzero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // p((x − b)/a)
        let q = self.compose(&Self::new(vec![-b / a, a.recip()]));
        let lc = self.leading().unwrap();
        let qlc = q.leading().unwrap().clone();
        let target = if lc.is_negative() { -Rational::one() } else { Rational::one() };
        Ok(q.scale(&(target / qlc)))
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn add(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn sub(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn mul(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ExactPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPolynomial::new(out)
    }
}

impl Neg for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn neg(self) -> ExactPolynomial {
        ExactPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

pub fn poly_add(a: &ExactPolynomial, b: &ExactPolynomial) -> ExactPolynomial {
    a + b
}

pub fn poly_mul(a: &ExactPolynomial, b: &ExactPolynomial) -> ExactPolynomial {
    a * b
}

pub fn poly_compose(outer: &ExactPolynomial, inner: &ExactPolynomial) -> ExactPolynomial {
    outer.compose(inner)
}

pub fn poly_shift_scale(p: &ExactPolynomial, a: &Rational, b: &Rational) -> Result<ExactPolynomial> {
    p.shift_scale(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(c: &[i64]) -> ExactPolynomial {
        ExactPolynomial::from_ints(c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(poly_mul(&p(&[1, 1]), &p(&[-1, 1])), p(&[-1, 0, 1]));
        let q = p(&[3, -2, 5]);
        assert_eq!(poly_mul(&q, &ExactPolynomial::one()), q);
        let t3 = p(&[0, -3, 0, 4]);
        assert_eq!(poly_mul(&t3, &t3), p(&[0, 0, 9, 0, -24, 0, 16]));
        assert_eq!(poly_add(&p(&[1, 2]), &p(&[-1, -2])), ExactPolynomial::zero());
        assert_eq!(ExactPolynomial::zero().degree(), None);
    }

    #[test]
    fn composition_examples() {
        assert_eq!(poly_compose(&p(&[0, 0, 1]), &p(&[1, 1])), p(&[1, 2, 1]));
        let q = p(&[7, 0, -1, 2]);
        assert_eq!(poly_compose(&ExactPolynomial::x(), &q), q);
        assert_eq!(poly_compose(&q, &ExactPolynomial::x()), q);
        assert_eq!(poly_compose(&p(&[-2, 0, 1]), &p(&[-1, 0, 2])), p(&[-1, 0, -4, 0, 4]));
    }

    #[test]
    fn shift_scale_examples() {
        assert_eq!(poly_shift_scale(&p(&[-1, 1]), &int(2), &int(3)).unwrap(), p(&[-5, 1]));
        assert_eq!(poly_shift_scale(&p(&[-1, 0, 1]), &int(1), &int(0)).unwrap(), p(&[-1, 0, 1]));
        assert_eq!(poly_shift_scale(&p(&[2, -3, 1]), &int(1), &int(1)).unwrap(), p(&[6, -5, 1]));
        assert!(poly_shift_scale(&p(&[2, -3, 1]), &int(0), &int(1)).is_err());
        // 3 − x has root 3; halving it gives 3/2 − x, leading coefficient still −1.
        let s = poly_shift_scale(&p(&[3, -1]), &rat(1, 2), &int(0)).unwrap();
        assert_eq!(s, ExactPolynomial::new(vec![rat(3, 2), int(-1)]));
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        let g = &p(&[-1, 1]) * &p(&[5, 1]);
        assert_eq!(f.gcd(&g), p(&[-1, 1]));
        assert!(a.div_rem(&ExactPolynomial::zero()).is_err());
    }

    #[test]
    fn squarefree_parts() {
        // (x−1)^3 (x+2)^2 x
        let f = &(&p(&[-1, 1]).pow(3) * &p(&[2, 1]).pow(2)) * &ExactPolynomial::x();
        let parts = f.squarefree_decomposition();
        assert_eq!(parts, vec![(ExactPolynomial::x(), 1), (p(&[2, 1]), 2), (p(&[-1, 1]), 3)]);
    }

    #[test]
    fn primitive_integer_form() {
        let f = ExactPolynomial::new(vec![rat(-1, 2), rat(3, 4), rat(-1, 4)]);
        assert_eq!(f.primitive_integer(), vec![BigInt::from(2), BigInt::from(-3), BigInt::from(1)]);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(ExactPolynomial::new(vec![rat(1, 2), int(-1)]).to_string(), "-x + 1/2");
    }

    #[test]
    fn json_form() {
        let f = ExactPolynomial::new(vec![rat(-1, 2), int(0), int(1)]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"coeffs":["-1/2","0/1","1/1"]}"#);
        let back: ExactPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
