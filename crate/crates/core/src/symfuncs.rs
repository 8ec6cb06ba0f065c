//! Elementary symmetric functions, power sums, and the conversions between
//! them (Newton's identities).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::ExactPolynomial;
use crate::rational::{int, Rational};

/// `(n, e_1..e_k)`: the leading statistics of `n` unknown roots.
///
/// Normally `k ≤ n`. Longer lists are accepted when the entries past `n` are
/// zero, as they are for any actual root vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricProfile {
    pub n: usize,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub e: Vec<Rational>,
}

/// `(n, p_1..p_k)` with `p_i = Σ_j μ_j^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSumProfile {
    pub n: usize,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub p: Vec<Rational>,
}

impl SymmetricProfile {
    pub fn new(n: usize, e: Vec<Rational>) -> Result<Self> {
        if e.iter().skip(n).any(|x| !x.is_zero()) {
            return Err(Error::InvalidArgument(format!(
                "e_i must vanish for i > n = {n} (k = {})",
                e.len()
            )));
        }
        Ok(SymmetricProfile { n, e })
    }

    /// Exact profile of an explicit root vector, truncated to `k` statistics.
    pub fn from_roots(roots: &[Rational], k: usize) -> Result<Self> {
        let n = roots.len();
        // Work with the integer roots D·μ_i and divide e_j by D^j at the end.
        let d = common_denominator(roots);
        let scaled: Vec<BigInt> = roots.iter().map(|r| r.numer() * (&d / r.denom())).collect();
        // e_j of the first i roots, updated one root at a time.
        let mut e = vec![BigInt::zero(); k + 1];
        e[0] = BigInt::one();
        for r in &scaled {
            if r.is_zero() {
                continue;
            }
            for j in (1..=k).rev() {
                let t = &e[j - 1] * r;
                e[j] += t;
            }
        }
        let mut d_pow = BigInt::one();
        let e = e
            .into_iter()
            .skip(1)
            .map(|x| {
                d_pow *= &d;
                Rational::new(x, d_pow.clone())
            })
            .collect();
        Ok(SymmetricProfile { n, e })
    }

    pub fn k(&self) -> usize {
        self.e.len()
    }

    /// The first `k` statistics.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k > self.k() {
            return Err(Error::OutOfRange { index: k, max: self.k() });
        }
        Ok(SymmetricProfile {
            n: self.n,
            e: self.e[..k].to_vec(),
        })
    }
}

impl PowerSumProfile {
    pub fn new(n: usize, p: Vec<Rational>) -> Result<Self> {
        if p.len() > n {
            return Err(Error::InvalidArgument(format!("k = {} exceeds n = {n}", p.len())));
        }
        Ok(PowerSumProfile { n, p })
    }

    pub fn from_roots(roots: &[Rational], k: usize) -> Result<Self> {
        let n = roots.len();
        if k > n {
            return Err(Error::InvalidArgument(format!("k = {k} exceeds n = {n}")));
        }
        let mut p = vec![Rational::zero(); k];
        for r in roots {
            let mut power = Rational::one();
            for slot in p.iter_mut() {
                power *= r;
                *slot += &power;
            }
        }
        Ok(PowerSumProfile { n, p })
    }

    pub fn k(&self) -> usize {
        self.p.len()
    }
}

/// Smallest-effort `D` with `e_i·D^i` integral for all `i`, found greedily.
/// Scaling the roots by `D` turns Newton's recurrence into integer arithmetic.
fn integral_scale(e: &[Rational]) -> BigInt {
    let mut d = BigInt::one();
    for (i, ei) in e.iter().enumerate() {
        let scaled = ei * Rational::from_integer(num_traits::pow(d.clone(), i + 1));
        if !scaled.denom().is_one() {
            d *= scaled.denom();
        }
    }
    d
}

/// Newton's identities: `p_i = Σ_{j<i} (−1)^{j−1} e_j p_{i−j} + (−1)^{i−1} i e_i`.
pub fn power_sums_from_elementary(prof: &SymmetricProfile) -> PowerSumProfile {
    let k = prof.k();
    let d = integral_scale(&prof.e);
    // e'_i = e_i D^i are the elementary functions of the scaled roots Dμ.
    let mut d_pow = BigInt::one();
    let mut scaled_e = Vec::with_capacity(k);
    let mut d_powers = Vec::with_capacity(k);
    for ei in &prof.e {
        d_pow *= &d;
        let v = ei * Rational::from_integer(d_pow.clone());
        scaled_e.push(v.to_integer());
        d_powers.push(d_pow.clone());
    }
    let mut p: Vec<BigInt> = Vec::with_capacity(k);
    for i in 1..=k {
        let mut acc = BigInt::from(i) * &scaled_e[i - 1];
        if i % 2 == 0 {
            acc = -acc;
        }
        for j in 1..i {
            let t = &scaled_e[j - 1] * &p[i - j - 1];
            if j % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        p.push(acc);
    }
    let p = p
        .into_iter()
        .zip(d_powers)
        .map(|(pi, di)| Rational::new(pi, di))
        .collect();
    PowerSumProfile { n: prof.n, p }
}

/// Inverse of [`power_sums_from_elementary`]:
/// `i·e_i = Σ_{j=1}^{i} (−1)^{j−1} e_{i−j} p_j`.
pub fn elementary_from_power_sums(prof: &PowerSumProfile) -> SymmetricProfile {
    let k = prof.k();
    let mut e = vec![Rational::one()];
    for i in 1..=k {
        let mut acc = Rational::zero();
        for j in 1..=i {
            let t = &e[i - j] * &prof.p[j - 1];
            if j % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        e.push(acc / int(i as i64));
    }
    e.remove(0);
    SymmetricProfile { n: prof.n, e }
}

/// `e_i = (−1)^i c_i` for a monic polynomial `x^n + c_1 x^{n−1} + …`.
pub fn profile_from_coefficients(n: usize, c: &[Rational]) -> Result<SymmetricProfile> {
    let e = c
        .iter()
        .enumerate()
        .map(|(i, ci)| if i % 2 == 0 { -ci.clone() } else { ci.clone() })
        .collect();
    SymmetricProfile::new(n, e)
}

/// Profile of the roots of a monic polynomial, truncated to `k`.
pub fn profile_from_polynomial(p: &ExactPolynomial, k: usize) -> Result<SymmetricProfile> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    if !p.is_monic() {
        return Err(Error::Precondition("polynomial must be monic".into()));
    }
    profile_from_coefficients(n, &p.top_coefficients(k.min(n)))
}

/// `Σ_i q(μ_i) = n·q_0 + Σ_{j≥1} q_j p_j`, computed from the profile alone.
pub fn eval_poly_sum(prof: &SymmetricProfile, q: &ExactPolynomial) -> Result<Rational> {
    let degree = q.degree().unwrap_or(0);
    if degree > prof.k() {
        return Err(Error::InsufficientInformation { degree, known: prof.k() });
    }
    let sums = power_sums_from_elementary(&prof.truncate(degree)?);
    Ok(power_sum_combination(prof.n, &sums.p, q))
}

/// `n·q_0 + Σ q_j p_j` for already-known power sums.
pub(crate) fn power_sum_combination(n: usize, p: &[Rational], q: &ExactPolynomial) -> Rational {
    let mut total = q.coeff(0) * int(n as i64);
    for (j, c) in q.coeffs().iter().enumerate().skip(1) {
        if !c.is_zero() {
            total += c * &p[j - 1];
        }
    }
    total
}

/// Whether `e_1..e_k` agree.
pub fn profiles_equal_up_to_k(a: &SymmetricProfile, b: &SymmetricProfile) -> Result<bool> {
    if a.n != b.n || a.k() != b.k() {
        return Err(Error::ProfileMismatch(format!(
            "(n, k) = ({}, {}) versus ({}, {})",
            a.n,
            a.k(),
            b.n,
            b.k()
        )));
    }
    Ok(a.e == b.e)
}

/// Least common multiple of the denominators, handy for integer comparisons.
pub fn common_denominator(values: &[Rational]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn newton_examples() {
        let one = SymmetricProfile::new(3, ints(&[5])).unwrap();
        assert_eq!(power_sums_from_elementary(&one).p, ints(&[5]));
        let two = SymmetricProfile::new(2, ints(&[3, 2])).unwrap();
        assert_eq!(power_sums_from_elementary(&two).p, ints(&[3, 5]));
        let zero = SymmetricProfile::new(4, ints(&[0, 0, 0])).unwrap();
        assert_eq!(power_sums_from_elementary(&zero).p, ints(&[0, 0, 0]));
    }

    #[test]
    fn inverse_examples() {
        let p = PowerSumProfile::new(2, ints(&[4])).unwrap();
        assert_eq!(elementary_from_power_sums(&p).e, ints(&[4]));
        let p = PowerSumProfile::new(2, ints(&[3, 5])).unwrap();
        assert_eq!(elementary_from_power_sums(&p).e, ints(&[3, 2]));
        let p = PowerSumProfile::new(2, ints(&[0, 2])).unwrap();
        assert_eq!(elementary_from_power_sums(&p).e, ints(&[0, -1]));
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(profile_from_coefficients(2, &ints(&[-3, 2])).unwrap().e, ints(&[3, 2]));
        assert_eq!(profile_from_coefficients(2, &[]).unwrap().k(), 0);
        let cubic = ExactPolynomial::from_ints(&[-6, 11, -6, 1]);
        assert_eq!(profile_from_polynomial(&cubic, 2).unwrap().e, ints(&[6, 11]));
        assert!(profile_from_coefficients(1, &ints(&[1, 2])).is_err());
        assert!(profile_from_coefficients(1, &ints(&[-1, 0])).is_ok());
    }

    #[test]
    fn poly_sum_examples() {
        let prof = SymmetricProfile::from_roots(&ints(&[1, 2, 3]), 2).unwrap();
        assert_eq!(eval_poly_sum(&prof, &ExactPolynomial::one()).unwrap(), int(3));
        assert_eq!(eval_poly_sum(&prof, &ExactPolynomial::from_ints(&[0, 0, 1])).unwrap(), int(14));
        let seven = SymmetricProfile::new(4, ints(&[7])).unwrap();
        assert_eq!(eval_poly_sum(&seven, &ExactPolynomial::x()).unwrap(), int(7));
        assert_eq!(
            eval_poly_sum(&seven, &ExactPolynomial::from_ints(&[0, 0, 1])),
            Err(Error::InsufficientInformation { degree: 2, known: 1 })
        );
    }

    #[test]
    fn equality_examples() {
        let a = SymmetricProfile::from_roots(&ints(&[1, 2]), 2).unwrap();
        assert!(profiles_equal_up_to_k(&a, &a).unwrap());
        let b = SymmetricProfile::from_roots(&ints(&[0, 3]), 2).unwrap();
        assert!(!profiles_equal_up_to_k(&a, &b).unwrap());
        assert!(profiles_equal_up_to_k(&a.truncate(1).unwrap(), &b.truncate(1).unwrap()).unwrap());
        assert!(profiles_equal_up_to_k(&a, &a.truncate(1).unwrap()).is_err());
        let weak_mu = SymmetricProfile::from_roots(&[rat(3, 2), int(0), rat(3, 2)], 2).unwrap();
        let weak_nu = SymmetricProfile::from_roots(&[int(2), rat(1, 2), rat(1, 2)], 2).unwrap();
        assert_eq!(weak_mu.e, vec![int(3), rat(9, 4)]);
        assert!(profiles_equal_up_to_k(&weak_mu, &weak_nu).unwrap());
    }

    #[test]
    fn rational_scaling_in_newton() {
        let roots = [rat(1, 2), rat(1, 3), rat(5, 7), int(2)];
        let prof = SymmetricProfile::from_roots(&roots, 4).unwrap();
        assert_eq!(power_sums_from_elementary(&prof), PowerSumProfile::from_roots(&roots, 4).unwrap());
    }
}
