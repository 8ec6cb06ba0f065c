use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::ExactPolynomial;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Dense square matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareMatrixQ {
    n: usize,
    #[serde(with = "rows")]
    entries: Vec<Vec<Rational>>,
    symmetric: bool,
}

mod rows {
    use super::Rational;
    use crate::rational::{parse, to_string};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let text: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(to_string).collect()).collect();
        serde::Serialize::serialize(&text, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let text = Vec::<Vec<String>>::deserialize(d)?;
        text.iter()
            .map(|r| r.iter().map(|s| parse(s).map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

impl SquareMatrixQ {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        if let Some(bad) = entries.iter().position(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!(
                "row {bad} has {} entries in a {n}x{n} matrix",
                entries[bad].len()
            )));
        }
        let symmetric = (0..n).all(|i| (0..i).all(|j| entries[i][j] == entries[j][i]));
        Ok(SquareMatrixQ { n, entries, symmetric })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn zero(n: usize) -> Self {
        SquareMatrixQ {
            n,
            entries: vec![vec![Rational::zero(); n]; n],
            symmetric: true,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![Rational::one(); n])
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = Self::zero(d.len());
        for (i, x) in d.iter().enumerate() {
            m.entries[i][i] = x.clone();
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    /// True only when `A = Aᵀ` was verified entrywise.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| &self.entries[i][i]).sum()
    }

    pub fn mul(&self, other: &SquareMatrixQ) -> Result<SquareMatrixQ> {
        if self.n != other.n {
            return Err(Error::InvalidArgument("dimension mismatch".into()));
        }
        let n = self.n;
        let mut out = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        out[i][j] += a * b;
                    }
                }
            }
        }
        SquareMatrixQ::new(out)
    }

    pub fn pow(&self, e: usize) -> SquareMatrixQ {
        let mut result = Self::identity(self.n);
        for _ in 0..e {
            result = result.mul(self).expect("same dimension");
        }
        result
    }

    /// `det(xI − A)`.
    pub fn char_poly(&self) -> ExactPolynomial {
        char_poly(self)
    }

    pub fn det(&self) -> Rational {
        let c = self.char_poly();
        // det(−A) = (−1)^n det(A) is the constant term.
        if self.n % 2 == 0 {
            c.coeff(0)
        } else {
            -c.coeff(0)
        }
    }
}

/// `det(xI − A)` by the division-free Samuelson–Berkowitz recurrence over the
/// leading principal submatrices.
pub fn char_poly(a: &SquareMatrixQ) -> ExactPolynomial {
    let n = a.n;
    let m = &a.entries;
    // Descending coefficients of det(xI − A_k), starting from A_0 (empty).
    let mut c: Vec<Rational> = vec![Rational::one()];
    for k in 0..n {
        let diag = &m[k][k];
        // s_j = r A_k^j c for j < k, where r is row k and c column k restricted to 0..k.
        let mut s = Vec::with_capacity(k);
        let mut v: Vec<Rational> = (0..k).map(|i| m[i][k].clone()).collect();
        for j in 0..k {
            let sj: Rational = (0..k)
                .filter(|&i| !m[k][i].is_zero() && !v[i].is_zero())
                .map(|i| &m[k][i] * &v[i])
                .sum();
            s.push(sj);
            if j + 1 < k {
                let next: Vec<Rational> = (0..k)
                    .map(|row| {
                        (0..k)
                            .filter(|&col| !m[row][col].is_zero() && !v[col].is_zero())
                            .map(|col| &m[row][col] * &v[col])
                            .sum()
                    })
                    .collect();
                v = next;
            }
        }
        let mut d = vec![Rational::zero(); k + 2];
        for i in 0..k + 2 {
            let mut x = if i <= k { c[i].clone() } else { Rational::zero() };
            if i >= 1 && i - 1 <= k {
                x -= diag * &c[i - 1];
            }
            if i >= 2 {
                for j in 0..=(i - 2) {
                    if j <= k && i - 2 - j < k {
                        x -= &c[j] * &s[i - 2 - j];
                    }
                }
            }
            d[i] = x;
        }
        c = d;
    }
    c.reverse();
    ExactPolynomial::new(c)
}

/// Sum of the principal `k×k` minors of `A`, read from
/// `det(xI − A) = Σ_k (−1)^k σ_k(A) x^{n−k}`.
pub fn sigma_k(a: &SquareMatrixQ, k: usize) -> Result<Rational> {
    if k > a.n {
        return Err(Error::OutOfRange { index: k, max: a.n });
    }
    let c = char_poly(a).coeff(a.n - k);
    Ok(if k % 2 == 0 { c } else { -c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn char_poly_examples() {
        assert_eq!(SquareMatrixQ::zero(2).char_poly(), ExactPolynomial::from_ints(&[0, 0, 1]));
        let swap = SquareMatrixQ::from_ints(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(swap.char_poly(), ExactPolynomial::from_ints(&[-1, 0, 1]));
        let tri = SquareMatrixQ::from_ints(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap();
        assert_eq!(tri.char_poly(), ExactPolynomial::from_ints(&[-2, -3, 0, 1]));
        assert_eq!(SquareMatrixQ::zero(0).char_poly(), ExactPolynomial::one());
    }

    #[test]
    fn sigma_examples() {
        let d = SquareMatrixQ::from_ints(&[&[1, 0], &[0, 2]]).unwrap();
        assert_eq!(sigma_k(&d, 0).unwrap(), int(1));
        assert_eq!(sigma_k(&d, 1).unwrap(), int(3));
        assert_eq!(sigma_k(&d, 2).unwrap(), int(2));
        let swap = SquareMatrixQ::from_ints(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(sigma_k(&swap, 2).unwrap(), int(-1));
        assert_eq!(sigma_k(&swap, 3), Err(Error::OutOfRange { index: 3, max: 2 }));
    }

    #[test]
    fn nonsymmetric_rational_matrix() {
        let a = SquareMatrixQ::new(vec![
            vec![rat(1, 2), int(2), int(0)],
            vec![int(-1), int(3), rat(1, 3)],
            vec![int(4), int(0), int(-2)],
        ])
        .unwrap();
        assert!(!a.is_symmetric());
        // det = 1/2(−6 − 0) − 2(2 − 4/3) + 0 = −3 − 4/3
        assert_eq!(a.det(), rat(-13, 3));
        assert_eq!(sigma_k(&a, 1).unwrap(), a.trace());
    }

    #[test]
    fn shape_is_checked() {
        assert!(SquareMatrixQ::new(vec![vec![int(1), int(2)], vec![int(3)]]).is_err());
    }
}
