//! Integer-coefficient polynomials in a formal variable q.
//!
//! Used for Kostka-Foulkes polynomials, the Hall-Littlewood parameter t,
//! and Hecke-operator degree bookkeeping.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in q with exact integer coefficients, lowest degree first.
/// The zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        QPolynomial::new(vec![BigInt::from(c)])
    }

    /// The monomial q^d.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::one();
        QPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Smallest exponent with nonzero coefficient.
    pub fn lowest_exponent(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Exact division by q^v; panics if a lower term is present.
    pub fn shift_down(&self, v: usize) -> QPolynomial {
        if self.is_zero() {
            return QPolynomial::zero();
        }
        assert!(
            self.lowest_exponent().unwrap() >= v,
            "shift_down would truncate"
        );
        QPolynomial::new(self.coeffs[v..].to_vec())
    }

    pub fn eval_bigint(&self, q: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        acc
    }

    pub fn eval_i64(&self, q: i64) -> BigInt {
        self.eval_bigint(&BigInt::from(q))
    }

    pub fn eval_rational(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + BigRational::from(c.clone());
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> QPolynomial {
        QPolynomial::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Exact polynomial division; returns None if the remainder is nonzero.
    pub fn div_exact(&self, d: &QPolynomial) -> Option<QPolynomial> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(QPolynomial::zero());
        }
        let mut rem = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        let lead = d.coeffs.last().unwrap();
        if rem.len() < d.coeffs.len() {
            return None;
        }
        let qdeg = rem.len() - d.coeffs.len();
        let mut quot = vec![BigInt::zero(); qdeg + 1];
        for k in (0..=qdeg).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            if (&top % lead) != BigInt::zero() {
                return None;
            }
            let c = top / lead;
            for (i, di) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * di;
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(QPolynomial::new(quot))
    }

    /// 1 + q + ... + q^(m-1).
    pub fn q_integer(m: usize) -> QPolynomial {
        QPolynomial::new(vec![BigInt::one(); m])
    }

    /// [m]_q! = prod_{k=1}^{m} (1 + q + ... + q^(k-1)).
    pub fn q_factorial(m: usize) -> QPolynomial {
        let mut acc = QPolynomial::one();
        for k in 1..=m {
            acc = &acc * &QPolynomial::q_integer(k);
        }
        acc
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        QPolynomial::new(out)
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: QPolynomial) -> QPolynomial {
        &self + &rhs
    }
}

impl num::traits::Zero for QPolynomial {
    fn zero() -> Self {
        QPolynomial::zero()
    }
    fn is_zero(&self) -> bool {
        QPolynomial::is_zero(self)
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::new(out)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "q")?,
                1 => write!(f, "{c}*q")?,
                _ if c.is_one() => write!(f, "q^{i}")?,
                _ => write!(f, "{c}*q^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = QPolynomial::new(vec![BigInt::from(1), BigInt::from(2)]); // 1 + 2q
        let b = QPolynomial::new(vec![BigInt::from(3), BigInt::from(1)]); // 3 + q
        let p = &a * &b; // 3 + 7q + 2q^2
        assert_eq!(
            p.coeffs(),
            &[BigInt::from(3), BigInt::from(7), BigInt::from(2)]
        );
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert_eq!(p.eval_i64(2), BigInt::from(3 + 14 + 8));
    }

    #[test]
    fn q_factorial_poincare() {
        // [3]_q! = (1)(1+q)(1+q+q^2) = Poincare polynomial of S_3
        let f = QPolynomial::q_factorial(3);
        assert_eq!(f.eval_i64(1), BigInt::from(6));
        assert_eq!(f.degree(), Some(3));
    }

    #[test]
    fn div_exact_rejects_nonexact() {
        let a = QPolynomial::new(vec![BigInt::from(1), BigInt::from(1)]);
        let b = QPolynomial::new(vec![BigInt::from(0), BigInt::from(1)]); // q
        assert!(a.div_exact(&b).is_none());
    }
}
