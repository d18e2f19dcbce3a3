//! The scalar ring Q[u]/(u^2 - p): exact arithmetic with a formal sqrt(p).
//!
//! Satake transforms live over this ring because <xi, rho> is
//! half-integral for half of the weights; adjoining u = sqrt(p) keeps the
//! whole transform exact. Multiplication is one line:
//! (a + b u)(c + d u) = (ac + bd p) + (ad + bc) u.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::fmt;

use crate::symfunc::Coeff;

/// An element a + b*u with u^2 = p. The prime is carried alongside; the
/// additive/multiplicative identities use p = 0 as a neutral marker that
/// adopts the other operand's prime.
#[derive(Clone, Debug)]
pub struct USqrt {
    pub a: BigRational,
    pub b: BigRational,
    pub p: u64,
}

impl PartialEq for USqrt {
    fn eq(&self, other: &Self) -> bool {
        // the prime is context; it only distinguishes values when the
        // irrational part is present and both sides carry a real prime
        self.a == other.a
            && self.b == other.b
            && (self.b.is_zero() || self.p == other.p || self.p == 0 || other.p == 0)
    }
}

impl USqrt {
    pub fn new(a: BigRational, b: BigRational, p: u64) -> Self {
        USqrt { a, b, p }
    }

    pub fn from_rational(a: BigRational, p: u64) -> Self {
        USqrt {
            a,
            b: BigRational::zero(),
            p,
        }
    }

    pub fn from_i64(a: i64, p: u64) -> Self {
        USqrt::from_rational(BigRational::from(BigInt::from(a)), p)
    }

    pub fn zero_p(p: u64) -> Self {
        USqrt {
            a: BigRational::zero(),
            b: BigRational::zero(),
            p,
        }
    }

    pub fn one_p(p: u64) -> Self {
        USqrt {
            a: BigRational::one(),
            b: BigRational::zero(),
            p,
        }
    }

    /// u^k for k in Z (u is invertible: u^{-1} = u / p).
    pub fn u_power(k: i64, p: u64) -> Self {
        let pr = BigRational::from(BigInt::from(p));
        let half = k.div_euclid(2);
        let odd = k.rem_euclid(2) == 1;
        let scale = if half >= 0 {
            num::pow::pow(pr, half as usize)
        } else {
            num::pow::pow(pr.recip(), (-half) as usize)
        };
        if odd {
            USqrt::new(BigRational::zero(), scale, p)
        } else {
            USqrt::new(scale, BigRational::zero(), p)
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    fn merged_p(&self, other: &Self) -> u64 {
        if self.p == 0 {
            other.p
        } else {
            debug_assert!(other.p == 0 || other.p == self.p, "mixed primes in u-ring");
            self.p
        }
    }

    pub fn inverse(&self) -> Option<USqrt> {
        // (a + bu)^{-1} = (a - bu) / (a^2 - b^2 p)
        let pr = BigRational::from(BigInt::from(self.p));
        let norm = &self.a * &self.a - &self.b * &self.b * pr;
        if norm.is_zero() {
            return None;
        }
        Some(USqrt::new(&self.a / &norm, -(&self.b / &norm), self.p))
    }

    pub fn mul_u_power(&self, k: i64) -> USqrt {
        self.mul_ref(&USqrt::u_power(k, self.p))
    }

    /// Numeric value with u = sqrt(p).
    pub fn to_f64(&self) -> f64 {
        crate::symfunc::rational_to_f64(&self.a)
            + crate::symfunc::rational_to_f64(&self.b) * (self.p as f64).sqrt()
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.a.is_negative() && !self.b.is_negative()
    }
}

impl std::ops::Add for USqrt {
    type Output = USqrt;
    fn add(self, rhs: USqrt) -> USqrt {
        self.add_ref(&rhs)
    }
}

impl num::traits::Zero for USqrt {
    fn zero() -> Self {
        USqrt::zero_p(0)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl Coeff for USqrt {
    fn add_ref(&self, other: &Self) -> Self {
        USqrt {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            p: self.merged_p(other),
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let p = self.merged_p(other);
        let pr = BigRational::from(BigInt::from(p));
        USqrt {
            a: &self.a * &other.a + &self.b * &other.b * &pr,
            b: &self.a * &other.b + &self.b * &other.a,
            p,
        }
    }
    fn neg_ref(&self) -> Self {
        USqrt {
            a: -&self.a,
            b: -&self.b,
            p: self.p,
        }
    }
}

impl fmt::Display for USqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*u", self.b)
        } else {
            write!(f, "{} + {}*u", self.a, self.b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn u_squared_is_p() {
        let u = USqrt::u_power(1, 5);
        let u2 = u.mul_ref(&u);
        assert_eq!(u2, USqrt::from_i64(5, 5));
    }

    #[test]
    fn negative_u_powers() {
        let um1 = USqrt::u_power(-1, 3);
        assert_eq!(um1, USqrt::new(rat(0, 1), rat(1, 3), 3)); // u/3
        let one = um1.mul_ref(&USqrt::u_power(1, 3));
        assert_eq!(one, USqrt::one_p(3));
    }

    #[test]
    fn inverse() {
        let x = USqrt::new(rat(2, 1), rat(1, 1), 7); // 2 + u
        let inv = x.inverse().unwrap();
        assert_eq!(x.mul_ref(&inv), USqrt::one_p(7));
        assert!(USqrt::zero_p(7).inverse().is_none());
    }
}
