//! Symmetric Laurent polynomials in n variables, stored by dominant orbit
//! representatives with exact coefficients.
//!
//! A `SymPoly<C>` is the full S_n-symmetrization of its stored terms: the
//! monomial coefficient at any weight w equals the stored coefficient at
//! the dominant sort of w. Coefficient rings in use: exact rationals,
//! integer polynomials in t (Hall-Littlewood), the ring Q[u]/(u^2-p)
//! (Satake transforms), and f64 complex numbers never appear here -
//! floating point only enters through `evaluate`.

use num::complex::Complex64;
use num::rational::BigRational;
use num::traits::ToPrimitive;
use std::collections::BTreeMap;
use std::fmt;

use super::partition::dominant_sort;
use super::qpoly::QPolynomial;
use super::SymFuncError;

/// Coefficient ring operations needed by the symmetric-function layer;
/// `num::Zero` supplies the additive identity and the zero test.
pub trait Coeff: Clone + PartialEq + num::traits::Zero {
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Coefficient conjugation (identity on real rings).
    fn conj_ref(&self) -> Self {
        self.clone()
    }
}

impl Coeff for BigRational {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Coeff for QPolynomial {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

/// Symmetric Laurent polynomial; keys are dominant weight vectors of fixed
/// length `rank`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoly<C: Coeff> {
    rank: usize,
    terms: BTreeMap<Vec<i64>, C>,
}

pub type SymLaurentPoly = SymPoly<BigRational>;

impl<C: Coeff> SymPoly<C> {
    pub fn zero(rank: usize) -> Self {
        SymPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: C) -> Self {
        let mut p = SymPoly::zero(rank);
        p.add_term(&vec![0; rank], c);
        p
    }

    /// x_1 ... x_n raised to the k-th power.
    pub fn det_power(rank: usize, k: i64, c: C) -> Self {
        let mut p = SymPoly::zero(rank);
        p.add_term(&vec![k; rank], c);
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_orbits(&self) -> usize {
        self.terms.len()
    }

    /// Iterate over (dominant representative, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &C)> {
        self.terms.iter()
    }

    /// Add c * m_w where m_w is the orbit sum of x^w (w arbitrary weight).
    pub fn add_term(&mut self, w: &[i64], c: C) {
        assert_eq!(w.len(), self.rank, "weight length must equal rank");
        if c.is_zero() {
            return;
        }
        let key = dominant_sort(w);
        let entry = self.terms.entry(key.clone()).or_insert_with(C::zero);
        *entry = entry.add_ref(&c);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Monomial coefficient at weight w (any permutation of a stored key).
    pub fn coefficient(&self, w: &[i64]) -> C {
        self.terms
            .get(&dominant_sort(w))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank);
        let mut out = self.clone();
        for (w, c) in other.terms.iter() {
            out.add_term(w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SymPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg_ref()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return SymPoly::zero(self.rank);
        }
        SymPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (w.clone(), x.mul_ref(c)))
                .collect(),
        }
    }

    /// Full monomial expansion: every weight in every orbit, with its
    /// coefficient.
    pub fn to_monomials(&self) -> Vec<(Vec<i64>, C)> {
        let mut out = Vec::new();
        for (w, c) in self.terms.iter() {
            for perm in distinct_permutations(w) {
                out.push((perm, c.clone()));
            }
        }
        out
    }

    /// Rebuild from an arbitrary monomial map, keeping only dominant keys.
    /// The input must be symmetric; this is checked in debug builds.
    pub fn from_monomials(rank: usize, map: BTreeMap<Vec<i64>, C>) -> Self {
        let mut terms = BTreeMap::new();
        for (w, c) in map.iter() {
            if c.is_zero() {
                continue;
            }
            if dominant_sort(w) == *w {
                terms.insert(w.clone(), c.clone());
            } else {
                debug_assert_eq!(
                    map.get(&dominant_sort(w)).map(|d| d == c),
                    Some(true),
                    "monomial map is not symmetric"
                );
            }
        }
        SymPoly { rank, terms }
    }

    /// Product by full monomial convolution.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch in product");
        let a = self.to_monomials();
        let b = other.to_monomials();
        let mut map: BTreeMap<Vec<i64>, C> = BTreeMap::new();
        for (wa, ca) in a.iter() {
            for (wb, cb) in b.iter() {
                let w: Vec<i64> = wa.iter().zip(wb.iter()).map(|(x, y)| x + y).collect();
                let c = ca.mul_ref(cb);
                if c.is_zero() {
                    continue;
                }
                let entry = map.entry(w).or_insert_with(C::zero);
                *entry = entry.add_ref(&c);
            }
        }
        map.retain(|_, c| !c.is_zero());
        SymPoly::from_monomials(self.rank, map)
    }

    pub fn pow(&self, k: usize) -> Self {
        assert!(k >= 1, "pow requires k >= 1");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// x_i -> 1/x_i with coefficient conjugation; an involution.
    pub fn dual(&self) -> Self {
        SymPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| {
                    let neg: Vec<i64> = w.iter().rev().map(|&x| -x).collect();
                    (neg, c.conj_ref())
                })
                .collect(),
        }
    }

    /// Largest total degree max_w sum(w) over the support (Laurent degree).
    pub fn laurent_degree(&self) -> Option<i64> {
        self.terms.keys().map(|w| w.iter().sum()).max()
    }

    /// Paper-side degree: max over the support of (max w - min w); assigns
    /// degree 0 to powers of x_1...x_n.
    pub fn spread_degree(&self) -> Option<i64> {
        self.terms
            .keys()
            .map(|w| w.first().unwrap_or(&0) - w.last().unwrap_or(&0))
            .max()
    }

    /// Multiply by (x_1...x_n)^k.
    pub fn det_shift(&self, k: i64) -> Self {
        SymPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.iter().map(|&x| x + k).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SymPoly<D> {
        let mut terms = BTreeMap::new();
        for (w, c) in self.terms.iter() {
            let d = f(c);
            if !d.is_zero() {
                terms.insert(w.clone(), d);
            }
        }
        SymPoly {
            rank: self.rank,
            terms,
        }
    }
}

impl SymPoly<BigRational> {
    /// Numeric evaluation at alpha in (C^x)^n.
    pub fn evaluate(&self, alpha: &[Complex64]) -> Result<Complex64, SymFuncError> {
        if alpha.len() != self.rank {
            return Err(SymFuncError::RankMismatch {
                expected: self.rank,
                found: alpha.len(),
            });
        }
        if alpha.iter().any(|a| a.norm() == 0.0) {
            return Err(SymFuncError::ZeroCoordinate);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, c) in self.terms.iter() {
            let cf = rational_to_f64(c);
            for perm in distinct_permutations(w) {
                let mut m = Complex64::new(1.0, 0.0);
                for (a, &e) in alpha.iter().zip(perm.iter()) {
                    m *= a.powi(e as i32);
                }
                acc += cf * m;
            }
        }
        Ok(acc)
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// All distinct permutations of a vector, in lexicographic order.
pub fn distinct_permutations(w: &[i64]) -> Vec<Vec<i64>> {
    let mut v = w.to_vec();
    v.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(v.clone());
        // next_permutation
        let n = v.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
    }
    out
}

impl<C: Coeff + fmt::Display> fmt::Display for SymPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*m{w:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn distinct_permutations_counts() {
        assert_eq!(distinct_permutations(&[1, 0, 0]).len(), 3);
        assert_eq!(distinct_permutations(&[2, 1, 0]).len(), 6);
        assert_eq!(distinct_permutations(&[1, 1]).len(), 1);
    }

    #[test]
    fn product_of_power_sums() {
        // (x1 + x2)^2 = m_(2,0) + 2 m_(1,1) over rank 2
        let mut e1 = SymPoly::zero(2);
        e1.add_term(&[1, 0], q(1));
        let sq = e1.mul(&e1);
        assert_eq!(sq.coefficient(&[2, 0]), q(1));
        assert_eq!(sq.coefficient(&[1, 1]), q(2));
    }

    #[test]
    fn dual_is_involution() {
        let mut p = SymPoly::zero(3);
        p.add_term(&[2, 1, 0], q(5));
        p.add_term(&[1, 1, 1], q(-2));
        assert_eq!(p.dual().dual(), p);
        assert_eq!(p.dual().coefficient(&[0, -1, -2]), q(5));
    }

    #[test]
    fn evaluate_monomial() {
        let mut p = SymPoly::zero(2);
        p.add_term(&[1, 1], q(1)); // x1 x2
        let v = p
            .evaluate(&[Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.0)])
            .unwrap();
        assert!((v.re - 1.0).abs() < 1e-14 && v.im.abs() < 1e-14);
    }

    #[test]
    fn degrees() {
        let mut p = SymPoly::zero(2);
        p.add_term(&[3, 1], q(1));
        p.add_term(&[2, 2], q(1));
        assert_eq!(p.laurent_degree(), Some(4));
        assert_eq!(p.spread_degree(), Some(2));
    }
}
