//! The unramified Hecke algebra of GL(n, Q_p): double-coset basis,
//! Satake transform, convolution, central sums and degrees.
//!
//! Basis elements tau_{p,xi} are the indicator functions of the double
//! cosets K_p p^xi K_p, xi a dominant weight. The Satake transform is
//!   satake(tau_{p,xi}) = u^{<xi,2rho>} * P_xi(x; 1/p) * (x_1...x_n)^{min xi}
//! in the ring Q[u]/(u^2 - p), where P is Hall-Littlewood; the
//! normalization is pinned by satake(tau_{2,(1,0)}) = u*(x_1+x_2) and
//! cross-checked against the constant-term oracle in `oracle.rs`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};
use std::collections::BTreeMap;

use crate::symfunc::{
    hall_littlewood_at, schur_expand, Coeff, DominantWeight, QPolynomial, SymPoly,
};

use super::uring::USqrt;
use super::HeckeError;

/// A finite Q[u]/(u^2-p)-linear combination of double-coset indicators.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeElement {
    prime: u64,
    rank: usize,
    terms: BTreeMap<Vec<i64>, USqrt>,
}

impl HeckeElement {
    pub fn zero(prime: u64, rank: usize) -> Self {
        HeckeElement {
            prime,
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// The basis element tau_{p,xi}.
    pub fn basis(prime: u64, xi: &DominantWeight) -> Self {
        let mut h = HeckeElement::zero(prime, xi.rank());
        h.add_term(xi, USqrt::one_p(prime));
        h
    }

    /// The unit of the algebra, tau_{p,0} = indicator of K_p.
    pub fn unit(prime: u64, rank: usize) -> Self {
        HeckeElement::basis(prime, &DominantWeight::zero(rank))
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &USqrt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, xi: &DominantWeight, c: USqrt) {
        assert_eq!(xi.rank(), self.rank);
        if c.is_zero() {
            return;
        }
        let key = xi.entries().to_vec();
        let e = self
            .terms
            .entry(key.clone())
            .or_insert_with(|| USqrt::zero_p(self.prime));
        *e = e.add_ref(&c);
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, HeckeError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, c) in other.terms.iter() {
            out.add_term(&DominantWeight::new(k.clone()).unwrap(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &USqrt) -> Self {
        let mut out = HeckeElement::zero(self.prime, self.rank);
        for (k, x) in self.terms.iter() {
            out.add_term(&DominantWeight::new(k.clone()).unwrap(), x.mul_ref(c));
        }
        out
    }

    fn check_compatible(&self, other: &Self) -> Result<(), HeckeError> {
        if self.prime != other.prime || self.rank != other.rank {
            return Err(HeckeError::Incompatible {
                p1: self.prime,
                p2: other.prime,
                n1: self.rank,
                n2: other.rank,
            });
        }
        Ok(())
    }

    /// All support weights have min entry >= 0; needed for `central_sum`.
    pub fn support_integral(&self) -> bool {
        self.terms.keys().all(|k| *k.last().unwrap_or(&0) >= 0)
    }

    pub fn coefficient(&self, xi: &DominantWeight) -> USqrt {
        self.terms
            .get(xi.entries())
            .cloned()
            .unwrap_or_else(|| USqrt::zero_p(self.prime))
    }

    /// Sum over the central elements z = p^m Id, m >= 0, of the
    /// coefficient-weighted indicator: picks out the terms with
    /// xi = (m,...,m).
    pub fn central_sum(&self) -> Result<USqrt, HeckeError> {
        if !self.support_integral() {
            return Err(HeckeError::UnboundedSupport);
        }
        let mut acc = USqrt::zero_p(self.prime);
        for (k, c) in self.terms.iter() {
            if k.iter().all(|&e| e == k[0]) && k[0] >= 0 {
                acc = acc.add_ref(c);
            }
        }
        Ok(acc)
    }
}

/// Satake transform of a single basis element.
pub fn satake_basis(prime: u64, xi: &DominantWeight) -> SymPoly<USqrt> {
    let n = xi.rank();
    let (lambda, shift) = xi.to_partition_shift();
    let t = BigRational::new(BigInt::one(), BigInt::from(prime));
    let hl = hall_littlewood_at(&lambda, n, &t).expect("rank checked");
    let scaled = hl.map_coeffs(|c| {
        USqrt::from_rational(c.clone(), prime).mul_u_power(xi.pairing_two_rho())
    });
    scaled.det_shift(shift)
}

/// Satake transform of a Hecke element: an algebra isomorphism onto
/// symmetric Laurent polynomials over Q[u]/(u^2-p).
pub fn satake(h: &HeckeElement) -> SymPoly<USqrt> {
    let mut acc: SymPoly<USqrt> = SymPoly::zero(h.rank());
    for (k, c) in h.terms() {
        let xi = DominantWeight::new(k.clone()).unwrap();
        acc = acc.add(&satake_basis(h.prime(), &xi).scale(c));
    }
    acc
}

/// Invert the Satake transform by triangular back-substitution along the
/// dominance order (within each homogeneous component, the lex-largest
/// support weight is the leading weight of exactly one tau_{p,xi}).
pub fn satake_inverse(phi: &SymPoly<USqrt>, prime: u64) -> Result<HeckeElement, HeckeError> {
    let n = phi.rank();
    let mut rest = phi.clone();
    let mut out = HeckeElement::zero(prime, n);
    let mut guard = 0usize;
    while !rest.is_zero() {
        guard += 1;
        if guard > 50_000 {
            return Err(HeckeError::InversionBudget);
        }
        let nu_key = rest
            .terms()
            .map(|(w, _)| w.clone())
            .max_by(|a, b| {
                let ta: i64 = a.iter().sum();
                let tb: i64 = b.iter().sum();
                ta.cmp(&tb).then(a.cmp(b))
            })
            .unwrap();
        let nu = DominantWeight::new(nu_key.clone()).unwrap();
        let c = rest.coefficient(&nu_key);
        // leading coefficient of satake(tau_nu) at nu is u^{<nu,2rho>}
        let lead = USqrt::u_power(nu.pairing_two_rho(), prime);
        let a = c.mul_ref(&lead.inverse().expect("u-power is invertible"));
        rest = rest.sub(&satake_basis(prime, &nu).scale(&a));
        out.add_term(&nu, a);
    }
    Ok(out)
}

/// Convolution product, computed through the Satake isomorphism
/// (transform both sides, multiply, invert). The coset-pair counting
/// oracle in `oracle.rs` checks this on small cases.
pub fn convolve(a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement, HeckeError> {
    a.check_compatible(b)?;
    let prod = satake(a).mul(&satake(b));
    satake_inverse(&prod, a.prime())
}

/// Degree (number of left cosets) of K_p p^xi K_p / K_p: the closed form
///   p^{<xi,2rho>} * W(1/p) / W_xi(1/p)
/// with W the Poincare polynomial of S_n and W_xi that of the stabilizer
/// of xi. For n = 2, 3 this reproduces the explicit two- and three-row
/// formulas; `degree_enumerated` counts lattices directly.
pub fn degree(xi: &DominantWeight, prime: u64) -> Result<BigRational, HeckeError> {
    if xi.min_entry() < 0 {
        return Err(HeckeError::NegativeSupport);
    }
    Ok(degree_closed_form(xi, prime))
}

pub(crate) fn degree_closed_form(xi: &DominantWeight, prime: u64) -> BigRational {
    let n = xi.rank();
    let t = BigRational::new(BigInt::one(), BigInt::from(prime));
    let poincare_sn = QPolynomial::q_factorial(n).eval_rational(&t);
    let mut stab = BigRational::one();
    let mut i = 0;
    let entries = xi.entries();
    while i < n {
        let mut j = i;
        while j < n && entries[j] == entries[i] {
            j += 1;
        }
        stab *= QPolynomial::q_factorial(j - i).eval_rational(&t);
        i = j;
    }
    let pr = BigRational::from(BigInt::from(prime));
    let mut ppow = BigRational::one();
    let e = xi.pairing_two_rho();
    for _ in 0..e.unsigned_abs() {
        ppow *= &pr;
    }
    if e < 0 {
        ppow = ppow.recip();
    }
    ppow * poincare_sn / stab
}

/// The scaled elementary symmetric polynomials phi_j = e_{j-1} with
/// e_m(x) = 2^m * sum over all permutations of x_{s(1)}...x_{s(m)}
///        = 2^m * m! * (n-m)! * (elementary symmetric of degree m),
/// so e_0 = n!. They satisfy max_j |phi_j(alpha)| >= |alpha|_infty for
/// every alpha in C^n.
pub fn ramanujan_polynomials(n: usize) -> Vec<SymPoly<BigRational>> {
    let mut out = Vec::with_capacity(n + 1);
    for j in 1..=(n + 1) {
        let m = j - 1;
        let mut scale = BigInt::one();
        for k in 1..=m {
            scale *= 2 * k as i64; // 2^m * m!
        }
        for k in 1..=(n - m) {
            scale *= k as i64; // (n-m)!
        }
        let mut poly = SymPoly::zero(n);
        let mut w = vec![0i64; n];
        for wi in w.iter_mut().take(m) {
            *wi = 1;
        }
        poly.add_term(&w, BigRational::from(scale));
        out.push(poly);
    }
    out
}

/// The non-tempered detector: phi = sum_j (phi_j * dual(phi_j))^k. On
/// unitary Satake parameters its value is real, non-negative and at least
/// |alpha|_infty^{2k}.
pub fn ramanujan_detector(n: usize, k: usize) -> Result<SymPoly<BigRational>, HeckeError> {
    if k == 0 {
        return Err(HeckeError::InvalidParameter("k must be >= 1".into()));
    }
    let phis = ramanujan_polynomials(n);
    let mut acc = SymPoly::zero(n);
    for phi in phis.iter() {
        let sq = phi.mul(&phi.dual());
        acc = acc.add(&sq.pow(k));
    }
    Ok(acc)
}

/// Trivial-representation evaluation point (p^{(n-1)/2}, ..., p^{-(n-1)/2})
/// as exact u-ring scalars: evaluating satake(tau_xi) there reproduces the
/// coset count.
pub fn trivial_rep_evaluation(phi: &SymPoly<USqrt>, prime: u64) -> USqrt {
    let n = phi.rank();
    let mut acc = USqrt::zero_p(prime);
    for (w, c) in phi.terms() {
        for perm in crate::symfunc::distinct_permutations(w) {
            // alpha_i = u^{n+1-2i}, so the monomial value is
            // u^{sum w_i (n+1-2i)}
            let e: i64 = perm
                .iter()
                .enumerate()
                .map(|(i, &wi)| wi * (n as i64 + 1 - 2 * (i as i64 + 1)))
                .sum();
            acc = acc.add_ref(&c.mul_ref(&USqrt::u_power(e, prime)));
        }
    }
    acc
}

/// Schur-basis expansion of a u-ring symmetric polynomial; triangular
/// elimination identical to the rational case.
pub fn to_schur_basis_u(
    phi: &SymPoly<USqrt>,
    prime: u64,
) -> Result<Vec<(Vec<i64>, USqrt)>, HeckeError> {
    let n = phi.rank();
    let mut rest = phi.clone();
    let mut out = Vec::new();
    let mut guard = 0usize;
    while !rest.is_zero() {
        guard += 1;
        if guard > 50_000 {
            return Err(HeckeError::InversionBudget);
        }
        let nu_key = rest
            .terms()
            .map(|(w, _)| w.clone())
            .max_by(|a, b| {
                let ta: i64 = a.iter().sum();
                let tb: i64 = b.iter().sum();
                ta.cmp(&tb).then(a.cmp(b))
            })
            .unwrap();
        let c = rest.coefficient(&nu_key);
        let s = schur_expand(&DominantWeight::new(nu_key.clone()).unwrap(), n)
            .expect("dominant key");
        let s_u = s.map_coeffs(|r| USqrt::from_rational(r.clone(), prime));
        rest = rest.sub(&s_u.scale(&c));
        out.push((nu_key, c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dw(e: &[i64]) -> DominantWeight {
        DominantWeight::new(e.to_vec()).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn satake_unit() {
        let s = satake(&HeckeElement::unit(3, 3));
        assert_eq!(s.num_orbits(), 1);
        assert_eq!(s.coefficient(&[0, 0, 0]), USqrt::one_p(3));
    }

    #[test]
    fn satake_central() {
        // n=2: tau_{p,(1,1)} -> x1 x2
        let s = satake(&HeckeElement::basis(5, &dw(&[1, 1])));
        assert_eq!(s.num_orbits(), 1);
        assert_eq!(s.coefficient(&[1, 1]), USqrt::one_p(5));
    }

    #[test]
    fn satake_calibration_case() {
        // n=2: tau_{2,(1,0)} -> u*(x1 + x2)
        let s = satake(&HeckeElement::basis(2, &dw(&[1, 0])));
        assert_eq!(s.num_orbits(), 1);
        assert_eq!(s.coefficient(&[1, 0]), USqrt::u_power(1, 2));
    }

    #[test]
    fn satake_two_zero() {
        // satake(tau_{p,(2,0)}) = p*s_(2,0) - s_(1,1)
        //                       = p*m_(2,0) + (p-1)*m_(1,1)
        let p = 3u64;
        let s = satake(&HeckeElement::basis(p, &dw(&[2, 0])));
        assert_eq!(s.coefficient(&[2, 0]), USqrt::from_i64(3, p));
        assert_eq!(s.coefficient(&[1, 1]), USqrt::from_i64(2, p));
    }

    #[test]
    fn satake_inverse_roundtrip() {
        let p = 3u64;
        for entries in [vec![2i64, 0], vec![1, 1], vec![2, 1]] {
            let h = HeckeElement::basis(p, &dw(&entries));
            let back = satake_inverse(&satake(&h), p).unwrap();
            assert_eq!(back, h);
        }
        // and on a combination with u-coefficients
        let mut h = HeckeElement::basis(3, &dw(&[2, 1, 0]));
        h.add_term(&dw(&[1, 1, 1]), USqrt::new(rat(1, 2), rat(3, 1), 3));
        assert_eq!(satake_inverse(&satake(&h), 3).unwrap(), h);
    }

    #[test]
    fn convolution_n2_example() {
        // tau_(1,0) * tau_(1,0) = tau_(2,0) + (p+1) tau_(1,1)
        for p in [2u64, 3, 5] {
            let t10 = HeckeElement::basis(p, &dw(&[1, 0]));
            let prod = convolve(&t10, &t10).unwrap();
            assert_eq!(prod.coefficient(&dw(&[2, 0])), USqrt::one_p(p));
            assert_eq!(
                prod.coefficient(&dw(&[1, 1])),
                USqrt::from_i64(p as i64 + 1, p)
            );
            assert_eq!(prod.terms().count(), 2);
        }
    }

    #[test]
    fn convolution_by_central() {
        // tau_(1,0) * tau_(1,1) = tau_(2,1)
        let p = 3u64;
        let a = HeckeElement::basis(p, &dw(&[1, 0]));
        let b = HeckeElement::basis(p, &dw(&[1, 1]));
        let prod = convolve(&a, &b).unwrap();
        assert_eq!(prod, HeckeElement::basis(p, &dw(&[2, 1])));
    }

    #[test]
    fn unit_is_neutral() {
        let p = 2u64;
        let h = HeckeElement::basis(p, &dw(&[2, 1, 0]));
        let e = HeckeElement::unit(p, 3);
        assert_eq!(convolve(&e, &h).unwrap(), h);
        assert_eq!(convolve(&h, &e).unwrap(), h);
    }

    #[test]
    fn degree_closed_forms() {
        // n=2, (1,0): 1+p
        for p in [2u64, 3, 5] {
            assert_eq!(
                degree(&dw(&[1, 0]), p).unwrap(),
                rat(1 + p as i64, 1),
                "p={p}"
            );
        }
        // n=3, (2,1,0): (1+1/p+1/p^2)(1+1/p) p^4
        let p = 3i64;
        let expect = rat(p.pow(4), 1)
            * (rat(1, 1) + rat(1, p) + rat(1, p * p))
            * (rat(1, 1) + rat(1, p));
        assert_eq!(degree(&dw(&[2, 1, 0]), 3).unwrap(), expect);
        // central cosets have degree 1
        assert_eq!(degree(&dw(&[4, 4, 4]), 5).unwrap(), rat(1, 1));
    }

    #[test]
    fn degree_is_trivial_rep_evaluation() {
        for p in [2u64, 3] {
            for entries in [vec![1i64, 0], vec![2, 0], vec![2, 1], vec![2, 2]] {
                let xi = dw(&entries);
                let s = satake(&HeckeElement::basis(p, &xi));
                let v = trivial_rep_evaluation(&s, p);
                assert!(v.is_rational(), "value should be rational");
                assert_eq!(v.rational_part(), &degree(&xi, p).unwrap());
            }
            for entries in [vec![1i64, 0, 0], vec![1, 1, 0], vec![2, 1, 0]] {
                let xi = dw(&entries);
                let s = satake(&HeckeElement::basis(p, &xi));
                let v = trivial_rep_evaluation(&s, p);
                assert_eq!(v.rational_part(), &degree(&xi, p).unwrap());
            }
        }
    }

    #[test]
    fn central_sums() {
        let p = 5u64;
        assert_eq!(
            HeckeElement::basis(p, &dw(&[1, 1])).central_sum().unwrap(),
            USqrt::one_p(p)
        );
        assert_eq!(
            HeckeElement::basis(p, &dw(&[1, 0])).central_sum().unwrap(),
            USqrt::zero_p(p)
        );
        // unbounded support is refused
        let h = HeckeElement::basis(p, &dw(&[0, -1]));
        assert!(matches!(h.central_sum(), Err(HeckeError::UnboundedSupport)));
    }

    #[test]
    fn satake_is_homomorphism_small() {
        // satake(a*b) = satake(a)*satake(b) for a small panel
        let p = 2u64;
        let cases = [
            (vec![1i64, 0], vec![1i64, 0]),
            (vec![2, 0], vec![1, 1]),
            (vec![2, 1], vec![1, 0]),
        ];
        for (ea, eb) in cases {
            let a = HeckeElement::basis(p, &dw(&ea));
            let b = HeckeElement::basis(p, &dw(&eb));
            let lhs = satake(&convolve(&a, &b).unwrap());
            let rhs = satake(&a).mul(&satake(&b));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn monomial_positivity_of_satake() {
        // All monomial coefficients of satake(tau_xi) are non-negative
        // (checked in the u-ring sense: both components >= 0).
        for p in [2u64, 3] {
            for xi in DominantWeight::enumerate_box(3, 0, 2) {
                let s = satake(&HeckeElement::basis(p, &xi));
                for (_, c) in s.terms() {
                    assert!(c.is_nonnegative(), "negative coefficient in {xi}");
                }
            }
        }
    }

    #[test]
    fn ramanujan_polynomial_values() {
        // n=2: phi_2 = 2(x1+x2); at alpha=(2, 1/2) the value is 5 >= 2
        let phis = ramanujan_polynomials(2);
        assert_eq!(phis.len(), 3);
        assert_eq!(phis[1].coefficient(&[1, 0]), rat(2, 1));
        use num::complex::Complex64;
        let alpha = [Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.0)];
        let v = phis[1].evaluate(&alpha).unwrap();
        assert!((v.re - 5.0).abs() < 1e-12);
        // phi_1 = n! = 2
        assert_eq!(phis[0].coefficient(&[0, 0]), rat(2, 1));
    }
}
