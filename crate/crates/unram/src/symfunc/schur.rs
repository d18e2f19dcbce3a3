//! Schur polynomials, the Schur basis, and Littlewood-Richardson
//! multiplication.
//!
//! Two independent expansion routes are kept side by side: semistandard
//! tableau enumeration for small weight (also the test oracle) and the
//! Jacobi-Trudi determinant. Products are likewise computed both by the
//! genuine Littlewood-Richardson rule and by raw monomial convolution.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::One;
use std::collections::BTreeMap;

use super::partition::{DominantWeight, Partition};
use super::sympoly::{Coeff, SymPoly};
use super::SymFuncError;

/// Weight above which `schur_expand` switches from tableau enumeration to
/// the Jacobi-Trudi determinant.
const TABLEAU_WEIGHT_CUTOFF: u64 = 8;

fn one() -> BigRational {
    BigRational::from(BigInt::one())
}

/// Monomial expansion of the Schur Laurent polynomial s_nu in n variables.
///
/// Negative entries are handled by factoring out the minimal entry as a
/// power of x_1...x_n.
pub fn schur_expand(nu: &DominantWeight, n: usize) -> Result<SymPoly<BigRational>, SymFuncError> {
    if nu.rank() != n {
        return Err(SymFuncError::RankMismatch {
            expected: n,
            found: nu.rank(),
        });
    }
    let (lambda, shift) = nu.to_partition_shift();
    let base = schur_partition(&lambda, n)?;
    Ok(if shift == 0 { base } else { base.det_shift(shift) })
}

/// Schur polynomial of a partition shape in n variables.
pub fn schur_partition(lambda: &Partition, n: usize) -> Result<SymPoly<BigRational>, SymFuncError> {
    if lambda.len() > n {
        // more rows than variables: the polynomial vanishes
        return Ok(SymPoly::zero(n));
    }
    if lambda.weight() <= TABLEAU_WEIGHT_CUTOFF {
        Ok(schur_by_tableaux(lambda, n))
    } else {
        schur_by_jacobi_trudi(lambda, n)
    }
}

/// Tableau-enumeration route: sum of x^weight(T) over SSYT of shape lambda
/// with entries in 1..=n. Exposed for use as an independent oracle.
pub fn schur_by_tableaux(lambda: &Partition, n: usize) -> SymPoly<BigRational> {
    let mut poly = SymPoly::zero(n);
    if lambda.len() > n {
        return poly;
    }
    for w in ssyt_weights(lambda, n) {
        poly.add_term(&w.iter().map(|&x| x as i64).collect::<Vec<_>>(), one());
    }
    // accumulate per-orbit: add_term already merged symmetric copies, but
    // every weight of every tableau was added, so each dominant key now
    // holds (orbit size) * K; rebuild by dividing out the orbit sizes.
    let mut out = SymPoly::zero(n);
    for (w, c) in poly.terms() {
        let orbit = super::sympoly::distinct_permutations(w).len() as i64;
        out.add_term(w, c / BigRational::from(BigInt::from(orbit)));
    }
    out
}

/// All SSYT content vectors (with multiplicity) of the given shape with
/// entries bounded by n.
fn ssyt_weights(lambda: &Partition, n: usize) -> Vec<Vec<u32>> {
    let rows = lambda.len();
    let mut cells = Vec::new();
    for r in 0..rows {
        for c in 0..lambda.part(r) as usize {
            cells.push((r, c));
        }
    }
    let mut fill: Vec<Vec<u32>> = (0..rows)
        .map(|r| vec![0; lambda.part(r) as usize])
        .collect();
    let mut out = Vec::new();
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        fill: &mut Vec<Vec<u32>>,
        n: u32,
        out: &mut Vec<Vec<u32>>,
    ) {
        if idx == cells.len() {
            let mut w = vec![0u32; n as usize];
            for row in fill.iter() {
                for &e in row.iter() {
                    w[(e - 1) as usize] += 1;
                }
            }
            out.push(w);
            return;
        }
        let (r, c) = cells[idx];
        let mut lo = 1;
        if c > 0 {
            lo = lo.max(fill[r][c - 1]); // weakly increasing along rows
        }
        if r > 0 {
            lo = lo.max(fill[r - 1][c] + 1); // strictly increasing down columns
        }
        for e in lo..=n {
            fill[r][c] = e;
            rec(idx + 1, cells, fill, n, out);
        }
        fill[r][c] = 0;
    }
    rec(0, &cells, &mut fill, n as u32, &mut out);
    out
}

/// Number of SSYT of the given shape and entry bound (dimension of the
/// GL(n) representation).
pub fn ssyt_count(lambda: &Partition, n: usize) -> u64 {
    ssyt_weights(lambda, n).len() as u64
}

/// Jacobi-Trudi: s_lambda = det(h_{lambda_i - i + j}).
pub fn schur_by_jacobi_trudi(
    lambda: &Partition,
    n: usize,
) -> Result<SymPoly<BigRational>, SymFuncError> {
    let l = lambda.len();
    if l == 0 {
        return Ok(SymPoly::constant(n, one()));
    }
    // cache of complete homogeneous polynomials
    let mut h: BTreeMap<i64, SymPoly<BigRational>> = BTreeMap::new();
    let mut need = Vec::new();
    for i in 0..l {
        for j in 0..l {
            need.push(lambda.part(i) as i64 - i as i64 + j as i64);
        }
    }
    for d in need {
        h.entry(d).or_insert_with(|| complete_homogeneous(d, n));
    }
    let mut acc = SymPoly::zero(n);
    for (perm, sign) in permutations_with_sign(l) {
        let mut prod = SymPoly::constant(n, one());
        let mut zero = false;
        for i in 0..l {
            let d = lambda.part(i) as i64 - i as i64 + perm[i] as i64;
            let hi = &h[&d];
            if hi.is_zero() {
                zero = true;
                break;
            }
            prod = prod.mul(hi);
        }
        if zero {
            continue;
        }
        if sign < 0 {
            prod = prod.neg();
        }
        acc = acc.add(&prod);
    }
    Ok(acc)
}

/// h_d in n variables (zero for d < 0, one for d = 0).
pub fn complete_homogeneous(d: i64, n: usize) -> SymPoly<BigRational> {
    if d < 0 {
        return SymPoly::zero(n);
    }
    let mut poly = SymPoly::zero(n);
    // partitions of d into at most n parts; enumerate(0, n) yields the
    // empty partition, so h_0 = 1 comes out of the same loop
    for lambda in Partition::enumerate(d as u32, n) {
        let mut w = vec![0i64; n];
        for (i, &x) in lambda.parts().iter().enumerate() {
            w[i] = x as i64;
        }
        poly.add_term(&w, one());
    }
    poly
}

fn permutations_with_sign(l: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..l).collect();
    fn heap(k: usize, perm: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i32)>) {
        if k == 1 {
            let sign = permutation_sign(perm);
            out.push((perm.clone(), sign));
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, out);
            if k % 2 == 0 {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
        }
    }
    heap(l, &mut perm, &mut out);
    out
}

fn permutation_sign(perm: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// A finite linear combination sum c_nu s_nu of Schur Laurent polynomials,
/// keyed by dominant weights of fixed rank.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurExpansion<C: Coeff> {
    pub rank: usize,
    pub terms: BTreeMap<Vec<i64>, C>,
}

impl<C: Coeff> SchurExpansion<C> {
    pub fn zero(rank: usize) -> Self {
        SchurExpansion {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, nu: &[i64], c: C) {
        if c.is_zero() {
            return;
        }
        assert!(nu.windows(2).all(|w| w[0] >= w[1]), "nu must be dominant");
        let e = self.terms.entry(nu.to_vec()).or_insert_with(C::zero);
        *e = e.add_ref(&c);
        if e.is_zero() {
            self.terms.remove(nu);
        }
    }
}

impl SchurExpansion<BigRational> {
    /// Back to the monomial-orbit representation.
    pub fn to_sympoly(&self) -> Result<SymPoly<BigRational>, SymFuncError> {
        let mut acc = SymPoly::zero(self.rank);
        for (nu, c) in self.terms.iter() {
            let s = schur_expand(&DominantWeight::new(nu.clone())?, self.rank)?;
            acc = acc.add(&s.scale(c));
        }
        Ok(acc)
    }
}

/// Decompose a symmetric Laurent polynomial in the Schur basis by
/// triangular elimination: repeatedly strip the lexicographically largest
/// weight of each homogeneous component (lex refines dominance within a
/// fixed total degree, and Schur leading terms are unitriangular).
pub fn to_schur_basis(poly: &SymPoly<BigRational>) -> Result<SchurExpansion<BigRational>, SymFuncError> {
    let n = poly.rank();
    let mut rest = poly.clone();
    let mut out = SchurExpansion::zero(n);
    let mut guard = 0usize;
    while !rest.is_zero() {
        guard += 1;
        if guard > 100_000 {
            return Err(SymFuncError::SchurDecomposition);
        }
        // lex-largest dominant key
        let nu = rest.terms().map(|(w, _)| w.clone()).max().unwrap();
        let c = rest.coefficient(&nu);
        let s = schur_expand(&DominantWeight::new(nu.clone())?, n)?;
        rest = rest.sub(&s.scale(&c));
        out.add_term(&nu, c);
    }
    Ok(out)
}

/// Product of two symmetric Laurent polynomials, re-expanded in the Schur
/// basis via raw monomial convolution. This is the generic route; for
/// Schur-basis inputs `lr_rule_product` gives the same answer by the
/// Littlewood-Richardson rule.
pub fn lr_multiply(
    a: &SymPoly<BigRational>,
    b: &SymPoly<BigRational>,
) -> Result<SchurExpansion<BigRational>, SymFuncError> {
    if a.rank() != b.rank() {
        return Err(SymFuncError::RankMismatch {
            expected: a.rank(),
            found: b.rank(),
        });
    }
    to_schur_basis(&a.mul(b))
}

/// s_lambda * s_mu = sum_nu c^nu_{lambda mu} s_nu by the
/// Littlewood-Richardson rule (column-strict skew fillings of nu/lambda
/// with content mu whose reverse reading word is a lattice word). Rows of
/// nu beyond n are discarded.
pub fn lr_rule_product(
    lambda: &Partition,
    mu: &Partition,
    n: usize,
) -> SchurExpansion<BigRational> {
    let mut out = SchurExpansion::zero(n);
    let total = lambda.weight() + mu.weight();
    for nu in Partition::enumerate(total as u32, n) {
        if !contains(&nu, lambda) {
            continue;
        }
        let c = lr_coefficient(lambda, mu, &nu);
        if c > 0 {
            let w = DominantWeight::from_partition(&nu, n).unwrap();
            out.add_term(w.entries(), BigRational::from(BigInt::from(c)));
        }
    }
    out
}

fn contains(nu: &Partition, lambda: &Partition) -> bool {
    (0..lambda.len()).all(|i| nu.part(i) >= lambda.part(i))
}

/// The Littlewood-Richardson coefficient c^nu_{lambda mu} by direct
/// enumeration of LR skew tableaux.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !contains(nu, lambda) || nu.weight() != lambda.weight() + mu.weight() {
        return 0;
    }
    // skew cells in row-major order
    let mut cells = Vec::new();
    for r in 0..nu.len() {
        for c in lambda.part(r)..nu.part(r) {
            cells.push((r, c as usize));
        }
    }
    let rows = nu.len();
    let mut fill: Vec<Vec<u32>> = (0..rows)
        .map(|r| vec![0; nu.part(r) as usize])
        .collect();
    let mut remaining: Vec<u32> = mu.parts().to_vec();
    let mut count = 0u64;

    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        lambda: &Partition,
        fill: &mut Vec<Vec<u32>>,
        remaining: &mut Vec<u32>,
        count: &mut u64,
        nu: &Partition,
    ) {
        if idx == cells.len() {
            if lattice_condition(fill, lambda, nu) {
                *count += 1;
            }
            return;
        }
        let (r, c) = cells[idx];
        let mut lo = 1u32;
        // left neighbor inside the skew shape: rows weakly increase
        if (c as u32) > lambda.part(r) {
            lo = lo.max(fill[r][c - 1]);
        }
        // neighbor above inside the skew shape: columns strictly increase
        if r > 0 && (c as u32) >= lambda.part(r - 1) {
            lo = lo.max(fill[r - 1][c] + 1);
        }
        for e in lo..=(remaining.len() as u32) {
            if remaining[(e - 1) as usize] == 0 {
                continue;
            }
            remaining[(e - 1) as usize] -= 1;
            fill[r][c] = e;
            rec(idx + 1, cells, lambda, fill, remaining, count, nu);
            fill[r][c] = 0;
            remaining[(e - 1) as usize] += 1;
        }
    }
    rec(
        0,
        &cells,
        lambda,
        &mut fill,
        &mut remaining,
        &mut count,
        nu,
    );
    count
}

/// Reverse reading word (rows top to bottom, right to left) must be a
/// lattice word: every prefix has #i >= #(i+1).
fn lattice_condition(fill: &[Vec<u32>], lambda: &Partition, nu: &Partition) -> bool {
    let mut counts = vec![0i64; 64];
    for (r, row) in fill.iter().enumerate() {
        let lo = lambda.part(r) as usize;
        let hi = nu.part(r) as usize;
        for c in (lo..hi).rev() {
            let e = row[c] as usize;
            counts[e] += 1;
            if e >= 2 && counts[e] > counts[e - 1] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn dw(entries: &[i64]) -> DominantWeight {
        DominantWeight::new(entries.to_vec()).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn schur_first_fundamental() {
        // s_(1,0,0) = x1 + x2 + x3
        let s = schur_expand(&dw(&[1, 0, 0]), 3).unwrap();
        assert_eq!(s.coefficient(&[1, 0, 0]), q(1));
        assert_eq!(s.num_orbits(), 1);
    }

    #[test]
    fn schur_column() {
        // s_(1,1) = x1 x2 for n = 2
        let s = schur_expand(&dw(&[1, 1]), 2).unwrap();
        assert_eq!(s.coefficient(&[1, 1]), q(1));
        assert_eq!(s.num_orbits(), 1);
    }

    #[test]
    fn schur_21_kostka() {
        // s_(2,1,0) = m_(2,1,0) + 2 m_(1,1,1)  [brute-force SSYT oracle]
        let s = schur_expand(&dw(&[2, 1, 0]), 3).unwrap();
        assert_eq!(s.coefficient(&[2, 1, 0]), q(1));
        assert_eq!(s.coefficient(&[1, 1, 1]), q(2));
        assert_eq!(s.num_orbits(), 2);
    }

    #[test]
    fn tableau_and_jacobi_trudi_agree() {
        for (parts, n) in [
            (vec![2u32, 1], 3usize),
            (vec![3, 1], 2),
            (vec![2, 2, 1], 3),
            (vec![4, 2], 4),
            (vec![3, 2, 1], 3),
        ] {
            let lam = pt(&parts);
            let a = schur_by_tableaux(&lam, n);
            let b = schur_by_jacobi_trudi(&lam, n).unwrap();
            assert_eq!(a, b, "mismatch for {lam} in {n} vars");
        }
    }

    #[test]
    fn negative_weight_det_twist() {
        // s_(0,-1) = s_(1,0) * (x1 x2)^{-1} for n=2
        let s = schur_expand(&dw(&[0, -1]), 2).unwrap();
        assert_eq!(s.coefficient(&[0, -1]), q(1));
        let dual = schur_expand(&dw(&[1, 0]), 2).unwrap().dual();
        assert_eq!(s, dual);
    }

    #[test]
    fn dim_counts_at_one() {
        use num::complex::Complex64;
        let ones = vec![Complex64::new(1.0, 0.0); 3];
        let s1 = schur_expand(&dw(&[1, 0, 0]), 3).unwrap();
        assert!((s1.evaluate(&ones).unwrap().re - 3.0).abs() < 1e-12);
        let s21 = schur_expand(&dw(&[2, 1, 0]), 3).unwrap();
        // 8 = dim of the adjoint-type representation, equals SSYT count
        assert!((s21.evaluate(&ones).unwrap().re - 8.0).abs() < 1e-12);
        assert_eq!(ssyt_count(&pt(&[2, 1]), 3), 8);
    }

    #[test]
    fn pieri_smallest() {
        // s_(1) * s_(1) = s_(2) + s_(1,1)
        let e = lr_rule_product(&pt(&[1]), &pt(&[1]), 2);
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.terms[&vec![2, 0]], q(1));
        assert_eq!(e.terms[&vec![1, 1]], q(1));
    }

    #[test]
    fn lr_rule_matches_monomial_convolution() {
        let cases = [
            (vec![2u32], vec![1u32], 2usize),
            (vec![2, 1], vec![1], 3),
            (vec![2, 1], vec![2, 1], 3),
            (vec![2], vec![2], 2),
            (vec![1, 1], vec![2, 1], 4),
        ];
        for (la, mb, n) in cases {
            let lam = pt(&la);
            let mu = pt(&mb);
            let a = schur_partition(&lam, n).unwrap();
            let b = schur_partition(&mu, n).unwrap();
            let via_conv = lr_multiply(&a, &b).unwrap();
            let via_rule = lr_rule_product(&lam, &mu, n);
            assert_eq!(via_conv, via_rule, "LR mismatch for {lam} * {mu}, n={n}");
        }
    }

    #[test]
    fn pieri_one_row_shapes() {
        // n=3: s_(k1,0,0) s_(k2,0,0) = sum_{e<=min} s_(k1+k2-e, e, 0), k1=k2=2
        let e = lr_rule_product(&pt(&[2]), &pt(&[2]), 3);
        assert_eq!(e.terms.len(), 3);
        assert_eq!(e.terms[&vec![4, 0, 0]], q(1));
        assert_eq!(e.terms[&vec![3, 1, 0]], q(1));
        assert_eq!(e.terms[&vec![2, 2, 0]], q(1));
    }

    #[test]
    fn schur_roundtrip() {
        let p = schur_expand(&dw(&[2, 1, 0]), 3)
            .unwrap()
            .mul(&schur_expand(&dw(&[1, 0, 0]), 3).unwrap());
        let e = to_schur_basis(&p).unwrap();
        assert_eq!(e.to_sympoly().unwrap(), p);
    }
}
