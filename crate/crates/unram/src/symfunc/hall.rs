//! Hall-Littlewood polynomials P_lambda(x_1,...,x_n; t) with exact
//! coefficients in Z[t].
//!
//! The standard symmetrization formula
//!   P_lambda = (1/v_lambda(t)) sum_{w in S_n} w( x^lambda prod_{i<j}
//!              (x_i - t x_j)/(x_i - x_j) )
//! is evaluated exactly: the sum over S_n is collected over the common
//! denominator Delta = prod_{i<j}(x_i - x_j), the antisymmetric numerator
//! is resolved into Schur polynomials through the bialternant formula, and
//! the division by v_lambda(t) is exact polynomial division in Z[t].


use std::collections::BTreeMap;

use super::partition::{DominantWeight, Partition};
use super::qpoly::QPolynomial;
use super::schur::schur_expand;
use super::sympoly::SymPoly;
use super::SymFuncError;

/// P_lambda(x; t) as a symmetric polynomial with Z[t] coefficients.
pub fn hall_littlewood_p(
    lambda: &Partition,
    n: usize,
) -> Result<SymPoly<QPolynomial>, SymFuncError> {
    if lambda.len() > n {
        return Err(SymFuncError::RankMismatch {
            expected: n,
            found: lambda.len(),
        });
    }
    let schur_coeffs = hall_littlewood_schur_coeffs(lambda, n)?;
    // convert to the monomial-orbit representation with Z[t] coefficients
    let mut acc: SymPoly<QPolynomial> = SymPoly::zero(n);
    for (mu, a) in schur_coeffs {
        let s = schur_expand(&DominantWeight::new(mu)?, n)?;
        for (w, c) in s.terms() {
            // Schur coefficients are integers
            debug_assert!(c.is_integer());
            let ci = c.to_integer();
            acc.add_term(w, a.scale(&ci));
        }
    }
    Ok(acc)
}

/// Schur expansion of P_lambda(x; t): returns the (dominant weight ->
/// Z[t]-coefficient) map. The leading coefficient at lambda is 1.
pub fn hall_littlewood_schur_coeffs(
    lambda: &Partition,
    n: usize,
) -> Result<Vec<(Vec<i64>, QPolynomial)>, SymFuncError> {
    // numerator N = sum_w sign(w) * w( x^(lambda) * prod_{i<j}(x_i - t x_j) )
    // collected as a map monomial-exponent -> Z[t]
    let mut numerator: BTreeMap<Vec<i64>, QPolynomial> = BTreeMap::new();
    let base_exp: Vec<i64> = (0..n).map(|i| lambda.part(i) as i64).collect();

    // expand prod_{i<j} (x_i - t x_j) once; terms are (exponent vector,
    // power of t, sign)
    let mut product_terms: Vec<(Vec<i64>, usize)> = vec![(vec![0i64; n], 0)];
    for i in 0..n {
        for j in i + 1..n {
            let mut next = Vec::with_capacity(product_terms.len() * 2);
            for (exp, tpow) in product_terms.iter() {
                let mut a = exp.clone();
                a[i] += 1;
                next.push((a, *tpow));
                let mut b = exp.clone();
                b[j] += 1;
                next.push((b, *tpow + 1));
            }
            product_terms = next;
        }
    }
    // signs: choosing the -t x_j branch k times contributes (-1)^k t^k
    for (perm, sign) in super::schur_permutations(n) {
        for (exp, tpow) in product_terms.iter() {
            let mut w_exp = vec![0i64; n];
            for i in 0..n {
                w_exp[perm[i]] = base_exp[i] + exp[i];
            }
            let mut coeff = QPolynomial::monomial(*tpow);
            let neg = (tpow % 2 == 1) ^ (sign < 0);
            if neg {
                coeff = -&coeff;
            }
            let entry = numerator
                .entry(w_exp)
                .or_insert_with(QPolynomial::zero);
            *entry = &*entry + &coeff;
        }
    }
    // bialternant: the numerator is antisymmetric, so it is determined by
    // its coefficients at strictly decreasing exponents beta, and reading
    // those off gives N/Delta = sum c_beta s_(beta - delta)
    let delta: Vec<i64> = (0..n).map(|i| (n - 1 - i) as i64).collect();
    let mut schur: BTreeMap<Vec<i64>, QPolynomial> = BTreeMap::new();
    for (beta, coeff) in numerator.into_iter() {
        if coeff.is_zero() {
            continue;
        }
        if beta.windows(2).any(|w| w[0] <= w[1]) {
            continue; // handled by the strictly decreasing representative
        }
        let mu: Vec<i64> = beta.iter().zip(delta.iter()).map(|(s, d)| s - d).collect();
        debug_assert!(mu.windows(2).all(|w| w[0] >= w[1]) && mu[n - 1] >= 0);
        schur.insert(mu, coeff);
    }
    // divide by v_lambda(t) = prod_{i >= 0} prod_{k=1}^{m_i} (1-t^k)/(1-t)
    let v = v_lambda(lambda, n);
    let mut out = Vec::new();
    for (mu, c) in schur.into_iter() {
        if c.is_zero() {
            continue;
        }
        let d = c
            .div_exact(&v)
            .ok_or(SymFuncError::HallLittlewoodDivision)?;
        if !d.is_zero() {
            out.push((mu, d));
        }
    }
    Ok(out)
}

/// v_lambda(t) = prod over entry values i (including 0) of
/// prod_{k=1}^{m_i} (1 - t^k)/(1 - t), where m_i is the multiplicity of i
/// among (lambda_1, ..., lambda_n).
fn v_lambda(lambda: &Partition, n: usize) -> QPolynomial {
    let mut mult: BTreeMap<u32, usize> = BTreeMap::new();
    for i in 0..n {
        *mult.entry(lambda.part(i)).or_insert(0) += 1;
    }
    let mut acc = QPolynomial::one();
    for (_, m) in mult {
        // prod_{k=1}^m (1-t^k)/(1-t) = prod_{k=1}^m (1 + t + ... + t^{k-1})
        acc = &acc * &QPolynomial::q_factorial(m);
    }
    acc
}

/// P_lambda(x; t0) at an exact rational t0, as a rational symmetric poly.
pub fn hall_littlewood_at(
    lambda: &Partition,
    n: usize,
    t0: &num::rational::BigRational,
) -> Result<SymPoly<num::rational::BigRational>, SymFuncError> {
    let p = hall_littlewood_p(lambda, n)?;
    Ok(p.map_coeffs(|c| c.eval_rational(t0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::bigint::BigInt;
    use num::rational::BigRational;
    use num::traits::One;

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn degenerations_t0_schur_t1_monomial() {
        // P_lambda(x;0) = s_lambda for lambda=(2,1), n=3
        let p0 = hall_littlewood_at(&pt(&[2, 1]), 3, &rat(0, 1)).unwrap();
        let s = schur_expand(&DominantWeight::new(vec![2, 1, 0]).unwrap(), 3).unwrap();
        assert_eq!(p0, s);
        // P_lambda(x;1) = m_lambda for lambda=(2,0), n=2
        let p1 = hall_littlewood_at(&pt(&[2]), 2, &rat(1, 1)).unwrap();
        let mut m = SymPoly::zero(2);
        m.add_term(&[2, 0], BigRational::from(BigInt::one()));
        assert_eq!(p1, m);
    }

    #[test]
    fn columns_are_t_stable() {
        // P_(1,1)(x;t) = x1 x2 independent of t (n=2)
        let p = hall_littlewood_p(&pt(&[1, 1]), 2).unwrap();
        assert_eq!(p.num_orbits(), 1);
        assert_eq!(p.coefficient(&[1, 1]), QPolynomial::one());
    }

    #[test]
    fn row_two_schur_coefficients() {
        // P_(2) = s_(2) - t s_(1,1) for n=2
        let coeffs = hall_littlewood_schur_coeffs(&pt(&[2]), 2).unwrap();
        let map: BTreeMap<_, _> = coeffs.into_iter().collect();
        assert_eq!(map[&vec![2, 0]], QPolynomial::one());
        assert_eq!(map[&vec![1, 1]], -&QPolynomial::monomial(1));
    }

    #[test]
    fn degenerations_sweep() {
        // t=0 matches Schur and t=1 matches monomial for |lambda| <= 6, n <= 4
        for n in 2..=4usize {
            for w in 1..=6u32 {
                for lam in Partition::enumerate(w, n) {
                    let p0 = hall_littlewood_at(&lam, n, &rat(0, 1)).unwrap();
                    let nu = DominantWeight::from_partition(&lam, n).unwrap();
                    assert_eq!(p0, schur_expand(&nu, n).unwrap(), "t=0, {lam}, n={n}");
                    let p1 = hall_littlewood_at(&lam, n, &rat(1, 1)).unwrap();
                    let mut m = SymPoly::zero(n);
                    let mut key = vec![0i64; n];
                    for (i, &x) in lam.parts().iter().enumerate() {
                        key[i] = x as i64;
                    }
                    m.add_term(&key, BigRational::from(BigInt::one()));
                    assert_eq!(p1, m, "t=1, {lam}, n={n}");
                }
            }
        }
    }

    #[test]
    fn kostka_foulkes_gives_schur_in_hl_basis() {
        // s_lambda = sum_mu K_{lambda mu}(t) P_mu for |.| <= 5, n = 3;
        // ties the charge statistic to the symmetrization formula
        use super::super::kostka::kostka_foulkes;
        let n = 3usize;
        let t0 = rat(1, 3);
        for w in 2..=5u32 {
            for lam in Partition::enumerate(w, n) {
                let nu = DominantWeight::from_partition(&lam, n).unwrap();
                let s = schur_expand(&nu, n).unwrap();
                let mut acc: SymPoly<BigRational> = SymPoly::zero(n);
                for mu in Partition::enumerate(w, n) {
                    let k = kostka_foulkes(&lam, &mu).polynomial;
                    if k.is_zero() {
                        continue;
                    }
                    let p = hall_littlewood_at(&mu, n, &t0).unwrap();
                    acc = acc.add(&p.scale(&k.eval_rational(&t0)));
                }
                assert_eq!(acc, s, "Kostka-Foulkes transition for {lam}");
            }
        }
    }
}
