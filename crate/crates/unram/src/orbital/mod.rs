//! Explicit p-adic semisimple orbital integrals for GL(2) with a
//! lattice-counting oracle, Weyl-discriminant valuations, wild prime
//! sets, and the based-root-datum classification of semisimple classes.

mod tree;

pub use tree::{gl2_orbital_oracle, OracleOutcome, SplittingCase};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::collections::BTreeSet;

use crate::hecke::USqrt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrbitalError {
    #[error("inconsistent case/valuation combination: {0}")]
    Inconsistent(String),
    #[error("not a semisimple regular input: {0}")]
    NonRegular(String),
    #[error("enumeration did not stabilize at radius {radius}: counts {prev}, {cur}")]
    NotStabilized { radius: u32, prev: u64, cur: u64 },
    #[error("outside the oracle budget: {0}")]
    Budget(String),
    #[error("factorization data invalid: {0}")]
    BadFactorization(String),
}

/// The four-case table input: which quadratic behavior, the coweight gap
/// m = xi_1 - xi_2 >= 0, and the p-adic valuation of the Weyl
/// discriminant D^G(gamma).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gl2OrbitalInput {
    pub prime: u64,
    pub case: SplittingCase,
    pub m: u32,
    pub disc_valuation: i64,
}

/// Exact value of a normalized GL(2) orbital integral. When the
/// discriminant valuation is odd (possible in the ramified case), the
/// value involves p^{-1/2}; it is exposed exactly in Q[u]/(u^2-p) with
/// `half_integral` set, never silently rounded.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitalValue {
    pub value: USqrt,
    pub half_integral: bool,
}

impl OrbitalValue {
    fn rational(v: BigRational, p: u64) -> Self {
        OrbitalValue {
            value: USqrt::from_rational(v, p),
            half_integral: false,
        }
    }
}

fn pow_rat(p: u64, e: i64) -> BigRational {
    let pr = BigRational::from(BigInt::from(p));
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &pr;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// The four-case closed form:
///   split,      m = 0:  1
///   split,      m >= 1: p^m (1 - 1/p)
///   unramified, m = 0:  1 + 2(1 - |D|^{1/2}) / (p - 1)
///   unramified, m >= 1: (1 + 1/p) p^m
///   ramified,   m = 0:  2 + 2(1 - |D|^{1/2}) / (p - 1)
///   ramified,   m >= 1: 2 p^m
/// with |D|^{1/2} = p^{-val/2}.
pub fn gl2_orbital(input: &Gl2OrbitalInput) -> Result<OrbitalValue, OrbitalError> {
    let p = input.prime;
    let m = input.m;
    let val = input.disc_valuation;
    let pr = BigRational::from(BigInt::from(p));
    match (input.case, m) {
        (SplittingCase::Split, 0) => {
            if val < 0 || val % 2 != 0 {
                return Err(OrbitalError::Inconsistent(format!(
                    "split m=0 requires even non-negative disc valuation, got {val}"
                )));
            }
            Ok(OrbitalValue::rational(BigRational::one(), p))
        }
        (SplittingCase::Split, _) => Ok(OrbitalValue::rational(
            pow_rat(p, m as i64) * (BigRational::one() - pr.recip()),
            p,
        )),
        (SplittingCase::EllipticUnramified, 0) => {
            if val < 0 || val % 2 != 0 {
                return Err(OrbitalError::Inconsistent(format!(
                    "unramified m=0 requires even non-negative disc valuation, got {val}"
                )));
            }
            // 1 + 2 (1 - p^{-val/2}) / (p - 1)
            let two = BigRational::from(BigInt::from(2));
            let frac = &two * (BigRational::one() - pow_rat(p, -val / 2))
                / (&pr - BigRational::one());
            Ok(OrbitalValue::rational(BigRational::one() + frac, p))
        }
        (SplittingCase::EllipticUnramified, _) => Ok(OrbitalValue::rational(
            (BigRational::one() + pr.recip()) * pow_rat(p, m as i64),
            p,
        )),
        (SplittingCase::EllipticRamified, 0) => {
            if val <= 0 || val % 2 == 0 {
                return Err(OrbitalError::Inconsistent(format!(
                    "ramified m=0 has odd positive disc valuation, got {val}"
                )));
            }
            // 2 + 2(1 - p^{-val/2})/(p-1); p^{-val/2} = p^{-(val+1)/2} * u
            let two = BigRational::from(BigInt::from(2));
            let a = &two + &two / (&pr - BigRational::one());
            let b = -(&two / (&pr - BigRational::one())) * pow_rat(p, -(val + 1) / 2);
            Ok(OrbitalValue {
                value: USqrt::new(a, b, p),
                half_integral: true,
            })
        }
        (SplittingCase::EllipticRamified, _) => Ok(OrbitalValue::rational(
            BigRational::from(BigInt::from(2)) * pow_rat(p, m as i64),
            p,
        )),
    }
}

/// A semisimple conjugacy class given by its characteristic polynomial
/// (monic, exact integer coefficients, constant term first) and the
/// caller-supplied factorization type [(degree d_i, multiplicity m_i)].
#[derive(Debug, Clone, PartialEq)]
pub struct ConjClassData {
    pub rank: usize,
    /// Coefficients c_0, ..., c_{n-1} of x^n + c_{n-1} x^{n-1} + ... + c_0.
    pub charpoly: Vec<BigInt>,
    pub factorization: Vec<(u32, u32)>,
}

impl ConjClassData {
    pub fn new(
        rank: usize,
        charpoly: Vec<BigInt>,
        factorization: Vec<(u32, u32)>,
    ) -> Result<Self, OrbitalError> {
        if charpoly.len() != rank {
            return Err(OrbitalError::BadFactorization(format!(
                "charpoly needs {rank} coefficients, got {}",
                charpoly.len()
            )));
        }
        let total: u32 = factorization.iter().map(|(d, m)| d * m).sum();
        if total as usize != rank {
            return Err(OrbitalError::BadFactorization(format!(
                "sum d_i m_i = {total} != n = {rank}"
            )));
        }
        Ok(ConjClassData {
            rank,
            charpoly,
            factorization,
        })
    }

    /// det gamma = (-1)^n c_0.
    pub fn det(&self) -> BigInt {
        let c0 = self.charpoly[0].clone();
        if self.rank % 2 == 0 {
            c0
        } else {
            -c0
        }
    }
}

/// Result of a Weyl-discriminant valuation. Regular classes get the full
/// valuation; non-regular ones the valuation on the squarefree part with
/// the multiplicity profile attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiscValuation {
    Regular(i64),
    /// The naive product over all root pairs has repeated roots; the
    /// reduced value is computed on the squarefree part.
    NonRegular { reduced: i64, multiplicities: Vec<u32> },
}

/// val_p of D^G(gamma) = prod_{roots r != s} (1 - r/s): for regular
/// classes val_p(disc) - (n-1) val_p(det); for non-regular classes the
/// same formula on the squarefree part of the characteristic polynomial.
pub fn weyl_disc_valuation(cc: &ConjClassData, p: u64) -> DiscValuation {
    let poly = monic_poly(&cc.charpoly);
    let (sqfree, is_squarefree) = squarefree_part(&poly);
    if is_squarefree {
        DiscValuation::Regular(disc_valuation_of(&poly, p))
    } else {
        let mults = cc.factorization.iter().map(|&(_, m)| m).collect();
        DiscValuation::NonRegular {
            reduced: disc_valuation_of(&sqfree, p),
            multiplicities: mults,
        }
    }
}

fn disc_valuation_of(poly: &[BigRational], p: u64) -> i64 {
    let n = poly.len() - 1;
    if n <= 1 {
        return 0; // empty product of root differences
    }
    let d = poly_discriminant(poly);
    let det = poly[0].clone()
        * if n % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
    val_p_rational(&d, p) - (n as i64 - 1) * val_p_rational(&det, p)
}

pub(crate) fn val_p_rational(x: &BigRational, p: u64) -> i64 {
    assert!(!x.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut num = x.numer().abs();
    while (&num % &p).is_zero() {
        num /= &p;
        v += 1;
    }
    let mut den = x.denom().abs();
    while (&den % &p).is_zero() {
        den /= &p;
        v -= 1;
    }
    v
}

fn monic_poly(coeffs: &[BigInt]) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = coeffs
        .iter()
        .map(|c| BigRational::from(c.clone()))
        .collect();
    out.push(BigRational::one());
    out
}

/// Squarefree part f / gcd(f, f'); the flag reports whether f was already
/// squarefree.
fn squarefree_part(poly: &[BigRational]) -> (Vec<BigRational>, bool) {
    let deriv: Vec<BigRational> = poly
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
        .collect();
    let g = poly_gcd(poly.to_vec(), deriv);
    if g.len() <= 1 {
        return (poly.to_vec(), true);
    }
    let q = poly_div_exact(poly, &g);
    (q, false)
}

fn poly_norm(mut f: Vec<BigRational>) -> Vec<BigRational> {
    while f.last().map_or(false, |c| c.is_zero()) {
        f.pop();
    }
    if let Some(lead) = f.last().cloned() {
        for c in f.iter_mut() {
            *c /= &lead;
        }
    }
    f
}

fn poly_gcd(a: Vec<BigRational>, b: Vec<BigRational>) -> Vec<BigRational> {
    let mut a = poly_norm(a);
    let mut b = poly_norm(b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = poly_norm(r);
    }
    a
}

fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    loop {
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
        if r.len() <= db {
            break;
        }
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / lead;
        for (i, bi) in b.iter().enumerate() {
            let t = &c * bi;
            r[k + i] -= t;
        }
    }
    r
}

fn poly_div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    let mut q = vec![BigRational::zero(); a.len() - db];
    loop {
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
        if r.len() <= db {
            break;
        }
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / lead;
        q[k] = c.clone();
        for (i, bi) in b.iter().enumerate() {
            let t = &c * bi;
            r[k + i] -= t;
        }
    }
    q
}

/// Discriminant of a monic polynomial via the Sylvester resultant of f
/// and f': disc(f) = (-1)^{n(n-1)/2} Res(f, f').
pub fn poly_discriminant(poly: &[BigRational]) -> BigRational {
    let n = poly.len() - 1;
    if n <= 1 {
        return BigRational::one();
    }
    let deriv: Vec<BigRational> = poly
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
        .collect();
    let res = sylvester_resultant(poly, &deriv);
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    res * BigRational::from(BigInt::from(sign))
}

fn sylvester_resultant(f: &[BigRational], g: &[BigRational]) -> BigRational {
    let n = f.len() - 1;
    let m = g.len() - 1;
    let size = n + m;
    let mut mat = vec![vec![BigRational::zero(); size]; size];
    for i in 0..m {
        for (j, c) in f.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..n {
        for (j, c) in g.iter().rev().enumerate() {
            mat[m + i][i + j] = c.clone();
        }
    }
    let mut det = BigRational::one();
    for col in 0..size {
        let pivot = (col..size).find(|&r| !mat[r][col].is_zero());
        let Some(pr) = pivot else {
            return BigRational::zero();
        };
        if pr != col {
            mat.swap(pr, col);
            det = -det;
        }
        let pv = mat[col][col].clone();
        det *= &pv;
        for r in col + 1..size {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] / &pv;
            for c in col..size {
                let t = &factor * &mat[col][c];
                mat[r][c] -= t;
            }
        }
    }
    det
}

/// S_o = {primes <= n!} union {p : val_p(D^G) != 0}.
pub fn wild_set(cc: &ConjClassData) -> BTreeSet<u64> {
    use num::traits::ToPrimitive;
    let mut out = BTreeSet::new();
    let mut factorial = 1u64;
    for k in 2..=cc.rank as u64 {
        factorial = factorial.saturating_mul(k);
    }
    let mut q = 2u64;
    while q <= factorial {
        if (2..q).all(|d| q % d != 0) {
            out.insert(q);
        }
        q += 1;
    }
    // primes where the discriminant valuation is nonzero: candidates are
    // the prime factors of disc and det of the squarefree part
    let poly = monic_poly(&cc.charpoly);
    let (sqfree, _) = squarefree_part(&poly);
    if sqfree.len() > 1 {
        let d = poly_discriminant(&sqfree);
        let det = sqfree[0].clone();
        let mut candidates = BTreeSet::new();
        for x in [d, det] {
            if x.is_zero() {
                continue;
            }
            for part in [x.numer().abs(), x.denom().abs()] {
                let mut v = part;
                let mut f = BigInt::from(2);
                while &f * &f <= v {
                    if (&v % &f).is_zero() {
                        candidates.insert(f.to_u64().unwrap());
                        while (&v % &f).is_zero() {
                            v /= &f;
                        }
                    }
                    f += 1;
                }
                if v > BigInt::one() {
                    if let Some(pv) = v.to_u64() {
                        candidates.insert(pv);
                    }
                }
            }
        }
        for p in candidates {
            if disc_valuation_of(&sqfree, p) != 0 {
                out.insert(p);
            }
        }
    }
    out
}

/// Canonical descriptor of the based root datum: the multiset of
/// (field degree d_i, GL-rank m_i) pairs, sorted.
pub fn classify_root_datum(cc: &ConjClassData) -> Result<Vec<(u32, u32)>, OrbitalError> {
    let total: u32 = cc.factorization.iter().map(|(d, m)| d * m).sum();
    if total as usize != cc.rank {
        return Err(OrbitalError::BadFactorization(format!(
            "sum d_i m_i = {total} != n = {}",
            cc.rank
        )));
    }
    let mut out = cc.factorization.clone();
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cc(n: usize, coeffs: &[i64], fac: &[(u32, u32)]) -> ConjClassData {
        ConjClassData::new(
            n,
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            fac.to_vec(),
        )
        .unwrap()
    }

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn table_values() {
        // split m=0 -> 1
        let v = gl2_orbital(&Gl2OrbitalInput {
            prime: 3,
            case: SplittingCase::Split,
            m: 0,
            disc_valuation: 0,
        })
        .unwrap();
        assert_eq!(v.value, USqrt::from_i64(1, 3));
        // unramified m=1 at |D|=1 -> p + 1
        let v = gl2_orbital(&Gl2OrbitalInput {
            prime: 5,
            case: SplittingCase::EllipticUnramified,
            m: 1,
            disc_valuation: 0,
        })
        .unwrap();
        assert_eq!(v.value, USqrt::from_rational(rat(6, 1), 5));
        // ramified m=2 -> 2 p^2
        let v = gl2_orbital(&Gl2OrbitalInput {
            prime: 3,
            case: SplittingCase::EllipticRamified,
            m: 2,
            disc_valuation: 1,
        })
        .unwrap();
        assert_eq!(v.value, USqrt::from_i64(18, 3));
        // split m=1 -> p - 1
        let v = gl2_orbital(&Gl2OrbitalInput {
            prime: 7,
            case: SplittingCase::Split,
            m: 1,
            disc_valuation: -1,
        })
        .unwrap();
        assert_eq!(v.value, USqrt::from_i64(6, 7));
    }

    #[test]
    fn ramified_half_integral_flagged() {
        let v = gl2_orbital(&Gl2OrbitalInput {
            prime: 3,
            case: SplittingCase::EllipticRamified,
            m: 0,
            disc_valuation: 1,
        })
        .unwrap();
        assert!(v.half_integral);
        // 2 + 2(1 - 3^{-1/2})/2 = 3 - 3^{-1/2}; as a + b u: a = 3, b = -1/3
        assert_eq!(v.value, USqrt::new(rat(3, 1), rat(-1, 3), 3));
        assert!((v.value.to_f64() - (3.0 - 1.0 / 3f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn inconsistent_inputs_rejected() {
        assert!(gl2_orbital(&Gl2OrbitalInput {
            prime: 3,
            case: SplittingCase::EllipticUnramified,
            m: 0,
            disc_valuation: 1,
        })
        .is_err());
        assert!(gl2_orbital(&Gl2OrbitalInput {
            prime: 3,
            case: SplittingCase::EllipticRamified,
            m: 0,
            disc_valuation: 2,
        })
        .is_err());
    }

    #[test]
    fn disc_valuations() {
        // x^2 - 3x + 1 at p=5: disc 5, det 1 -> val 1
        let c = cc(2, &[1, -3], &[(1, 1), (1, 1)]);
        assert_eq!(weyl_disc_valuation(&c, 5), DiscValuation::Regular(1));
        // x^2 - x + 1 at p=3: disc -3 -> val 1
        let c = cc(2, &[1, -1], &[(2, 1)]);
        assert_eq!(weyl_disc_valuation(&c, 3), DiscValuation::Regular(1));
        // identity class (x-1)^2: non-regular, empty reduced product
        let c = cc(2, &[1, -2], &[(1, 2)]);
        match weyl_disc_valuation(&c, 7) {
            DiscValuation::NonRegular { reduced, .. } => assert_eq!(reduced, 0),
            other => panic!("expected non-regular, got {other:?}"),
        }
    }

    #[test]
    fn wild_sets() {
        // n=2, x^2-3x+1: {2} union {5}
        let c = cc(2, &[1, -3], &[(1, 1), (1, 1)]);
        assert_eq!(wild_set(&c), BTreeSet::from([2, 5]));
        // identity: just {2}
        let c = cc(2, &[1, -2], &[(1, 2)]);
        assert_eq!(wild_set(&c), BTreeSet::from([2]));
        // n=3, x^3 - 2: disc -108 = -(2^2 3^3); primes <= 3! give {2,3,5}
        let c = cc(3, &[-2, 0, 0], &[(3, 1)]);
        assert_eq!(wild_set(&c), BTreeSet::from([2, 3, 5]));
        // monotone under discriminant divisibility: x^2 - 3x + 1 has
        // disc 5 | disc 45 of x^2 - 7x + 1
        let c2 = cc(2, &[1, -7], &[(1, 1), (1, 1)]);
        assert!(wild_set(&c).is_subset(&wild_set(&c2)));
    }

    #[test]
    fn classification() {
        let c = cc(3, &[-6, 11, -6], &[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(
            classify_root_datum(&c).unwrap(),
            vec![(1, 1), (1, 1), (1, 1)]
        );
        let c = cc(3, &[1, -3, 3], &[(1, 3)]);
        assert_eq!(classify_root_datum(&c).unwrap(), vec![(1, 3)]);
        let c = cc(2, &[1, -1], &[(2, 1)]);
        assert_eq!(classify_root_datum(&c).unwrap(), vec![(2, 1)]);
        // permutation invariance
        let c1 = cc(4, &[1, 0, 0, 0], &[(2, 1), (1, 2)]);
        let c2 = cc(4, &[1, 0, 0, 0], &[(1, 2), (2, 1)]);
        assert_eq!(
            classify_root_datum(&c1).unwrap(),
            classify_root_datum(&c2).unwrap()
        );
        // degree-sum violation
        assert!(ConjClassData::new(3, vec![BigInt::one(); 3], vec![(2, 2)]).is_err());
    }

    #[test]
    fn discriminants() {
        // disc(x^2 + bx + c) = b^2 - 4c
        let poly = vec![rat(3, 1), rat(-7, 1), rat(1, 1)]; // x^2 - 7x + 3
        assert_eq!(poly_discriminant(&poly), rat(49 - 12, 1));
        // disc(x^3 - 2) = -108
        let poly = vec![rat(-2, 1), rat(0, 1), rat(0, 1), rat(1, 1)];
        assert_eq!(poly_discriminant(&poly), rat(-108, 1));
    }
}
