//! The unramified Plancherel measure of PGL(n, Q_p): exact moments by
//! three independent routes, gamma coefficients, recursion identities,
//! family rank-zero moments, and large-p (Haar on SU(n)) limits.
//!
//! Routes:
//! * `kato_moment`: the closed form p^{-<nu,rho>} P_{0,nu}(p), with the
//!   normalized Kostka-Foulkes polynomial standing in for the affine
//!   Kazhdan-Lusztig polynomial P_{0,nu};
//! * `moment_via_hecke`: the central-sum identity
//!   integral(phi) = sum_{z central} (satake^{-1} phi)(z);
//! * `macdonald_moment` (in `macdonald`): numeric torus quadrature against
//!   the explicit density.
//! Exact routes must agree exactly; the quadrature to 1e-6.

mod macdonald;
mod recursion;

pub use macdonald::{macdonald_moment, MacdonaldResult, QuadratureGrid};
pub use recursion::{recursion_check, RecursionReport};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

use crate::hecke::{satake_inverse, HeckeError, USqrt};
use crate::symfunc::{
    kostka_foulkes, schur_expand, DominantWeight, Partition, SymFuncError, SymPoly,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlancherelError {
    #[error("hecke layer: {0}")]
    Hecke(#[from] HeckeError),
    #[error("symmetric functions: {0}")]
    SymFunc(#[from] SymFuncError),
    #[error("gamma index must have n-1 >= 1 entries, got {0}")]
    BadGammaIndex(usize),
    #[error("quadrature did not converge: residual {residual:e} at resolution {resolution}")]
    QuadratureDiverged { residual: f64, resolution: usize },
    #[error("value is not rational (non-central u-component)")]
    IrrationalValue,
}

/// A value computed by multiple routes, with per-route provenance. Exact
/// routes must agree exactly; the numeric route within `tolerance`.
#[derive(Debug, Clone)]
pub struct MomentReport {
    pub target: String,
    pub prime: u64,
    pub routes: Vec<(String, RouteValue)>,
    pub agreement: bool,
    pub tolerance: f64,
}

#[derive(Debug, Clone)]
pub enum RouteValue {
    Exact(BigRational),
    Numeric { value: f64, error_estimate: f64 },
}

/// The Kostka-Foulkes inputs (lambda, mu_0) realizing P_{0,nu}: the shift
/// of nu to a partition and the rectangular content of the same weight.
/// None when n does not divide |nu| (the moment vanishes there).
pub fn kl_inputs(nu: &DominantWeight) -> Option<(Partition, Partition)> {
    let n = nu.rank();
    let (lambda, _) = nu.to_partition_shift();
    let w = lambda.weight();
    if w % n as u64 != 0 {
        return None;
    }
    let k = (w / n as u64) as u32;
    Some((lambda, Partition::new(vec![k; n]).unwrap()))
}

/// Normalize a Kostka-Foulkes polynomial into the Kazhdan-Lusztig
/// convention: divide by the lowest power of q so the constant term is 1.
pub fn normalize_kl(kf: &crate::symfunc::QPolynomial) -> crate::symfunc::QPolynomial {
    if kf.is_zero() {
        return kf.clone();
    }
    kf.shift_down(kf.lowest_exponent().unwrap())
}

/// The normalized Kostka-Foulkes polynomial standing in for P_{0,nu}.
/// Requires n | |nu| (enforced by the caller).
pub fn kl_polynomial(nu: &DominantWeight) -> crate::symfunc::QPolynomial {
    let (lambda, mu0) = kl_inputs(nu).expect("caller checked n | |nu|");
    normalize_kl(&kostka_foulkes(&lambda, &mu0).polynomial)
}

/// Kato moment assembled from an externally supplied (possibly cached)
/// Kostka-Foulkes polynomial for `kl_inputs(nu)`.
pub fn kato_moment_from_kf(
    nu: &DominantWeight,
    p: u64,
    kf: &crate::symfunc::QPolynomial,
) -> BigRational {
    let kl = normalize_kl(kf);
    if kl.is_zero() {
        return BigRational::zero();
    }
    let e = pairing_rho_integer(nu);
    pow_rational(p, -e) * kl.eval_rational(&BigRational::from(BigInt::from(p)))
}

/// <nu, rho> with rho = ((n-1)/2, (n-3)/2, ..., -(n-1)/2); an integer
/// whenever n divides |nu|.
fn pairing_rho_integer(nu: &DominantWeight) -> i64 {
    let two = nu.pairing_two_rho();
    debug_assert!(two % 2 == 0, "pairing must be even when n | |nu|");
    two / 2
}

fn pow_rational(p: u64, e: i64) -> BigRational {
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

/// Exact moment of the Schur polynomial s_nu against the Plancherel
/// measure: 0 unless n | |nu| (no weight-zero space), otherwise
/// p^{-<nu,rho>} P_{0,nu}(p). Shift-invariant in nu.
pub fn kato_moment(nu: &DominantWeight, p: u64) -> BigRational {
    let n = nu.rank() as i64;
    if nu.total().rem_euclid(n) != 0 {
        return BigRational::zero();
    }
    let kl = kl_polynomial(nu);
    if kl.is_zero() {
        return BigRational::zero();
    }
    let e = pairing_rho_integer(nu);
    pow_rational(p, -e) * kl.eval_rational(&BigRational::from(BigInt::from(p)))
}

/// Exact moment of an arbitrary symmetric Laurent polynomial by the
/// central-sum identity: shift into integral support, invert the Satake
/// transform, and sum the coefficients over the central cosets.
pub fn moment_via_hecke(
    phi: &SymPoly<BigRational>,
    p: u64,
) -> Result<BigRational, PlancherelError> {
    // shift so that every support weight is entrywise >= 0; a det-power
    // shift does not change the moment (the measure lives on det = 1)
    let min_entry = phi
        .terms()
        .map(|(w, _)| *w.last().unwrap())
        .min()
        .unwrap_or(0);
    let shifted = if min_entry < 0 {
        phi.det_shift(-min_entry)
    } else {
        phi.clone()
    };
    let phi_u = shifted.map_coeffs(|c| USqrt::from_rational(c.clone(), p));
    let h = satake_inverse(&phi_u, p)?;
    let s = h.central_sum()?;
    if !s.is_rational() {
        return Err(PlancherelError::IrrationalValue);
    }
    Ok(s.rational_part().clone())
}

/// Exact moment of a Schur-basis expansion, term by term through
/// `kato_moment` (each Laurent Schur term is a det twist of a partition
/// term, and the moment is shift-invariant).
pub fn moment_of_schur_expansion(
    expansion: &crate::symfunc::SchurExpansion<BigRational>,
    p: u64,
) -> BigRational {
    let mut acc = BigRational::zero();
    for (nu, c) in expansion.terms.iter() {
        let w = DominantWeight::new(nu.clone()).unwrap();
        acc += c * kato_moment(&w, p);
    }
    acc
}

/// gamma(m_1, ..., m_{n-1}): multiplicative in each entry; for prime
/// powers m_i = p^{a_i} it equals the Kato moment of the dominant weight
/// nu with nu_n = 0 and nu_{n-j} = a_1 + ... + a_j.
pub fn gamma_coefficient(ms: &[u64], n: usize) -> Result<BigRational, PlancherelError> {
    if ms.len() + 1 != n || ms.is_empty() {
        return Err(PlancherelError::BadGammaIndex(ms.len()));
    }
    if ms.iter().any(|&m| m == 0) {
        return Err(PlancherelError::BadGammaIndex(ms.len()));
    }
    // factor all entries and work prime by prime
    let mut primes = std::collections::BTreeSet::new();
    for &m in ms {
        let mut x = m;
        let mut d = 2u64;
        while d * d <= x {
            if x % d == 0 {
                primes.insert(d);
                while x % d == 0 {
                    x /= d;
                }
            }
            d += 1;
        }
        if x > 1 {
            primes.insert(x);
        }
    }
    let mut acc = BigRational::one();
    for p in primes {
        let exps: Vec<i64> = ms
            .iter()
            .map(|&m| {
                let mut x = m;
                let mut e = 0i64;
                while x % p == 0 {
                    x /= p;
                    e += 1;
                }
                e
            })
            .collect();
        acc *= gamma_prime_power(&exps, n, p)?;
    }
    Ok(acc)
}

/// gamma at a single prime: exponents (a_1, ..., a_{n-1}) of
/// (m_1, ..., m_{n-1}) = (p^{a_1}, ..., p^{a_{n-1}}).
pub fn gamma_prime_power(exps: &[i64], n: usize, p: u64) -> Result<BigRational, PlancherelError> {
    if exps.len() + 1 != n {
        return Err(PlancherelError::BadGammaIndex(exps.len()));
    }
    let mut nu = vec![0i64; n];
    // nu_{n-j} = a_1 + ... + a_j (1-based j), nu_n = 0
    let mut acc = 0i64;
    for (j, &a) in exps.iter().enumerate() {
        acc += a;
        nu[n - 2 - j] = acc;
    }
    let w = DominantWeight::new(nu)?;
    Ok(kato_moment(&w, p))
}

/// Family characters for the rank-zero moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyRep {
    Std,
    Sym2,
    Ext2,
    Ad,
}

impl FamilyRep {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "std" => Some(FamilyRep::Std),
            "sym2" => Some(FamilyRep::Sym2),
            "ext2" => Some(FamilyRep::Ext2),
            "ad" => Some(FamilyRep::Ad),
            _ => None,
        }
    }
}

/// Exact Plancherel moment of the trace character of the given
/// representation; `p * moment` witnesses the O(1/p) rank-zero claim.
pub fn family_moment(rep: FamilyRep, n: usize, p: u64) -> Result<BigRational, PlancherelError> {
    let expansion = family_character(rep, n)?;
    Ok(moment_of_schur_expansion(&expansion, p))
}

/// The character as a Schur-basis expansion: tr std = s_(1,0,...),
/// tr sym^2 = s_(2,0,...), tr ext^2 = s_(1,1,0,...),
/// tr Ad = s_(1,0,...) * dual(s_(1,0,...)) - 1.
pub fn family_character(
    rep: FamilyRep,
    n: usize,
) -> Result<crate::symfunc::SchurExpansion<BigRational>, PlancherelError> {
    use crate::symfunc::{lr_multiply, to_schur_basis};
    let one = BigRational::one();
    let mut e = crate::symfunc::SchurExpansion::zero(n);
    match rep {
        FamilyRep::Std => {
            let mut nu = vec![0i64; n];
            nu[0] = 1;
            e.add_term(&nu, one);
        }
        FamilyRep::Sym2 => {
            let mut nu = vec![0i64; n];
            nu[0] = 2;
            e.add_term(&nu, one);
        }
        FamilyRep::Ext2 => {
            if n < 2 {
                return Err(PlancherelError::BadGammaIndex(n));
            }
            let mut nu = vec![0i64; n];
            nu[0] = 1;
            nu[1] = 1;
            e.add_term(&nu, one);
        }
        FamilyRep::Ad => {
            let mut nu = vec![0i64; n];
            nu[0] = 1;
            let std = schur_expand(&DominantWeight::new(nu).unwrap(), n)?;
            let prod = lr_multiply(&std, &std.dual())?;
            let mut sum = to_schur_basis(&prod.to_sympoly()?)?;
            // subtract the trivial character
            sum.add_term(&vec![0; n], -BigRational::one());
            return Ok(sum);
        }
    }
    Ok(e)
}

/// Haar-measure (Sato-Tate) moment of a Schur-basis expansion on SU(n):
/// the multiplicity of the trivial summand, i.e. the sum of coefficients
/// at central weights (k, ..., k).
pub fn satotate_moment(expansion: &crate::symfunc::SchurExpansion<BigRational>) -> BigRational {
    let mut acc = BigRational::zero();
    for (nu, c) in expansion.terms.iter() {
        if nu.iter().all(|&e| e == nu[0]) {
            acc += c;
        }
    }
    acc
}

/// Moment report combining the routes requested by name.
pub fn moment_report(
    nu: &DominantWeight,
    p: u64,
    routes: &[&str],
    grid: &QuadratureGrid,
) -> Result<MomentReport, PlancherelError> {
    let n = nu.rank();
    let mut out: Vec<(String, RouteValue)> = Vec::new();
    let exact = kato_moment(nu, p);
    for &r in routes {
        match r {
            "kato" => out.push(("kato".into(), RouteValue::Exact(kato_moment(nu, p)))),
            "hecke" => {
                let phi = schur_expand(nu, n)?;
                out.push((
                    "hecke".into(),
                    RouteValue::Exact(moment_via_hecke(&phi, p)?),
                ));
            }
            "quad" => {
                let phi = schur_expand(nu, n)?;
                let mres = macdonald_moment(&phi, p, grid)?;
                out.push((
                    "quad".into(),
                    RouteValue::Numeric {
                        value: mres.value.re,
                        error_estimate: mres.error_estimate,
                    },
                ));
            }
            other => {
                return Err(PlancherelError::Hecke(HeckeError::InvalidParameter(
                    format!("unknown route {other}"),
                )))
            }
        }
    }
    let tolerance = 1e-6;
    let exact_f = crate::symfunc::rational_to_f64(&exact);
    let mut agreement = true;
    for (_, v) in out.iter() {
        match v {
            RouteValue::Exact(x) => {
                if x != &exact {
                    agreement = false;
                }
            }
            RouteValue::Numeric { value, .. } => {
                if (value - exact_f).abs() > tolerance {
                    agreement = false;
                }
            }
        }
    }
    Ok(MomentReport {
        target: format!("{nu}"),
        prime: p,
        routes: out,
        agreement,
        tolerance,
    })
}

/// Check that the Plancherel moment is non-negative (positivity of the
/// measure; the KL polynomial has non-negative coefficients).
pub fn moment_is_nonnegative(nu: &DominantWeight, p: u64) -> bool {
    !kato_moment(nu, p).is_negative()
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
    fn kato_fundamental_vanishing() {
        for p in [2u64, 3, 5, 7] {
            assert_eq!(kato_moment(&dw(&[1, 0, 0]), p), rat(0, 1));
            assert_eq!(kato_moment(&dw(&[1, 1, 0]), p), rat(0, 1));
        }
    }

    #[test]
    fn kato_adjoint_weight() {
        // nu = (2,1,0): p^{-2} (1 + p) = 1/p + 1/p^2
        for p in [2i64, 3, 5] {
            assert_eq!(
                kato_moment(&dw(&[2, 1, 0]), p as u64),
                rat(1, p) + rat(1, p * p)
            );
        }
    }

    #[test]
    fn kato_column_pair() {
        // nu = (3,3,0): p^{-3}
        for p in [2i64, 3] {
            assert_eq!(kato_moment(&dw(&[3, 3, 0]), p as u64), rat(1, p.pow(3)));
        }
    }

    #[test]
    fn kato_shift_invariance() {
        for k in -2i64..=2 {
            assert_eq!(
                kato_moment(&dw(&[2 + k, 1 + k, k]), 3),
                kato_moment(&dw(&[2, 1, 0]), 3)
            );
        }
    }

    #[test]
    fn kl_values() {
        assert_eq!(format!("{}", kl_polynomial(&dw(&[2, 1, 0]))), "1 + q");
        assert_eq!(format!("{}", kl_polynomial(&dw(&[3, 3, 0]))), "1");
        assert_eq!(format!("{}", kl_polynomial(&dw(&[1, 1]))), "1");
    }

    #[test]
    fn hecke_route_unit() {
        let one = SymPoly::constant(2, BigRational::one());
        assert_eq!(moment_via_hecke(&one, 7).unwrap(), rat(1, 1));
    }

    #[test]
    fn hecke_route_rankin_selberg() {
        // phi = s_(1,0) dual(s_(1,0)) -> 1 + 1/p (n = 2)
        for p in [2i64, 3, 5] {
            let s = schur_expand(&dw(&[1, 0]), 2).unwrap();
            let phi = s.mul(&s.dual());
            assert_eq!(
                moment_via_hecke(&phi, p as u64).unwrap(),
                rat(1, 1) + rat(1, p)
            );
        }
    }

    #[test]
    fn hecke_route_matches_kato() {
        for p in [2u64, 3] {
            for n in [2usize, 3] {
                for nu in DominantWeight::enumerate_box(n, 0, 2) {
                    let phi = schur_expand(&nu, n).unwrap();
                    let via_hecke = moment_via_hecke(&phi, p).unwrap();
                    assert_eq!(via_hecke, kato_moment(&nu, p), "nu={nu}, p={p}, n={n}");
                }
            }
        }
    }

    #[test]
    fn gamma_examples() {
        // n=2: gamma(p^k) = 0 for odd k, p^{-k/2} for even k
        for p in [2i64, 3, 5, 7] {
            assert_eq!(gamma_prime_power(&[1], 2, p as u64).unwrap(), rat(0, 1));
            assert_eq!(gamma_prime_power(&[2], 2, p as u64).unwrap(), rat(1, p));
            assert_eq!(gamma_prime_power(&[3], 2, p as u64).unwrap(), rat(0, 1));
            assert_eq!(
                gamma_prime_power(&[4], 2, p as u64).unwrap(),
                rat(1, p * p)
            );
        }
        // gamma(36) = gamma(4) gamma(9) = 1/6
        assert_eq!(gamma_coefficient(&[36], 2).unwrap(), rat(1, 6));
        // n=3: gamma(p,p) = 1/p + 1/p^2
        for p in [2i64, 3] {
            assert_eq!(
                gamma_coefficient(&[p as u64, p as u64], 3).unwrap(),
                rat(1, p) + rat(1, p * p)
            );
        }
        // n=3: gamma(p^3, 1) -> nu = (3,3,0) -> p^{-3}; index (p^3, 1)
        assert_eq!(gamma_prime_power(&[3, 0], 3, 2).unwrap(), rat(1, 8));
        // n=3: gamma(1, p) = 0
        assert_eq!(gamma_prime_power(&[0, 1], 3, 5).unwrap(), rat(0, 1));
    }

    #[test]
    fn family_moments() {
        // std vanishes identically
        for n in [2usize, 3] {
            for p in [2u64, 3, 5] {
                assert_eq!(family_moment(FamilyRep::Std, n, p).unwrap(), rat(0, 1));
            }
        }
        // ad: 1/p for n=2, 1/p + 1/p^2 for n=3
        for p in [2i64, 3, 5] {
            assert_eq!(family_moment(FamilyRep::Ad, 2, p as u64).unwrap(), rat(1, p));
            assert_eq!(
                family_moment(FamilyRep::Ad, 3, p as u64).unwrap(),
                rat(1, p) + rat(1, p * p)
            );
        }
        // sym2: n=2 -> nu=(2,0): 1/p
        assert_eq!(family_moment(FamilyRep::Sym2, 2, 3).unwrap(), rat(1, 3));
        // ext2: n=3 -> 0; n=2 -> the trivial character, moment 1
        assert_eq!(family_moment(FamilyRep::Ext2, 3, 3).unwrap(), rat(0, 1));
        assert_eq!(family_moment(FamilyRep::Ext2, 2, 3).unwrap(), rat(1, 1));
    }

    #[test]
    fn satotate_values() {
        use crate::symfunc::{lr_multiply, to_schur_basis, SchurExpansion};
        // phi = 1 -> 1
        let mut one = SchurExpansion::zero(3);
        one.add_term(&[0, 0, 0], BigRational::one());
        assert_eq!(satotate_moment(&one), rat(1, 1));
        // adjoint-type irreducible s_(2,1,0) -> 0
        let mut adj = SchurExpansion::zero(3);
        adj.add_term(&[2, 1, 0], BigRational::one());
        assert_eq!(satotate_moment(&adj), rat(0, 1));
        // |s_(1,0)|^2 contains exactly one trivial summand (n = 2)
        let s = schur_expand(&dw(&[1, 0]), 2).unwrap();
        let prod = s.mul(&s.dual());
        let e = to_schur_basis(&prod).unwrap();
        assert_eq!(satotate_moment(&e), rat(1, 1));
        let _ = lr_multiply(&s, &s); // exercised elsewhere
    }

    #[test]
    fn positivity_sweep() {
        for p in [2u64, 3, 5] {
            for nu in DominantWeight::enumerate_box(3, 0, 3) {
                assert!(moment_is_nonnegative(&nu, p), "nu={nu}, p={p}");
            }
        }
    }
}
