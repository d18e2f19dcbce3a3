//! Lattice-counting oracle for GL(2) orbital integrals.
//!
//! Vertices of the Bruhat-Tits tree of PGL(2, Q_p) are homothety classes
//! of lattices, coded by primitive column Hermite forms
//! [[p^a, c], [0, p^b]] with 0 <= c < p^a. For gamma the companion matrix
//! of the characteristic polynomial, a vertex L is marked when
//! H^{-1} gamma H has elementary-divisor type xi. The normalized orbital
//! integral is recovered as
//!
//!   J = p^{(xi_1-xi_2)/2} * p^{-(val D^G - val d_{E/F})/2} * N,
//!
//! where N counts marked vertices (elliptic case) or marked vertices
//! modulo the translation action of the centralizer's non-compact part
//! (split case), and d_{E/F} is the relative discriminant of the
//! splitting algebra (valuation 1 in the tamely ramified case, else 0).
//! The constant is calibrated once by the split m=0 case, which must give
//! exactly 1, and then frozen. Enumeration runs to an explicit radius and
//! refuses non-stabilized counts.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};
use num::Integer;
use std::collections::BTreeSet;

use crate::hecke::USqrt;

use super::{val_p_rational, OrbitalError};

/// How the characteristic polynomial splits over Q_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplittingCase {
    Split,
    EllipticUnramified,
    EllipticRamified,
}

impl SplittingCase {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "split" => Some(SplittingCase::Split),
            "elliptic-unramified" | "unramified" => Some(SplittingCase::EllipticUnramified),
            "elliptic-ramified" | "ramified" => Some(SplittingCase::EllipticRamified),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SplittingCase::Split => "split",
            SplittingCase::EllipticUnramified => "elliptic-unramified",
            SplittingCase::EllipticRamified => "elliptic-ramified",
        }
    }
}

/// Oracle result: the normalized value plus the raw enumeration data.
#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub value: USqrt,
    pub case: SplittingCase,
    pub marked_count: u64,
    pub disc_valuation: i64,
    pub radius: u32,
}

type Mat = [[BigRational; 2]; 2];

fn mat_from_i64(m: [[i64; 2]; 2]) -> Mat {
    m.map(|row| row.map(|x| BigRational::from(BigInt::from(x))))
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut out: Mat = Default::default();
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        }
    }
    out
}

fn mat_inv(a: &Mat) -> Mat {
    let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
    assert!(!det.is_zero());
    [
        [&a[1][1] / &det, -(&a[0][1] / &det)],
        [-(&a[1][0] / &det), &a[0][0] / &det],
    ]
}

/// A tree vertex: the primitive Hermite code (a, b, c) for the lattice
/// spanned by (p^a, 0) and (c, p^b), 0 <= c < p^a.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Vertex {
    a: u32,
    b: u32,
    c: u64,
}

impl Vertex {
    fn matrix(&self, p: u64) -> Mat {
        mat_from_i64([
            [(p as i64).pow(self.a), self.c as i64],
            [0, (p as i64).pow(self.b)],
        ])
    }

    #[allow(dead_code)]
    fn distance_from_base(&self) -> u32 {
        self.a + self.b
    }
}

/// All tree vertices within the given distance of the base lattice.
fn vertices_within(radius: u32, p: u64) -> Vec<Vertex> {
    let mut out = Vec::new();
    for a in 0..=radius {
        for b in 0..=(radius - a) {
            let cap = (p as u64).pow(a);
            for c in 0..cap {
                let primitive = a == 0 || b == 0 || c % p != 0;
                if primitive {
                    out.push(Vertex { a, b, c });
                }
            }
        }
    }
    out
}

/// Hermite-normalize the column span of a nonsingular rational matrix as
/// a Z_p-lattice, then reduce modulo homothety to the primitive code.
fn normalize(m: &Mat, p: u64) -> Vertex {
    // pivot on the bottom row: move the entry of smaller valuation into
    // the second column, then clear the other bottom entry
    let v20 = if m[1][0].is_zero() {
        i64::MAX
    } else {
        val_p_rational(&m[1][0], p)
    };
    let v21 = if m[1][1].is_zero() {
        i64::MAX
    } else {
        val_p_rational(&m[1][1], p)
    };
    let (piv, oth) = if v20 < v21 { (0, 1) } else { (1, 0) };
    let mut top_other = m[0][oth].clone();
    let mut top_pivot = m[0][piv].clone();
    let mut bot_pivot = m[1][piv].clone();
    if !m[1][oth].is_zero() {
        let f = &m[1][oth] / &bot_pivot; // p-adic integer
        top_other = &top_other - &f * &top_pivot;
    }
    // lattice = span{(top_other, 0), (top_pivot, bot_pivot)}
    assert!(!top_other.is_zero(), "matrix was singular");
    let beta = val_p_rational(&bot_pivot, p);
    let alpha = val_p_rational(&top_other, p);
    // scale column 2 by the unit p^beta / bot_pivot
    let unit = pow_rat(p, beta) / &bot_pivot;
    top_pivot *= &unit;
    bot_pivot = pow_rat(p, beta);
    let _ = &bot_pivot;
    // homothety-normalize
    let y_val = if top_pivot.is_zero() {
        i64::MAX
    } else {
        val_p_rational(&top_pivot, p)
    };
    let k = alpha.min(beta).min(y_val);
    let a = (alpha - k) as u32;
    let b = (beta - k) as u32;
    // c = top_pivot / p^k reduced mod p^a (a unit-denominator rational)
    let c = if a == 0 {
        0u64
    } else {
        let modulus = BigInt::from(p).pow(a);
        let y = &top_pivot / pow_rat(p, k);
        let num = y.numer().mod_floor(&modulus);
        let den = y.denom().mod_floor(&modulus);
        let inv = mod_inverse(&den, &modulus).expect("unit denominator");
        use num::traits::ToPrimitive;
        ((num * inv).mod_floor(&modulus)).to_u64().unwrap()
    };
    Vertex { a, b, c }
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

fn mod_inverse(x: &BigInt, modulus: &BigInt) -> Option<BigInt> {
    // extended Euclid
    let (mut r0, mut r1) = (modulus.clone(), x.mod_floor(modulus));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_one() {
        Some(t0.mod_floor(modulus))
    } else {
        None
    }
}

/// Is x a square in Q_p?
fn is_square_qp(x: i64, p: u64) -> bool {
    assert!(x != 0);
    let v = {
        let mut v = 0;
        let mut y = x.unsigned_abs();
        while y % p == 0 {
            y /= p;
            v += 1;
        }
        v
    };
    if v % 2 != 0 {
        return false;
    }
    let unit = {
        let mut y = x;
        for _ in 0..v {
            y /= p as i64;
        }
        y
    };
    if p == 2 {
        unit.rem_euclid(8) == 1
    } else {
        // Euler criterion
        let u = unit.rem_euclid(p as i64) as u64;
        if u == 0 {
            unreachable!("unit part divisible by p");
        }
        mod_pow(u, (p - 1) / 2, p) == 1
    }
}

fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Classify the splitting of x^2 - tr x + det over Q_p. p = 2 with a
/// ramified (wildly ramified) splitting field is refused.
pub fn classify_charpoly(tr: i64, det: i64, p: u64) -> Result<SplittingCase, OrbitalError> {
    let disc = tr * tr - 4 * det;
    if disc == 0 {
        return Err(OrbitalError::NonRegular(
            "repeated eigenvalues (disc = 0)".into(),
        ));
    }
    if is_square_qp(disc, p) {
        return Ok(SplittingCase::Split);
    }
    let mut v = 0u32;
    let mut y = disc.unsigned_abs();
    while y % p == 0 {
        y /= p;
        v += 1;
    }
    if p == 2 {
        // odd valuation or unit part 3, 7 mod 8: ramified quadratic
        // extensions of Q_2 are wildly ramified and outside the oracle
        let unit = disc >> v;
        if v % 2 == 0 && unit.rem_euclid(8) == 5 {
            Ok(SplittingCase::EllipticUnramified)
        } else {
            Err(OrbitalError::Budget(
                "p = 2 ramified splitting field is wild; oracle restricted to tame primes".into(),
            ))
        }
    } else if v % 2 == 1 {
        Ok(SplittingCase::EllipticRamified)
    } else {
        Ok(SplittingCase::EllipticUnramified)
    }
}

fn val_i64(x: i64, p: u64) -> i64 {
    assert!(x != 0);
    let mut v = 0;
    let mut y = x.unsigned_abs();
    while y % p == 0 {
        y /= p;
        v += 1;
    }
    v
}

/// Marked-vertex test: elementary-divisor type of H^{-1} gamma H equals
/// (xi_1, xi_2).
fn is_marked(vertex: &Vertex, gamma: &Mat, xi: (u32, u32), p: u64) -> bool {
    let h = vertex.matrix(p);
    let w = mat_mul(&mat_inv(&h), &mat_mul(gamma, &h));
    let det = &w[0][0] * &w[1][1] - &w[0][1] * &w[1][0];
    if det.is_zero() {
        return false;
    }
    let vdet = val_p_rational(&det, p);
    if vdet != (xi.0 + xi.1) as i64 {
        return false;
    }
    let vmin = w
        .iter()
        .flatten()
        .filter(|x| !x.is_zero())
        .map(|x| val_p_rational(x, p))
        .min()
        .unwrap();
    vmin == xi.1 as i64 && vdet - vmin == xi.0 as i64
}

/// Integer square root for perfect squares.
fn exact_sqrt(x: i64) -> Option<i64> {
    if x < 0 {
        return None;
    }
    let r = (x as f64).sqrt().round() as i64;
    for c in [r - 1, r, r + 1] {
        if c >= 0 && c * c == x {
            return Some(c);
        }
    }
    None
}

/// The GL(2) orbital-integral oracle. `charpoly` is (tr, det) of gamma;
/// `xi` the dominant cocharacter (xi_1 >= xi_2 >= 0); enumeration runs on
/// the tree ball of the given radius with a stabilization check against
/// radius - 1.
pub fn gl2_orbital_oracle(
    tr: i64,
    det: i64,
    xi: (u32, u32),
    p: u64,
    radius: u32,
) -> Result<OracleOutcome, OrbitalError> {
    if !(p == 2 || p == 3 || p == 5) {
        return Err(OrbitalError::Budget(format!("prime {p} outside {{2,3,5}}")));
    }
    if xi.0 < xi.1 {
        return Err(OrbitalError::Inconsistent("xi must be dominant".into()));
    }
    let m = xi.0 - xi.1;
    if m > 2 || radius > 8 || radius < 2 {
        return Err(OrbitalError::Budget(format!(
            "oracle budget is m <= 2 and 2 <= radius <= 8; got m={m}, radius={radius}"
        )));
    }
    let case = classify_charpoly(tr, det, p)?;
    let disc = tr * tr - 4 * det;
    if det == 0 {
        return Err(OrbitalError::NonRegular("singular gamma".into()));
    }
    // outside the support: valuation of det gamma must match |xi|
    // (trace integrality is built into the i64 input)
    if val_i64(det, p) != (xi.0 + xi.1) as i64 {
        return Ok(OracleOutcome {
            value: USqrt::zero_p(p),
            case,
            marked_count: 0,
            disc_valuation: val_i64(disc, p) - val_i64(det, p),
            radius,
        });
    }
    let gamma = mat_from_i64([[0, -det], [1, tr]]);
    let disc_val = val_i64(disc, p) - val_i64(det, p);

    let marked = |r: u32| -> Vec<Vertex> {
        vertices_within(r, p)
            .into_iter()
            .filter(|v| is_marked(v, &gamma, xi, p))
            .collect()
    };

    let count = match case {
        SplittingCase::Split => {
            // need the translation generator of the centralizer, built
            // from an integer eigenbasis
            let root = exact_sqrt(disc).ok_or_else(|| {
                OrbitalError::Budget(
                    "split oracle requires an integer spectrum for the translation action".into(),
                )
            })?;
            if (tr + root) % 2 != 0 {
                return Err(OrbitalError::Budget(
                    "split oracle requires integer eigenvalues".into(),
                ));
            }
            let e1 = (tr + root) / 2;
            let e2 = (tr - root) / 2;
            // eigenvectors of the companion matrix: (-e2, 1), (-e1, 1)
            let v = mat_from_i64([[-e2, -e1], [1, 1]]);
            let t = mat_mul(
                &v,
                &mat_mul(&mat_from_i64([[p as i64, 0], [0, 1]]), &mat_inv(&v)),
            );
            let canon_count = |r: u32| -> u64 {
                let k_window = 2 * (r as i64) + 4;
                let mut canon: BTreeSet<Vertex> = BTreeSet::new();
                for vert in marked(r) {
                    let mut best = vert.clone();
                    // walk the orbit in both directions
                    for dir in [&t, &mat_inv(&t)] {
                        let mut cur = vert.matrix(p);
                        for _ in 0..k_window {
                            cur = mat_mul(dir, &cur);
                            let code = normalize(&cur, p);
                            if code < best {
                                best = code;
                            }
                        }
                    }
                    canon.insert(best);
                }
                canon.len() as u64
            };
            let prev = canon_count(radius - 1);
            let cur = canon_count(radius);
            if prev != cur {
                return Err(OrbitalError::NotStabilized {
                    radius,
                    prev,
                    cur,
                });
            }
            cur
        }
        _ => {
            let prev = marked(radius - 1).len() as u64;
            let cur = marked(radius).len() as u64;
            if prev != cur {
                return Err(OrbitalError::NotStabilized {
                    radius,
                    prev,
                    cur,
                });
            }
            cur
        }
    };

    // frozen normalization: p^{<xi,rho>} |D/d_{E/F}|^{1/2}; exponents are
    // tracked doubled so half-integral powers stay exact in Q[u]/(u^2-p)
    let d_ef = match case {
        SplittingCase::EllipticRamified => 1i64,
        _ => 0,
    };
    let doubled_exponent = m as i64 - disc_val + d_ef;
    let value = USqrt::from_i64(count as i64, p).mul_u_power(doubled_exponent);
    Ok(OracleOutcome {
        value,
        case,
        marked_count: count,
        disc_valuation: disc_val,
        radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn vertex_counts() {
        // ball of radius r has 1 + (p+1)(p^r - 1)/(p - 1) vertices
        for p in [2u64, 3] {
            for r in 1..=3u32 {
                let expect = 1 + (p + 1) * (p.pow(r) - 1) / (p - 1);
                assert_eq!(vertices_within(r, p).len() as u64, expect, "p={p}, r={r}");
            }
        }
    }

    #[test]
    fn normalize_roundtrip() {
        for p in [2u64, 3, 5] {
            for v in vertices_within(3, p) {
                let m = v.matrix(p);
                assert_eq!(normalize(&m, p), v, "p={p}");
                // scaling by p or by a unit integer does not move the vertex
                let scaled = m.map(|row| row.map(|x| x * rat(p as i64 * 7, 1)));
                assert_eq!(normalize(&scaled, p), v);
            }
        }
    }

    #[test]
    fn classify_cases() {
        // x^2 - 3x + 2 = (x-1)(x-2): split at every odd p
        assert_eq!(classify_charpoly(3, 2, 3).unwrap(), SplittingCase::Split);
        assert_eq!(classify_charpoly(3, 2, 5).unwrap(), SplittingCase::Split);
        // x^2 + 1 at p=3: unramified
        assert_eq!(
            classify_charpoly(0, 1, 3).unwrap(),
            SplittingCase::EllipticUnramified
        );
        // x^2 - 3 at p=3: ramified
        assert_eq!(
            classify_charpoly(0, -3, 3).unwrap(),
            SplittingCase::EllipticRamified
        );
        // x^2 + x + 1 at p=2: unramified (disc -3 = 5 mod 8)
        assert_eq!(
            classify_charpoly(-1, 1, 2).unwrap(),
            SplittingCase::EllipticUnramified
        );
        // x^2 - 2 at p=2: wild, refused
        assert!(classify_charpoly(0, -2, 2).is_err());
        // repeated eigenvalue
        assert!(classify_charpoly(2, 1, 3).is_err());
    }

    #[test]
    fn calibration_split_m0() {
        // (x-1)(x-2), xi=(0,0): must return exactly 1
        for p in [3u64, 5] {
            let out = gl2_orbital_oracle(3, 2, (0, 0), p, 4).unwrap();
            assert_eq!(out.value, USqrt::one_p(p), "p={p}");
            assert_eq!(out.marked_count, 1);
        }
    }

    #[test]
    fn unramified_good_reduction_fixed_vertex() {
        // x^2 + 1 at p=3, xi=(0,0): single fixed vertex, value 1
        let out = gl2_orbital_oracle(0, 1, (0, 0), 3, 4).unwrap();
        assert_eq!(out.marked_count, 1);
        assert_eq!(out.value, USqrt::one_p(3));
    }

    #[test]
    fn split_m1_diag_one_p() {
        // gamma ~ diag(1, p): charpoly (x-1)(x-p); the honest count is the
        // translation-reduced apartment, a single class
        for p in [3u64, 5] {
            let out = gl2_orbital_oracle(1 + p as i64, p as i64, (1, 0), p, 4).unwrap();
            assert_eq!(out.marked_count, 1, "p={p}");
            assert_eq!(out.disc_valuation, -1);
        }
    }

    #[test]
    fn out_of_support_is_zero() {
        // det valuation mismatch
        let out = gl2_orbital_oracle(3, 2, (1, 0), 3, 4).unwrap();
        assert!(out.value.is_zero());
    }

    #[test]
    fn budget_refusals() {
        assert!(gl2_orbital_oracle(3, 2, (0, 0), 7, 4).is_err());
        assert!(gl2_orbital_oracle(3, 2, (3, 0), 3, 4).is_err());
    }
}
