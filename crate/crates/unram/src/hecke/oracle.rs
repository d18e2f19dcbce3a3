//! First-principles enumeration oracles for the Hecke algebra.
//!
//! * `satake_oracle` computes a single coefficient of the Satake transform
//!   as the constant-term integral delta_B^{1/2}(p^mu) * vol{ u in U_0 :
//!   p^mu u in K p^xi K }, the volume by exhaustive enumeration of
//!   unipotent representatives with entries in p^{-A} Z / p^B Z and
//!   membership by exact elementary-divisor valuations.
//! * `degree_enumerated` counts left cosets of K p^xi K / K as Hermite
//!   normal forms of sublattices with prescribed Smith type.
//! * `convolve_oracle` computes the structure constants n_{xi1,xi2}(mu) by
//!   coset-pair counting.
//!
//! Budgets are hard: out-of-budget inputs are refused, never truncated.

use rayon::prelude::*;
use std::collections::BTreeMap;

use crate::symfunc::DominantWeight;

use super::uring::USqrt;
use super::HeckeError;

const VAL_INFINITY: i64 = i64::MAX / 4;

fn val_p(mut x: i128, p: u64) -> i64 {
    if x == 0 {
        return VAL_INFINITY;
    }
    let p = p as i128;
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Valuations of the elementary divisors (ascending) of a square integer
/// matrix over Z_p, via gcd-of-minors valuations. Returns None when the
/// matrix is singular.
pub fn divisor_type(m: &[Vec<i128>], p: u64) -> Option<Vec<i64>> {
    let n = m.len();
    let mut gcd_vals = Vec::with_capacity(n);
    for k in 1..=n {
        let mut best = VAL_INFINITY;
        for rows in combinations(n, k) {
            for cols in combinations(n, k) {
                let d = minor_det(m, &rows, &cols);
                let v = val_p(d, p);
                if v < best {
                    best = v;
                }
            }
        }
        if best >= VAL_INFINITY {
            return None;
        }
        gcd_vals.push(best);
    }
    let mut out = Vec::with_capacity(n);
    let mut prev = 0i64;
    for (k, &v) in gcd_vals.iter().enumerate() {
        let d = v - prev;
        prev = v;
        if k > 0 && d < out[k - 1] {
            // gcd divisibility guarantees ascending increments
            return None;
        }
        out.push(d);
    }
    Some(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn minor_det(m: &[Vec<i128>], rows: &[usize], cols: &[usize]) -> i128 {
    match rows.len() {
        1 => m[rows[0]][cols[0]],
        2 => {
            m[rows[0]][cols[0]] * m[rows[1]][cols[1]]
                - m[rows[0]][cols[1]] * m[rows[1]][cols[0]]
        }
        3 => {
            let a = |i: usize, j: usize| m[rows[i]][cols[j]];
            a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
                - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
        }
        _ => {
            // small-n Laplace expansion
            let k = rows.len();
            let mut acc = 0i128;
            for j in 0..k {
                let sub_rows: Vec<usize> = rows[1..].to_vec();
                let sub_cols: Vec<usize> = cols
                    .iter()
                    .enumerate()
                    .filter(|(jj, _)| *jj != j)
                    .map(|(_, &c)| c)
                    .collect();
                let s = minor_det(m, &sub_rows, &sub_cols);
                let term = m[rows[0]][cols[j]] * s;
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// Ascending-sorted copy of a weight.
fn ascending(w: &[i64]) -> Vec<i64> {
    let mut v = w.to_vec();
    v.sort_unstable();
    v
}

/// The coefficient of x^mu in satake(tau_{p,xi}), from first principles.
///
/// Budget: rank <= 3, spread(xi) <= 2, p in {2, 3}. Inputs outside the
/// budget are refused explicitly.
pub fn satake_oracle(
    xi: &DominantWeight,
    mu: &[i64],
    p: u64,
) -> Result<USqrt, HeckeError> {
    let n = xi.rank();
    if mu.len() != n {
        return Err(HeckeError::InvalidParameter("mu has wrong length".into()));
    }
    if n > 3 || xi.spread() > 2 || !(p == 2 || p == 3) {
        return Err(HeckeError::OracleBudget(format!(
            "satake_oracle budget is n<=3, spread<=2, p in {{2,3}}; got n={n}, spread={}, p={p}",
            xi.spread()
        )));
    }
    // reduce by the central shift so that min xi = 0
    let shift = xi.min_entry();
    let xi_red: Vec<i64> = xi.entries().iter().map(|e| e - shift).collect();
    let mu_red: Vec<i64> = mu.iter().map(|e| e - shift).collect();
    let total: i64 = xi_red.iter().sum();
    if mu_red.iter().sum::<i64>() != total || mu_red.iter().any(|&e| e < 0) {
        return Ok(USqrt::zero_p(p));
    }
    let mu_pairing: i64 = mu
        .iter()
        .enumerate()
        .map(|(i, &w)| w * (n as i64 + 1 - 2 * (i as i64 + 1)))
        .sum();
    // entries of p^mu' u live in Z after clearing row scalings: enumerate
    // integer strict-upper entries modulo p^W, W = |xi'| + 1 (elementary
    // divisors are insensitive to perturbations divisible by p^{|xi'|+1})
    let w_exp = (total + 1) as u32;
    let modulus = (p as i128).pow(w_exp);
    let target = ascending(&xi_red);
    let dim_u = n * (n - 1) / 2;
    let cells: u64 = (0..dim_u).fold(1u64, |acc, _| acc * modulus as u64);
    let count: u64 = (0..cells)
        .into_par_iter()
        .filter(|&code| {
            let mut m = vec![vec![0i128; n]; n];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = (p as i128).pow(mu_red[i] as u32);
            }
            let mut c = code as i128;
            for i in 0..n {
                for j in (i + 1)..n {
                    m[i][j] = c % modulus;
                    c /= modulus;
                }
            }
            divisor_type(&m, p).map_or(false, |t| t == target)
        })
        .count() as u64;
    if count == 0 {
        return Ok(USqrt::zero_p(p));
    }
    // volume: each representative cell has measure p^{-B_i} in entry (i,j),
    // B_i = W - mu'_i; total measure exponent -sum_{i<j} (W - mu'_i)
    let mut b_sum = 0i64;
    for i in 0..n {
        for _j in (i + 1)..n {
            b_sum += w_exp as i64 - mu_red[i];
        }
    }
    // value = count * p^{-b_sum} * delta_B^{1/2}(p^mu),
    // delta_B^{1/2}(p^mu) = p^{-<mu,2rho>/2} = u^{-<mu,2rho>}
    let u_exponent = -mu_pairing - 2 * b_sum;
    Ok(USqrt::from_i64(count as i64, p).mul_u_power(u_exponent))
}

/// Hermite-form representatives of the left cosets in K p^xi K / K:
/// upper-triangular H with diagonal (p^{a_1},...,p^{a_n}) and row entries
/// reduced modulo the row diagonal, filtered by Smith type xi.
fn hnf_representatives(xi: &DominantWeight, p: u64, budget: u64) -> Result<Vec<Vec<Vec<i128>>>, HeckeError> {
    let n = xi.rank();
    let total: i64 = xi.entries().iter().sum();
    let target = ascending(xi.entries());
    let mut out = Vec::new();
    let mut work = 0u64;
    let compositions = compositions_of(total as u32, n);
    for comp in compositions {
        // count of HNFs with this diagonal: prod_i p^{a_i * (n - 1 - i)}
        let diag: Vec<i128> = comp.iter().map(|&a| (p as i128).pow(a)).collect();
        let mut sizes = Vec::new();
        for i in 0..n {
            for _ in (i + 1)..n {
                sizes.push(diag[i]);
            }
        }
        let cells: u64 = sizes.iter().map(|&d| d as u64).product();
        work = work.saturating_add(cells);
        if work > budget {
            return Err(HeckeError::OracleBudget(format!(
                "degree enumeration budget {budget} exceeded for xi={xi}"
            )));
        }
        for code in 0..cells {
            let mut m = vec![vec![0i128; n]; n];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = diag[i];
            }
            let mut c = code as i128;
            let mut k = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    m[i][j] = c % sizes[k];
                    c /= sizes[k];
                    k += 1;
                }
            }
            if divisor_type(&m, p).map_or(false, |t| t == target) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

fn compositions_of(total: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() - 1 {
            cur[i] = rem;
            out.push(cur.clone());
            return;
        }
        for x in 0..=rem {
            cur[i] = x;
            rec(i + 1, rem - x, cur, out);
        }
    }
    if n == 0 {
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// #(K p^xi K / K) by sublattice enumeration.
pub fn degree_enumerated(xi: &DominantWeight, p: u64, budget: u64) -> Result<u64, HeckeError> {
    if xi.min_entry() < 0 {
        return Err(HeckeError::NegativeSupport);
    }
    Ok(hnf_representatives(xi, p, budget)?.len() as u64)
}

/// Structure constants n_{xi1,xi2}(mu) = #{(k,l) : p^mu in x_k y_l K} by
/// explicit coset-pair counting. Returns the full map mu -> count.
pub fn convolve_oracle(
    xi1: &DominantWeight,
    xi2: &DominantWeight,
    p: u64,
    budget: u64,
) -> Result<BTreeMap<Vec<i64>, u64>, HeckeError> {
    if xi1.rank() != xi2.rank() {
        return Err(HeckeError::Incompatible {
            p1: p,
            p2: p,
            n1: xi1.rank(),
            n2: xi2.rank(),
        });
    }
    let n = xi1.rank();
    let reps1 = hnf_representatives(xi1, p, budget)?;
    let reps2 = hnf_representatives(xi2, p, budget)?;
    if (reps1.len() as u64).saturating_mul(reps2.len() as u64) > budget {
        return Err(HeckeError::OracleBudget(format!(
            "coset-pair budget {budget} exceeded: {} * {}",
            reps1.len(),
            reps2.len()
        )));
    }
    let mut counts: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for a in reps1.iter() {
        for b in reps2.iter() {
            let mut prod = vec![vec![0i128; n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = 0i128;
                    for (k, bk) in b.iter().enumerate() {
                        s += a[i][k] * bk[j];
                    }
                    prod[i][j] = s;
                }
            }
            // x in p^mu K  <=>  the column lattice of x is p^mu Z^n
            //              <=>  val(x_ij) >= mu_i and val(det x) = sum mu;
            // mu is recovered as the row-valuation vector when the rescaled
            // matrix is unimodular.
            let mu: Vec<i64> = prod
                .iter()
                .map(|row| row.iter().map(|&x| val_p(x, p)).min().unwrap())
                .collect();
            let idx: Vec<usize> = (0..n).collect();
            let det = minor_det(&prod, &idx, &idx);
            // x in p^mu K exactly when p^{-mu} x is unimodular; the key is
            // the exact (unsorted) valuation vector - distinct permutations
            // of mu are distinct torus cosets
            if val_p(det, p) == mu.iter().sum::<i64>() {
                *counts.entry(mu).or_insert(0) += 1;
            }
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::element::{convolve, degree, satake, HeckeElement};
    use num::traits::Zero;

    fn dw(e: &[i64]) -> DominantWeight {
        DominantWeight::new(e.to_vec()).unwrap()
    }

    #[test]
    fn divisor_type_examples() {
        let m = vec![vec![2i128, 1], vec![0, 2]];
        // gcd of entries 1, det 4: type (0, 2)
        assert_eq!(divisor_type(&m, 2), Some(vec![0, 2]));
        let m = vec![vec![2i128, 0], vec![0, 2]];
        assert_eq!(divisor_type(&m, 2), Some(vec![1, 1]));
        let m = vec![vec![0i128, 0], vec![0, 0]];
        assert_eq!(divisor_type(&m, 2), None);
    }

    #[test]
    fn oracle_trivial_and_central() {
        // (xi=(1,1), mu=(1,1), p=2) -> 1
        let v = satake_oracle(&dw(&[1, 1]), &[1, 1], 2).unwrap();
        assert_eq!(v, USqrt::one_p(2));
    }

    #[test]
    fn oracle_calibration_case() {
        // (xi=(1,0), mu=(1,0), p=2) -> u, and mu=(0,1) -> u by symmetry
        let u = USqrt::u_power(1, 2);
        assert_eq!(satake_oracle(&dw(&[1, 0]), &[1, 0], 2).unwrap(), u);
        assert_eq!(satake_oracle(&dw(&[1, 0]), &[0, 1], 2).unwrap(), u);
    }

    #[test]
    fn oracle_out_of_support_is_zero() {
        let v = satake_oracle(&dw(&[1, 0]), &[2, -1], 2).unwrap();
        assert!(v.is_zero());
        let v = satake_oracle(&dw(&[1, 1]), &[2, 0], 3).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn oracle_budget_refusal() {
        assert!(matches!(
            satake_oracle(&dw(&[4, 0]), &[2, 2], 2),
            Err(HeckeError::OracleBudget(_))
        ));
        assert!(matches!(
            satake_oracle(&dw(&[1, 0]), &[1, 0], 5),
            Err(HeckeError::OracleBudget(_))
        ));
    }

    #[test]
    fn oracle_matches_satake_n2() {
        for p in [2u64, 3] {
            for xi in DominantWeight::enumerate_box(2, 0, 2) {
                let s = satake(&HeckeElement::basis(p, &xi));
                let total = xi.total();
                for m1 in 0..=total {
                    let mu = [m1, total - m1];
                    let want = s.coefficient(&mu);
                    let got = satake_oracle(&xi, &mu, p).unwrap();
                    assert_eq!(got, want, "xi={xi}, mu={mu:?}, p={p}");
                }
            }
        }
    }

    #[test]
    fn degree_enumeration_matches_closed_form_n2() {
        for p in [2u64, 3] {
            for xi in DominantWeight::enumerate_box(2, 0, 2) {
                let d = degree(&xi, p).unwrap();
                let e = degree_enumerated(&xi, p, 1_000_000).unwrap();
                assert_eq!(d, num::BigRational::from(num::BigInt::from(e)), "xi={xi}");
            }
        }
    }

    #[test]
    fn convolve_oracle_matches_satake_route_n2() {
        for p in [2u64, 3] {
            let a = dw(&[1, 0]);
            let counts = convolve_oracle(&a, &a, p, 10_000_000).unwrap();
            let h = convolve(
                &HeckeElement::basis(p, &a),
                &HeckeElement::basis(p, &a),
            )
            .unwrap();
            for (mu, c) in h.terms() {
                assert!(c.is_rational());
                let r = c.rational_part();
                assert!(r.is_integer());
                use num::traits::ToPrimitive;
                let want = r.to_integer().to_u64().unwrap();
                assert_eq!(counts.get(mu).copied().unwrap_or(0), want, "mu={mu:?}, p={p}");
            }
            // bi-K-invariance: permuted torus cosets carry equal counts
            assert_eq!(
                counts.get(&vec![2, 0]).copied().unwrap_or(0),
                counts.get(&vec![0, 2]).copied().unwrap_or(0)
            );
            // every dominant key of the oracle shows up in the product
            for mu in counts.keys() {
                if mu.windows(2).all(|w| w[0] >= w[1]) {
                    assert!(
                        !h.coefficient(&dw(mu)).is_zero(),
                        "oracle found unexpected coset {mu:?}"
                    );
                }
            }
        }
    }
}
