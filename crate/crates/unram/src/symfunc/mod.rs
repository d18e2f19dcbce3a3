//! Exact symmetric-function combinatorics: partitions, Schur / monomial /
//! Hall-Littlewood bases, Littlewood-Richardson multiplication, and
//! Kostka-Foulkes polynomials via the charge statistic.
//!
//! All values are immutable after construction and every operation is
//! pure, so everything here is safe to call from concurrent workers.

mod hall;
mod kostka;
mod partition;
mod qpoly;
mod schur;
mod sympoly;

pub use hall::{hall_littlewood_at, hall_littlewood_p, hall_littlewood_schur_coeffs};
pub use kostka::{charge_of_word, kostka_foulkes, kostka_number, KostkaFoulkes};
pub use partition::{dominant_sort, DominantWeight, Partition};
pub use qpoly::QPolynomial;
pub use schur::{
    complete_homogeneous, lr_coefficient, lr_multiply, lr_rule_product, schur_by_jacobi_trudi,
    schur_by_tableaux, schur_expand, schur_partition, ssyt_count, to_schur_basis, SchurExpansion,
};
pub use sympoly::{distinct_permutations, rational_to_f64, Coeff, SymLaurentPoly, SymPoly};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymFuncError {
    #[error("sequence is not weakly decreasing: {0}")]
    NotDecreasing(String),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("evaluation point has a zero coordinate")]
    ZeroCoordinate,
    #[error("Schur decomposition did not terminate")]
    SchurDecomposition,
    #[error("Hall-Littlewood numerator not divisible by v_lambda(t)")]
    HallLittlewoodDivision,
}

/// All permutations of {0,...,n-1} with their signs.
pub(crate) fn schur_permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn heap(k: usize, perm: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i32)>) {
        if k <= 1 {
            let mut sign = 1;
            for i in 0..perm.len() {
                for j in i + 1..perm.len() {
                    if perm[i] > perm[j] {
                        sign = -sign;
                    }
                }
            }
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
    heap(n, &mut perm, &mut out);
    out
}
