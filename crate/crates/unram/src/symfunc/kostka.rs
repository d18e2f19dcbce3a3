//! Kostka-Foulkes polynomials K_{lambda,mu}(q) via the charge statistic.
//!
//! K_{lambda,mu}(q) = sum over SSYT of shape lambda and content mu of
//! q^{charge(T)}, with the Lascoux-Schutzenberger charge. Specializing
//! q = 1 recovers the Kostka number, which doubles as an independent
//! cross-check (a plain tableau count).
//!
//! Conventions, pinned by K_{(2,1),(1,1,1)} = q + q^2,
//! K_{(3,3),(2,2,2)} = q^3, K_{(3,1,1),(2,2,1)} = q and the degree rule
//! deg K = n(mu) - n(lambda):
//! * the word of T reads rows left to right, bottom row first;
//! * standard subwords are extracted cyclically (rightmost 1, then the
//!   nearest next letter scanning leftward, wrapping around);
//! * in a standard word, letter r+1 keeps the index of r when it sits to
//!   the left of r and increments it when it sits to the right; charge is
//!   the index sum.

use num::bigint::BigInt;
use num::traits::Zero;

use super::partition::Partition;
use super::qpoly::QPolynomial;

/// Result of a Kostka-Foulkes computation. `weight_mismatch` is set (with
/// a zero polynomial) when |lambda| != |mu|; that case is a flag, not an
/// error.
#[derive(Clone, Debug, PartialEq)]
pub struct KostkaFoulkes {
    pub polynomial: QPolynomial,
    pub weight_mismatch: bool,
}

pub fn kostka_foulkes(lambda: &Partition, mu: &Partition) -> KostkaFoulkes {
    if lambda.weight() != mu.weight() {
        return KostkaFoulkes {
            polynomial: QPolynomial::zero(),
            weight_mismatch: true,
        };
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    for tableau in ssyt_with_content(lambda, mu) {
        let ch = charge_of_tableau(&tableau, lambda);
        if coeffs.len() <= ch {
            coeffs.resize(ch + 1, BigInt::zero());
        }
        coeffs[ch] += 1;
    }
    KostkaFoulkes {
        polynomial: QPolynomial::new(coeffs),
        weight_mismatch: false,
    }
}

/// Plain Kostka number #SSYT(lambda, mu); independent of the charge path.
pub fn kostka_number(lambda: &Partition, mu: &Partition) -> u64 {
    if lambda.weight() != mu.weight() {
        return 0;
    }
    ssyt_with_content(lambda, mu).len() as u64
}

/// All SSYT of shape lambda with content mu (mu_i copies of letter i).
fn ssyt_with_content(lambda: &Partition, mu: &Partition) -> Vec<Vec<Vec<u32>>> {
    let rows = lambda.len();
    let letters = mu.len().max(1);
    let mut cells = Vec::new();
    for r in 0..rows {
        for c in 0..lambda.part(r) as usize {
            cells.push((r, c));
        }
    }
    let mut fill: Vec<Vec<u32>> = (0..rows)
        .map(|r| vec![0; lambda.part(r) as usize])
        .collect();
    let mut remaining: Vec<u32> = (0..letters).map(|i| mu.part(i)).collect();
    let mut out = Vec::new();
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        fill: &mut Vec<Vec<u32>>,
        remaining: &mut Vec<u32>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if idx == cells.len() {
            out.push(fill.clone());
            return;
        }
        let (r, c) = cells[idx];
        let mut lo = 1u32;
        if c > 0 {
            lo = lo.max(fill[r][c - 1]);
        }
        if r > 0 {
            lo = lo.max(fill[r - 1][c] + 1);
        }
        // a cell in row r (0-based) needs an entry >= r+1 for columns to be
        // strict above it; entries are bounded by the number of letters
        for e in lo..=(remaining.len() as u32) {
            if remaining[(e - 1) as usize] == 0 {
                continue;
            }
            remaining[(e - 1) as usize] -= 1;
            fill[r][c] = e;
            rec(idx + 1, cells, fill, remaining, out);
            fill[r][c] = 0;
            remaining[(e - 1) as usize] += 1;
        }
    }
    rec(0, &cells, &mut fill, &mut remaining, &mut out);
    out
}

fn charge_of_tableau(fill: &[Vec<u32>], lambda: &Partition) -> usize {
    let mut word = Vec::new();
    for r in (0..fill.len()).rev() {
        for c in 0..lambda.part(r) as usize {
            word.push(fill[r][c]);
        }
    }
    charge_of_word(&word)
}

/// Charge of a word with partition content, by cyclic extraction of
/// standard subwords.
pub fn charge_of_word(word: &[u32]) -> usize {
    let mut letters: Vec<u32> = word.to_vec();
    let mut positions: Vec<usize> = (0..word.len()).collect();
    let mut total = 0usize;
    while !letters.is_empty() {
        let max_letter = *letters.iter().max().unwrap();
        // extract one standard subword 1..=k cyclically from the right
        let mut chosen: Vec<usize> = Vec::new(); // indices into `letters`
        let mut cursor: Option<usize> = None; // position index of last chosen
        for target in 1..=max_letter {
            let mut found: Option<usize> = None;
            // strictly left of cursor, rightmost
            if let Some(cur) = cursor {
                for (i, (&l, &_p)) in letters.iter().zip(positions.iter()).enumerate() {
                    if l == target && i < cur {
                        found = Some(i);
                    }
                }
            }
            if found.is_none() {
                // wrap: rightmost occurrence overall
                for (i, &l) in letters.iter().enumerate() {
                    if l == target {
                        found = Some(i);
                    }
                }
            }
            match found {
                Some(i) => {
                    chosen.push(i);
                    cursor = Some(i);
                }
                None => break, // content not a partition prefix; stop subword
            }
        }
        // charge of the standard subword, taken in word order
        let mut order: Vec<usize> = chosen.clone();
        order.sort_unstable();
        // position in word order of each chosen letter value
        let mut pos_of_letter = vec![0usize; chosen.len() + 1];
        for i in chosen.iter() {
            let letter = letters[*i] as usize;
            let rank = order.iter().position(|j| j == i).unwrap();
            pos_of_letter[letter] = rank;
        }
        let mut index = 0usize;
        let mut sub_charge = 0usize;
        for letter in 2..=chosen.len() {
            if pos_of_letter[letter] > pos_of_letter[letter - 1] {
                index += 1; // r+1 to the right of r
            }
            sub_charge += index;
        }
        total += sub_charge;
        // remove extracted letters
        let mut keep_letters = Vec::new();
        let mut keep_positions = Vec::new();
        for i in 0..letters.len() {
            if !chosen.contains(&i) {
                keep_letters.push(letters[i]);
                keep_positions.push(positions[i]);
            }
        }
        letters = keep_letters;
        positions = keep_positions;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn charge_standard_words() {
        assert_eq!(charge_of_word(&[2, 1, 3]), 1);
        assert_eq!(charge_of_word(&[3, 1, 2]), 2);
        assert_eq!(charge_of_word(&[2, 1]), 0);
        assert_eq!(charge_of_word(&[1, 2]), 1);
        // fully increasing word has maximal charge n(n-1)/2
        assert_eq!(charge_of_word(&[1, 2, 3, 4]), 6);
        // fully decreasing word (superstandard column) has charge 0
        assert_eq!(charge_of_word(&[4, 3, 2, 1]), 0);
    }

    #[test]
    fn kf_311_221() {
        // unique SSYT; degree pinned by n(mu) - n(lambda) = 1
        let kf = kostka_foulkes(&pt(&[3, 1, 1]), &pt(&[2, 2, 1]));
        assert_eq!(format!("{}", kf.polynomial), "q");
    }

    #[test]
    fn kf_21_111() {
        // K_{(2,1),(1,1,1)}(q) = q + q^2; cross-check K(1) = 2
        let kf = kostka_foulkes(&pt(&[2, 1]), &pt(&[1, 1, 1]));
        assert!(!kf.weight_mismatch);
        assert_eq!(format!("{}", kf.polynomial), "q + q^2");
        assert_eq!(kf.polynomial.eval_i64(1), BigInt::from(2));
        assert_eq!(kostka_number(&pt(&[2, 1]), &pt(&[1, 1, 1])), 2);
    }

    #[test]
    fn kf_superstandard_is_one() {
        for parts in [vec![3u32], vec![2, 1], vec![3, 2, 1], vec![4, 4]] {
            let lam = pt(&parts);
            let kf = kostka_foulkes(&lam, &lam);
            assert_eq!(kf.polynomial, QPolynomial::one(), "K_(l,l) for {lam}");
        }
    }

    #[test]
    fn kf_33_222() {
        // unique SSYT; degree forced by n(mu) - n(lambda) = 3
        let kf = kostka_foulkes(&pt(&[3, 3]), &pt(&[2, 2, 2]));
        assert_eq!(format!("{}", kf.polynomial), "q^3");
        let n_mu = pt(&[2, 2, 2]).n_stat();
        let n_lam = pt(&[3, 3]).n_stat();
        assert_eq!(n_mu - n_lam, 3);
    }

    #[test]
    fn kf_2_11() {
        let kf = kostka_foulkes(&pt(&[2]), &pt(&[1, 1]));
        assert_eq!(format!("{}", kf.polynomial), "q");
    }

    #[test]
    fn weight_mismatch_flagged() {
        let kf = kostka_foulkes(&pt(&[2]), &pt(&[1, 1, 1]));
        assert!(kf.weight_mismatch);
        assert!(kf.polynomial.is_zero());
    }

    #[test]
    fn kf_at_one_equals_kostka_number() {
        // over all |lambda| = |mu| <= 6
        for w in 1..=6u32 {
            for lam in Partition::enumerate(w, w as usize) {
                for mu in Partition::enumerate(w, w as usize) {
                    let kf = kostka_foulkes(&lam, &mu);
                    assert_eq!(
                        kf.polynomial.eval_i64(1),
                        BigInt::from(kostka_number(&lam, &mu)),
                        "K({lam},{mu})(1)"
                    );
                }
            }
        }
    }

    #[test]
    fn kf_degree_and_positivity() {
        // degree = n(mu) - n(lambda) whenever K != 0; coefficients >= 0
        for w in 2..=6u32 {
            for lam in Partition::enumerate(w, w as usize) {
                for mu in Partition::enumerate(w, w as usize) {
                    let kf = kostka_foulkes(&lam, &mu).polynomial;
                    assert!(kf.has_nonnegative_coeffs());
                    if !kf.is_zero() {
                        assert_eq!(
                            kf.degree().unwrap() as u64,
                            mu.n_stat() - lam.n_stat(),
                            "deg K({lam},{mu})"
                        );
                        assert!(lam.dominates(&mu));
                    }
                }
            }
        }
    }
}
