//! Partitions and dominant integer weights for GL(n).

use std::fmt;

use super::SymFuncError;

/// An integer partition: weakly decreasing non-negative parts, trailing
/// zeros trimmed. The empty partition is valid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, SymFuncError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SymFuncError::NotDecreasing(format!("{parts:?}")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// |lambda|, the sum of the parts.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&x| x as u64).sum()
    }

    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// n(lambda) = sum_i (i-1) * lambda_i, the charge of the superstandard
    /// tableau of shape/content lambda.
    pub fn n_stat(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &x)| i as u64 * x as u64)
            .sum()
    }

    /// Dominance order: self >= other requires equal weights and
    /// sum_{i<=k} self_i >= sum_{i<=k} other_i for all k.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let k = self.len().max(other.len());
        let mut a = 0i64;
        let mut b = 0i64;
        for i in 0..k {
            a += self.part(i) as i64;
            b += other.part(i) as i64;
            if a < b {
                return false;
            }
        }
        true
    }

    /// All partitions of `w` with at most `max_len` parts.
    pub fn enumerate(w: u32, max_len: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rem: u32, max_part: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            if slots == 0 {
                return;
            }
            let hi = max_part.min(rem);
            for x in (1..=hi).rev() {
                cur.push(x);
                rec(rem - x, x, slots - 1, cur, out);
                cur.pop();
            }
        }
        rec(w, w, max_len, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A dominant weight of GL(n): weakly decreasing integer vector of fixed
/// length n. Negative entries are allowed; w and w + k*(1,...,1) index the
/// same Plancherel functional (the shift houses the determinant twist).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantWeight {
    entries: Vec<i64>,
}

impl DominantWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self, SymFuncError> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(SymFuncError::NotDecreasing(format!("{entries:?}")));
        }
        Ok(DominantWeight { entries })
    }

    pub fn zero(n: usize) -> Self {
        DominantWeight { entries: vec![0; n] }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn min_entry(&self) -> i64 {
        *self.entries.last().unwrap_or(&0)
    }

    pub fn max_entry(&self) -> i64 {
        *self.entries.first().unwrap_or(&0)
    }

    /// max - min, the paper-side degree of the matching Hecke operator.
    pub fn spread(&self) -> i64 {
        self.max_entry() - self.min_entry()
    }

    pub fn is_central(&self) -> bool {
        self.entries.iter().all(|&e| e == self.entries[0])
    }

    /// <w, 2 rho> = sum_i w_i * (n + 1 - 2i)  (i one-based); invariant
    /// under shifts by (1,...,1).
    pub fn pairing_two_rho(&self) -> i64 {
        let n = self.rank() as i64;
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &w)| w * (n + 1 - 2 * (i as i64 + 1)))
            .sum()
    }

    /// Split off the minimal entry: returns (partition, shift) with
    /// self = partition + shift*(1,...,1).
    pub fn to_partition_shift(&self) -> (Partition, i64) {
        let shift = self.min_entry();
        let parts = self
            .entries
            .iter()
            .map(|&e| (e - shift) as u32)
            .collect::<Vec<_>>();
        (Partition::new(parts).expect("shifted dominant weight is a partition"), shift)
    }

    pub fn shifted(&self, k: i64) -> Self {
        DominantWeight {
            entries: self.entries.iter().map(|&e| e + k).collect(),
        }
    }

    pub fn from_partition(p: &Partition, n: usize) -> Result<Self, SymFuncError> {
        if p.len() > n {
            return Err(SymFuncError::RankMismatch {
                expected: n,
                found: p.len(),
            });
        }
        let mut entries = vec![0i64; n];
        for (i, &x) in p.parts().iter().enumerate() {
            entries[i] = x as i64;
        }
        Ok(DominantWeight { entries })
    }

    /// All dominant weights of rank n with entries in [lo, hi].
    pub fn enumerate_box(n: usize, lo: i64, hi: i64) -> Vec<DominantWeight> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn rec(n: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<DominantWeight>) {
            if cur.len() == n {
                out.push(DominantWeight { entries: cur.clone() });
                return;
            }
            let top = cur.last().copied().unwrap_or(hi);
            for e in (lo..=top).rev() {
                cur.push(e);
                rec(n, lo, hi, cur, out);
                cur.pop();
            }
        }
        rec(n, lo, hi, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Sort a weight into its dominant (weakly decreasing) representative.
pub fn dominant_sort(w: &[i64]) -> Vec<i64> {
    let mut v = w.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_trailing_zeros() {
        let p = Partition::new(vec![3, 1, 0, 0]).unwrap();
        assert_eq!(p.parts(), &[3, 1]);
        assert_eq!(p.weight(), 4);
    }

    #[test]
    fn rejects_increasing() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(DominantWeight::new(vec![0, 1]).is_err());
    }

    #[test]
    fn pairing_two_rho_examples() {
        // n=2, (1,0): <xi, 2rho> = 1
        let w = DominantWeight::new(vec![1, 0]).unwrap();
        assert_eq!(w.pairing_two_rho(), 1);
        // n=3, (2,1,0): 2*2 + 1*0 + 0*(-2) = 4
        let w = DominantWeight::new(vec![2, 1, 0]).unwrap();
        assert_eq!(w.pairing_two_rho(), 4);
        // shift invariance
        assert_eq!(w.shifted(-3).pairing_two_rho(), 4);
    }

    #[test]
    fn partition_enumeration_counts() {
        // p(6) = 11 with unbounded length
        assert_eq!(Partition::enumerate(6, 6).len(), 11);
        // partitions of 6 into at most 3 parts: 7
        assert_eq!(Partition::enumerate(6, 3).len(), 7);
    }

    #[test]
    fn dominance() {
        let a = Partition::new(vec![2, 1]).unwrap();
        let b = Partition::new(vec![1, 1, 1]).unwrap();
        assert!(a.dominates(&b));
        assert!(!b.dominates(&a));
    }
}
