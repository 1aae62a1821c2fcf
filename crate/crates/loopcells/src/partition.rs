//! Integer partitions, conjugation, and the dominance order.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A partition of `n`: a weakly decreasing sequence of positive integers.
///
/// Stored without trailing zeros; the empty partition (of 0) is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Build a partition, dropping trailing zeros and validating monotonicity.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidPartition(format!(
                    "parts not weakly decreasing: {:?}",
                    parts
                )));
            }
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "interior zero part: {:?}",
                parts
            )));
        }
        Ok(Partition { parts })
    }

    /// The partition obtained by sorting an arbitrary multiset of positive parts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p != 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Total `n = sum of parts`.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `i`-th part (1-based), zero beyond the last part.
    pub fn part(&self, i: usize) -> usize {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    /// The conjugate partition: part `i` counts the parts of `self` that are `>= i`.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(1);
        let mut parts = Vec::with_capacity(cols);
        for i in 1..=cols {
            parts.push(self.parts.iter().filter(|&&p| p >= i).count());
        }
        Partition { parts }
    }

    /// Dominance order: `self <= other` iff every prefix sum of `self` is
    /// bounded by the corresponding prefix sum of `other`.
    ///
    /// Only partitions of the same total are comparable.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool> {
        if self.total() != other.total() {
            return Err(Error::TotalMismatch(self.total(), other.total()));
        }
        let k = self.len().max(other.len());
        let (mut a, mut b) = (0usize, 0usize);
        for i in 1..=k {
            a += self.part(i);
            b += other.part(i);
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

/// Check the quadratic partition identity
/// `sum nu_i^2 = sum_ij min(nu'_i, nu'_j) = sum (2i-1) nu'_i`
/// by three code paths that share no intermediate values.
/// Returns the common value when the identity holds.
pub fn verify_partition_identity(p: &Partition) -> Option<usize> {
    let a = sum_of_squares(p);
    let b = double_min_sum(p);
    let c = odd_weighted_conjugate_sum(p);
    if a == b && b == c {
        Some(a)
    } else {
        None
    }
}

fn sum_of_squares(p: &Partition) -> usize {
    p.parts().iter().map(|&x| x * x).sum()
}

// Conjugate via part counting, then the full double sum of minima.
fn double_min_sum(p: &Partition) -> usize {
    let cols = p.part(1);
    let conj: Vec<usize> = (1..=cols)
        .map(|i| p.parts().iter().filter(|&&x| x >= i).count())
        .collect();
    let mut total = 0;
    for &x in &conj {
        for &y in &conj {
            total += x.min(y);
        }
    }
    total
}

// Conjugate via an explicit Young-diagram grid transpose, then sum (2i-1) nu'_i.
fn odd_weighted_conjugate_sum(p: &Partition) -> usize {
    let rows = p.len();
    let cols = p.part(1);
    let mut grid = vec![vec![false; cols]; rows];
    for (r, &len) in p.parts().iter().enumerate() {
        for item in grid[r].iter_mut().take(len) {
            *item = true;
        }
    }
    let mut total = 0;
    for c in 0..cols {
        let height = grid.iter().filter(|row| row[c]).count();
        total += (2 * (c + 1) - 1) * height;
    }
    total
}

/// All partitions of `n` in lexicographically decreasing order of part lists.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        for next in (1..=rest.min(max)).rev() {
            current.push(next);
            rec(rest - next, next, current, out);
            current.pop();
        }
    }
    rec(n, n.max(1), &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[5, 4, 3, 3, 1, 1]).conjugate(), p(&[6, 4, 4, 2, 1]));
        assert_eq!(p(&[7]).conjugate(), p(&[1, 1, 1, 1, 1, 1, 1]));
        assert_eq!(p(&[2, 2]).conjugate(), p(&[2, 2]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![3, 0, 1]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), p(&[2, 1]));
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[2, 2]).dominance_leq(&p(&[3, 1])).unwrap());
        assert!(!p(&[3, 1]).dominance_leq(&p(&[2, 2])).unwrap());
        assert!(p(&[2, 1, 1]).dominance_leq(&p(&[2, 2])).unwrap());
        assert!(matches!(
            p(&[2, 1]).dominance_leq(&p(&[2, 2])),
            Err(Error::TotalMismatch(3, 4))
        ));
    }

    #[test]
    fn identity_examples() {
        assert_eq!(verify_partition_identity(&p(&[5, 4, 3, 3, 1, 1])), Some(61));
        assert_eq!(verify_partition_identity(&p(&[1])), Some(1));
        assert_eq!(verify_partition_identity(&p(&[2, 2])), Some(8));
        assert_eq!(verify_partition_identity(&Partition::empty()), Some(0));
    }

    #[test]
    fn conjugation_is_an_involution_up_to_12() {
        for n in 0..=12 {
            for q in partitions_of(n) {
                assert_eq!(q.conjugate().conjugate(), q);
                assert_eq!(q.conjugate().total(), n);
            }
        }
    }

    #[test]
    fn identity_holds_for_all_partitions_up_to_12() {
        for n in 0..=12 {
            for q in partitions_of(n) {
                assert!(verify_partition_identity(&q).is_some(), "failed at {}", q);
            }
        }
    }

    #[test]
    fn dominance_is_a_partial_order_up_to_9() {
        for n in 0..=9 {
            let ps = partitions_of(n);
            for a in &ps {
                assert!(a.dominance_leq(a).unwrap());
                for b in &ps {
                    let ab = a.dominance_leq(b).unwrap();
                    let ba = b.dominance_leq(a).unwrap();
                    if ab && ba {
                        assert_eq!(a, b);
                    }
                    for c in &ps {
                        if ab && b.dominance_leq(c).unwrap() {
                            assert!(a.dominance_leq(c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dominance_conjugation_duality_up_to_9() {
        for n in 0..=9 {
            let ps = partitions_of(n);
            for a in &ps {
                for b in &ps {
                    assert_eq!(
                        a.dominance_leq(b).unwrap(),
                        b.conjugate().dominance_leq(&a.conjugate()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn partition_counts() {
        // p(0)..p(12) = 1,1,2,3,5,7,11,15,22,30,42,56,77
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(partitions_of(n).len(), e);
        }
    }
}
