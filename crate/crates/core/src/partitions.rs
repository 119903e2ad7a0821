//! Partitions of integers and Hilbert sequences:
//!
//! - conjugates (after nonincreasing reordering) of Hilbert sequences,
//! - contiguous partitions read off the bar graph of a sequence,
//! - the dominance partial order, and
//! - concatenation (multiset union) of partitions.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("the zero sequence has no conjugate partition")]
    ZeroSequence,
    #[error("dominance comparison requires equal weights ({0} vs {1})")]
    WeightMismatch(usize, usize),
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Transpose of the Ferrers diagram.
    pub fn conjugate(&self) -> Partition {
        let Some(&max) = self.parts.first() else {
            return Partition::empty();
        };
        let parts = (1..=max)
            .map(|k| self.parts.iter().filter(|&&p| p >= k).count())
            .collect();
        Partition { parts }
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
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

/// Verdict of a partial-order comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PoCmp {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// Reorders `H` nonincreasingly and conjugates; the benchmark partition
/// `H^∨` that a strong Lefschetz element attains.
pub fn conjugate_of_sequence(h: &[usize]) -> Result<Partition, PartitionError> {
    if h.iter().all(|&v| v == 0) {
        return Err(PartitionError::ZeroSequence);
    }
    Ok(Partition::new(h.to_vec()).conjugate())
}

/// Contiguous partition `P_c(H)`: for each level `k ≥ 1`, every maximal run
/// of consecutive indices with `H_i ≥ k` contributes its length as a part.
pub fn contiguous(h: &[usize]) -> Result<Partition, PartitionError> {
    if h.iter().all(|&v| v == 0) {
        return Err(PartitionError::ZeroSequence);
    }
    let max = h.iter().copied().max().unwrap();
    let mut parts = Vec::new();
    for k in 1..=max {
        let mut run = 0usize;
        for &v in h {
            if v >= k {
                run += 1;
            } else if run > 0 {
                parts.push(run);
                run = 0;
            }
        }
        if run > 0 {
            parts.push(run);
        }
    }
    Ok(Partition::new(parts))
}

/// Dominance order via prefix sums (padded with zeros); weight mismatch is a
/// caller error, not `Incomparable`.
pub fn dominance(p: &Partition, q: &Partition) -> Result<PoCmp, PartitionError> {
    if p.weight() != q.weight() {
        return Err(PartitionError::WeightMismatch(p.weight(), q.weight()));
    }
    let n = p.len().max(q.len());
    let mut saw_less = false;
    let mut saw_greater = false;
    let (mut sp, mut sq) = (0usize, 0usize);
    for i in 0..n {
        sp += p.parts().get(i).copied().unwrap_or(0);
        sq += q.parts().get(i).copied().unwrap_or(0);
        match sp.cmp(&sq) {
            Ordering::Less => saw_less = true,
            Ordering::Greater => saw_greater = true,
            Ordering::Equal => {}
        }
    }
    Ok(match (saw_less, saw_greater) {
        (false, false) => PoCmp::Equal,
        (true, false) => PoCmp::Less,
        (false, true) => PoCmp::Greater,
        (true, true) => PoCmp::Incomparable,
    })
}

/// `true` when `p ≥ q` in dominance.
pub fn dominates(p: &Partition, q: &Partition) -> Result<bool, PartitionError> {
    Ok(matches!(dominance(p, q)?, PoCmp::Greater | PoCmp::Equal))
}

/// Multiset union of parts.
pub fn concatenate(ps: &[Partition]) -> Partition {
    let mut parts = Vec::new();
    for p in ps {
        parts.extend_from_slice(p.parts());
    }
    Partition::new(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn conjugate_of_sequence_cases() {
        assert_eq!(conjugate_of_sequence(&[1, 2, 1, 1]).unwrap(), p(&[4, 1]));
        assert_eq!(
            conjugate_of_sequence(&[1, 3, 4, 4, 3, 2, 1]).unwrap(),
            p(&[7, 5, 4, 2])
        );
        assert_eq!(conjugate_of_sequence(&[1]).unwrap(), p(&[1]));
        assert!(conjugate_of_sequence(&[0, 0]).is_err());
    }

    #[test]
    fn conjugate_involution() {
        for parts in [vec![5, 3, 3, 1], vec![4, 4], vec![1, 1, 1], vec![7, 5, 4, 2]] {
            let q = Partition::new(parts);
            assert_eq!(q.conjugate().conjugate(), q);
            assert_eq!(q.conjugate().weight(), q.weight());
        }
    }

    #[test]
    fn contiguous_cases() {
        assert_eq!(contiguous(&[1, 3, 5, 2, 3]).unwrap(), p(&[5, 4, 2, 1, 1, 1]));
        assert_eq!(contiguous(&[1, 3, 5, 3, 2]).unwrap(), p(&[5, 4, 3, 1, 1]));
        assert_eq!(contiguous(&[1, 4, 3, 4, 2, 1]).unwrap(), p(&[6, 4, 3, 1, 1]));
    }

    #[test]
    fn contiguous_equals_conjugate_for_unimodal() {
        // Exhaustive over sequences with small total mass.
        fn gen(rest: usize, cur: &mut Vec<usize>, all: &mut Vec<Vec<usize>>) {
            if !cur.is_empty() {
                all.push(cur.clone());
            }
            for v in 1..=rest {
                cur.push(v);
                gen(rest - v, cur, all);
                cur.pop();
            }
        }
        let mut all = Vec::new();
        gen(12, &mut Vec::new(), &mut all);
        for h in all {
            let unimodal = {
                let peak = h.iter().enumerate().max_by_key(|&(i, v)| (*v, usize::MAX - i)).unwrap().0;
                h[..peak].windows(2).all(|w| w[0] <= w[1])
                    && h[peak..].windows(2).all(|w| w[0] >= w[1])
            };
            if unimodal {
                assert_eq!(
                    contiguous(&h).unwrap(),
                    conjugate_of_sequence(&h).unwrap(),
                    "H = {h:?}"
                );
            }
        }
    }

    #[test]
    fn dominance_cases() {
        assert_eq!(dominance(&p(&[7, 5, 4, 2]), &p(&[7, 5, 3, 3])).unwrap(), PoCmp::Greater);
        assert_eq!(dominance(&p(&[7, 5, 3, 3]), &p(&[7, 5, 4, 2])).unwrap(), PoCmp::Less);
        assert_eq!(dominance(&p(&[4, 1, 1]), &p(&[4, 1, 1])).unwrap(), PoCmp::Equal);
        assert_eq!(dominance(&p(&[4, 1, 1]), &p(&[3, 3])).unwrap(), PoCmp::Incomparable);
        assert!(dominance(&p(&[2, 1]), &p(&[2, 2])).is_err());
    }

    #[test]
    fn dominance_conjugate_antitone() {
        // P ≤ Q ⇔ Q^∨ ≤ P^∨ over random equal-weight pairs.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        let mut made = 0;
        while made < 200 {
            let w = rng.gen_range(4..14);
            let rand_partition = |rng: &mut rand_chacha::ChaCha12Rng| {
                let mut left = w;
                let mut parts = Vec::new();
                while left > 0 {
                    let part = rng.gen_range(1..=left);
                    parts.push(part);
                    left -= part;
                }
                Partition::new(parts)
            };
            let a = rand_partition(&mut rng);
            let b = rand_partition(&mut rng);
            let fwd = dominance(&a, &b).unwrap();
            let bwd = dominance(&b.conjugate(), &a.conjugate()).unwrap();
            assert_eq!(fwd, bwd, "{a} vs {b}");
            made += 1;
        }
    }

    #[test]
    fn concatenate_cases() {
        assert_eq!(concatenate(&[p(&[4, 3, 1]), p(&[5, 3, 2])]), p(&[5, 4, 3, 3, 2, 1]));
        assert_eq!(concatenate(&[p(&[3, 2]), Partition::empty()]), p(&[3, 2]));
        assert_eq!(concatenate(&[p(&[2]), p(&[2]), p(&[1])]), p(&[2, 2, 1]));
    }
}
