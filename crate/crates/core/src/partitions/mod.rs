//! Partitions of n, the dominance order and its covering relation.

pub mod hasse;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

/// 1-based rows `(i, j)` of the box move taking λ to a covered μ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverWitness {
    pub i: usize,
    pub j: usize,
}

impl Partition {
    /// Validates `parts`; trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition {
                parts,
                reason: "parts must be positive".into(),
            });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition {
                parts,
                reason: "parts must be weakly decreasing".into(),
            });
        }
        Ok(Partition { parts })
    }

    /// Sorts into decreasing order first; the flag reports whether sorting changed anything.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<(Self, bool)> {
        let before = parts.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let changed = before != parts;
        Ok((Partition::new(parts)?, changed))
    }

    /// `(n)`.
    pub fn row(n: usize) -> Self {
        Partition { parts: vec![n] }
    }

    /// `(1, …, 1)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_i` with 1-based `i`, zero past the last part.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn dual(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (1..=first)
                .map(|i| self.parts.iter().filter(|&&p| p >= i).count())
                .collect(),
        }
    }

    /// `Σ (λ*_i)²`, the dimension of the gl_n centralizer.
    pub fn dual_square_sum(&self) -> usize {
        self.dual().parts.iter().map(|p| p * p).sum()
    }

    /// `n + 2 Σ (i−1) λ_i`.
    pub fn tower_count(&self) -> usize {
        self.n() + 2 * self.parts.iter().enumerate().map(|(k, p)| k * p).sum::<usize>()
    }

    fn prefix_sums(&self, len: usize) -> Vec<usize> {
        (1..=len)
            .scan(0, |acc, i| {
                *acc += self.part(i);
                Some(*acc)
            })
            .collect()
    }

    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::UnequalSizes(self.n(), other.n()));
        }
        let len = self.len().max(other.len());
        Ok(self
            .prefix_sums(len)
            .iter()
            .zip(other.prefix_sums(len))
            .all(|(a, b)| *a >= b))
    }

    /// The smallest `j > i` with `λ_j < λ_i − 1`, and whether the move at `(i, j)` is admissible.
    fn move_target(&self, i: usize) -> Option<usize> {
        let li = self.part(i);
        if li < 2 {
            return None;
        }
        let j = (i + 1..).find(|&j| self.part(j) + 1 < li)?;
        let ok = self.part(j) == li - 2 || (i + 1..j).all(|l| self.part(l) == li);
        ok.then_some(j)
    }

    /// Replaces `λ_i, λ_j` by `λ_i − 1, λ_j + 1` and re-sorts.
    pub fn apply_move(&self, i: usize, j: usize) -> Partition {
        let len = self.len().max(j);
        let mut parts: Vec<usize> = (1..=len).map(|k| self.part(k)).collect();
        parts[i - 1] -= 1;
        parts[j - 1] += 1;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("box move keeps a partition")
    }

    /// All partitions covered by `self`, each with the move that produces it.
    pub fn covered(&self) -> Vec<(Partition, CoverWitness)> {
        let mut out: Vec<(Partition, CoverWitness)> = Vec::new();
        for i in 1..=self.len() {
            if let Some(j) = self.move_target(i) {
                let mu = self.apply_move(i, j);
                if !out.iter().any(|(p, _)| *p == mu) {
                    out.push((mu, CoverWitness { i, j }));
                }
            }
        }
        out
    }

    /// The cover witness of `self` over `mu`, taking `i` as the least index with `λ_i > μ_i`.
    pub fn covers(&self, mu: &Partition) -> Result<Option<CoverWitness>> {
        if !self.dominates(mu)? || self == mu {
            return Ok(None);
        }
        let i = (1..).find(|&k| self.part(k) > mu.part(k)).expect("λ ≠ μ");
        Ok(self
            .move_target(i)
            .filter(|&j| self.apply_move(i, j) == *mu)
            .map(|j| CoverWitness { i, j }))
    }

    /// Every partition of `n`, in reverse-lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// `"3+2+1"`.
    pub fn label(&self) -> String {
        self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("+")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(p(&[3, 1, 0, 0]).parts(), &[3, 1]);
        let (q, changed) = Partition::from_unsorted(vec![1, 3, 2]).unwrap();
        assert!(changed);
        assert_eq!(q, p(&[3, 2, 1]));
    }

    #[test]
    fn listing_order() {
        let all: Vec<String> = Partition::all(4).iter().map(|q| q.label()).collect();
        assert_eq!(all, ["4", "3+1", "2+2", "2+1+1", "1+1+1+1"]);
        assert_eq!(Partition::all(8).len(), 22);
    }

    #[test]
    fn dual_examples() {
        assert_eq!(p(&[4, 3]).dual(), p(&[2, 2, 2, 1]));
        assert_eq!(Partition::row(5).dual(), Partition::column(5));
    }

    #[test]
    fn cover_examples() {
        assert_eq!(p(&[3, 1]).covers(&p(&[2, 2])).unwrap(), Some(CoverWitness { i: 1, j: 2 }));
        assert_eq!(p(&[4, 3, 1]).covers(&p(&[3, 3, 2])).unwrap(), None);
        assert_eq!(p(&[3, 2, 1]).covers(&p(&[3, 1, 1, 1])).unwrap(), Some(CoverWitness { i: 2, j: 4 }));
        assert!(p(&[3]).covers(&p(&[1, 1])).is_err());
    }
}
