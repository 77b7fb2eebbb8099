use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::guard;

/// A partition of the ground set `{0, .., n-1}` stored as a restricted-growth
/// string: `rgs[i]` is the block index of element `i`, and block indices
/// appear in first-occurrence order (`rgs[0] = 0`, each new block is one more
/// than the largest index seen so far).
///
/// Two partitions are equal iff their restricted-growth strings are equal.
/// The derived ordering is the lexicographic order on those strings.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct SetPartition {
    rgs: Vec<u32>,
}

impl SetPartition {
    /// The partition of the empty set.
    pub fn empty() -> Self {
        SetPartition { rgs: Vec::new() }
    }

    /// All elements in one block.
    pub fn single_block(n: usize) -> Self {
        SetPartition { rgs: vec![0; n] }
    }

    /// Every element in its own block.
    pub fn discrete(n: usize) -> Self {
        SetPartition {
            rgs: (0..n as u32).collect(),
        }
    }

    /// Validates a restricted-growth string.
    pub fn from_rgs(rgs: Vec<u32>) -> Result<Self> {
        let mut next = 0u32;
        for (i, &b) in rgs.iter().enumerate() {
            if b > next {
                return invalid(format!(
                    "not a restricted-growth string: position {i} has block {b}, expected at most {next}"
                ));
            }
            if b == next {
                next += 1;
            }
        }
        Ok(SetPartition { rgs })
    }

    /// Canonicalises an arbitrary labelling: elements with equal labels share
    /// a block.
    pub fn from_labels<L: Eq + std::hash::Hash + Copy>(labels: &[L]) -> Self {
        let mut seen = std::collections::HashMap::with_capacity(labels.len());
        let rgs = labels
            .iter()
            .map(|l| {
                let next = seen.len() as u32;
                *seen.entry(*l).or_insert(next)
            })
            .collect();
        SetPartition { rgs }
    }

    /// Builds a partition of `{0, .., n-1}` from explicit blocks.
    ///
    /// Blocks must be nonempty, pairwise disjoint and cover the ground set.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (bi, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return invalid("empty block");
            }
            for &e in block {
                if e >= n {
                    return invalid(format!("element {e} outside ground set of size {n}"));
                }
                if labels[e] != usize::MAX {
                    return invalid(format!("element {e} appears in two blocks"));
                }
                labels[e] = bi;
            }
        }
        if let Some(e) = labels.iter().position(|&l| l == usize::MAX) {
            return invalid(format!("element {e} is in no block"));
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn ground_size(&self) -> usize {
        self.rgs.len()
    }

    pub fn rgs(&self) -> &[u32] {
        &self.rgs
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// Block index of element `i`.
    pub fn block_of(&self, i: usize) -> u32 {
        self.rgs[i]
    }

    /// Blocks as sorted element lists, in block-index order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.rgs.iter().enumerate() {
            out[b as usize].push(i);
        }
        out
    }

    /// Whether `i` and `j` lie in the same block.
    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.rgs[i] == self.rgs[j]
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (bi, block) in self.blocks().iter().enumerate() {
            if bi > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (k, e) in block.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

impl TryFrom<Vec<u32>> for SetPartition {
    type Error = crate::Error;
    fn try_from(rgs: Vec<u32>) -> Result<Self> {
        SetPartition::from_rgs(rgs)
    }
}

impl From<SetPartition> for Vec<u32> {
    fn from(p: SetPartition) -> Vec<u32> {
        p.rgs
    }
}

/// Iterator over all partitions of `{0, .., n-1}` in lexicographic
/// restricted-growth order.
#[derive(Clone, Debug)]
pub struct SetPartitions {
    rgs: Vec<u32>,
    // maxes[i] = max(rgs[0..i]) (with maxes[0] unused)
    maxes: Vec<u32>,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        SetPartitions {
            rgs: vec![0; n],
            maxes: vec![0; n],
            done: false,
        }
    }

    fn advance(&mut self) {
        let n = self.rgs.len();
        let mut i = n;
        while i > 1 {
            i -= 1;
            if self.rgs[i] <= self.maxes[i] {
                self.rgs[i] += 1;
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.maxes[j] = self.maxes[j - 1].max(self.rgs[j - 1]);
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let out = SetPartition {
            rgs: self.rgs.clone(),
        };
        self.advance();
        Some(out)
    }
}

/// All partitions of a `k`-element set, in lexicographic RGS order.
///
/// Refuses `k > 14` unless the size guard is disabled.
pub fn enumerate_set_partitions(k: usize) -> Result<Vec<SetPartition>> {
    guard::check(
        "set partition ground size",
        k as u128,
        guard::MAX_PARTITION_GROUND as u128,
    )?;
    Ok(SetPartitions::new(k).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_listings() {
        let p0 = enumerate_set_partitions(0).unwrap();
        assert_eq!(p0, vec![SetPartition::empty()]);

        let p2 = enumerate_set_partitions(2).unwrap();
        assert_eq!(p2.len(), 2);
        assert_eq!(p2[0].blocks(), vec![vec![0, 1]]);
        assert_eq!(p2[1].blocks(), vec![vec![0], vec![1]]);

        assert_eq!(enumerate_set_partitions(5).unwrap().len(), 52);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let ps = enumerate_set_partitions(6).unwrap();
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            enumerate_set_partitions(15),
            Err(crate::Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn rgs_validation() {
        assert!(SetPartition::from_rgs(vec![0, 1, 0, 2]).is_ok());
        assert!(SetPartition::from_rgs(vec![1]).is_err());
        assert!(SetPartition::from_rgs(vec![0, 2]).is_err());
    }

    #[test]
    fn labels_and_blocks_agree() {
        let p = SetPartition::from_labels(&['x', 'y', 'x', 'z', 'y']);
        assert_eq!(p.rgs(), &[0, 1, 0, 2, 1]);
        let q = SetPartition::from_blocks(5, &[vec![3], vec![1, 4], vec![0, 2]]).unwrap();
        assert_eq!(p, q);
        assert_eq!(format!("{p}"), "{{0,2},{1,4},{3}}");
        assert!(SetPartition::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(SetPartition::from_blocks(2, &[vec![0, 1], vec![1]]).is_err());
    }
}
